#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "longwave/invariants.hpp"
#include "longwave/model.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

/// Ordered '#' key=value header lines.
using CsvHeader = std::vector<std::pair<std::string, std::string>>;

/// 17 significant digits, locale independent; zero prints as "0".
std::string format_number(double value);
/// Inverse of format_number. Throws UsageError on malformed input.
double parse_number(const std::string& text);

/// '#' header (t, N, L, H, g, rho, T, sigma, scheme, then `extra`) and one "x,h" row per node.
/// Throws IoError naming the path.
void emit_profile_csv(const WaveField& field, const PhysicalParams& params,
                      DerivativeScheme scheme, const std::filesystem::path& path,
                      const CsvHeader& extra = {});

struct ProfileCsv {
  CsvHeader header;
  std::vector<double> x;
  std::vector<double> h;

  /// Header value by key. Throws UsageError if absent.
  const std::string& value(const std::string& key) const;
  /// Rebuilds the field from the N, L and t header entries.
  WaveField field() const;
};

/// Throws IoError if the file cannot be read, UsageError if it is malformed.
ProfileCsv read_profile_csv(const std::filesystem::path& path);

/// Columns t,Q,E,M,Hfun,xg_dot; xg_dot is left empty when absent.
void emit_invariants_csv(std::span<const InvariantSet> series, const std::filesystem::path& path,
                         const CsvHeader& header = {});

/// Generic numeric table with the same formatting contract.
void emit_table_csv(const std::filesystem::path& path, const CsvHeader& header,
                    const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows);

/// key=value lines, one per entry, no quoting.
void emit_manifest(const std::filesystem::path& path, const CsvHeader& entries);

}  // namespace longwave
