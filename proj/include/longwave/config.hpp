#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "longwave/csv_io.hpp"
#include "longwave/evolution.hpp"
#include "longwave/model.hpp"

namespace longwave {

struct KeySpec {
  std::string name;
  std::string fallback;
  std::string help;
};

/// Flat dotted key=value configuration with three layers, lowest first:
/// built-in fallback, per-scenario defaults, explicit values (file, then flags).
class Config {
 public:
  static const std::vector<KeySpec>& known_keys();
  static bool is_known(const std::string& key);

  /// Explicit value. Throws UsageError for unknown keys.
  void set(const std::string& key, const std::string& value);
  /// Scenario-level default, below explicit values.
  void set_default(const std::string& key, const std::string& value);
  bool is_explicit(const std::string& key) const { return explicit_.count(key) != 0; }

  /// Reads key=value lines; '#' starts a comment. Throws IoError or UsageError (with line).
  void load_file(const std::filesystem::path& path);

  std::string get(const std::string& key) const;
  /// Parse failures name the key in the UsageError.
  double number(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> number_list(const std::string& key) const;
  std::vector<std::size_t> count_list(const std::string& key) const;

  /// Every known key with its resolved value, in key order.
  CsvHeader resolved() const;

 private:
  std::map<std::string, std::string> explicit_;
  std::map<std::string, std::string> defaults_;
};

/// Typed views over a Config. Each validates and names the offending key on failure.
PhysicalParams physical_from(const Config& config);
PeriodicGrid grid_from(const Config& config);
SchemeConfig scheme_from(const Config& config);

}  // namespace longwave
