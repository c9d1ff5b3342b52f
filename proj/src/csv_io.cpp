#include "longwave/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "longwave/errors.hpp"

namespace longwave {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string(), path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string(), path.string());
}

void write_header(std::ostream& out, const CsvHeader& header) {
  for (const auto& [key, value] : header) out << '#' << key << '=' << value << '\n';
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || first == last) {
    throw UsageError("not a number: '" + text + "'");
  }
  return value;
}

void emit_profile_csv(const WaveField& field, const PhysicalParams& params,
                      DerivativeScheme scheme, const std::filesystem::path& path,
                      const CsvHeader& extra) {
  std::ofstream out = open_for_writing(path);
  const PeriodicGrid& grid = field.grid;
  CsvHeader header{{"t", format_number(field.t)},
                   {"N", std::to_string(grid.size())},
                   {"L", format_number(grid.length())},
                   {"H", format_number(params.depth())},
                   {"g", format_number(params.g())},
                   {"rho", format_number(params.rho())},
                   {"T", format_number(params.tension())},
                   {"sigma", format_number(dispersion_sigma(params))},
                   {"scheme", to_string(scheme)}};
  header.insert(header.end(), extra.begin(), extra.end());
  write_header(out, header);
  out << "x,h\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out << format_number(grid.x(j)) << ',' << format_number(field.h[j]) << '\n';
  }
  finish(out, path);
}

const std::string& ProfileCsv::value(const std::string& key) const {
  for (const auto& [k, v] : header) {
    if (k == key) return v;
  }
  throw UsageError("profile header lacks '" + key + "'");
}

WaveField ProfileCsv::field() const {
  const double n = parse_number(value("N"));
  const PeriodicGrid grid(parse_number(value("L")), static_cast<std::size_t>(n));
  if (grid.size() != h.size()) throw UsageError("profile row count does not match N");
  return WaveField(grid, h, parse_number(value("t")));
}

ProfileCsv read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string(), path.string());
  ProfileCsv out;
  std::string line;
  bool columns_seen = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      out.header.emplace_back(line.substr(1, eq - 1), line.substr(eq + 1));
      continue;
    }
    if (!columns_seen) {
      if (line != "x,h") throw UsageError(path.string() + ": expected column line 'x,h'");
      columns_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected 'x,h'");
    }
    out.x.push_back(parse_number(line.substr(0, comma)));
    out.h.push_back(parse_number(line.substr(comma + 1)));
  }
  if (in.bad()) throw IoError("read failed: " + path.string(), path.string());
  if (!columns_seen) throw UsageError(path.string() + ": no profile data");
  return out;
}

void emit_invariants_csv(std::span<const InvariantSet> series, const std::filesystem::path& path,
                         const CsvHeader& header) {
  std::ofstream out = open_for_writing(path);
  write_header(out, header);
  out << "t,Q,E,M,Hfun,xg_dot\n";
  for (const InvariantSet& s : series) {
    out << format_number(s.t) << ',' << format_number(s.Q) << ',' << format_number(s.E) << ','
        << format_number(s.M) << ',' << format_number(s.Hfun) << ',';
    if (s.xg_dot) out << format_number(*s.xg_dot);
    out << '\n';
  }
  finish(out, path);
}

void emit_table_csv(const std::filesystem::path& path, const CsvHeader& header,
                    const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_for_writing(path);
  write_header(out, header);
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
  finish(out, path);
}

void emit_manifest(const std::filesystem::path& path, const CsvHeader& entries) {
  std::ofstream out = open_for_writing(path);
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
  finish(out, path);
}

}  // namespace longwave
