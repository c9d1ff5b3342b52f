#include "longwave/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "longwave/errors.hpp"

namespace longwave {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename Fn>
auto with_key(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    throw UsageError(key + ": " + e.what());
  }
}

std::size_t to_count(const std::string& key, double v) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) {
    throw UsageError(key + ": expected a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

const std::vector<KeySpec>& Config::known_keys() {
  static const std::vector<KeySpec> keys = {
      {"grid.length", "160", "domain length L (m)"},
      {"grid.points", "1024", "number of grid points N (even, >= 8)"},
      {"input.profile", "", "profile CSV to start from (evolve, invariants)"},
      {"output.dir", "out", "directory for CSV files and the manifest"},
      {"physical.depth", "1", "undisturbed depth H (m)"},
      {"physical.g", "9.81", "gravity (m/s^2)"},
      {"physical.rho", "1000", "density (kg/m^3)"},
      {"physical.tension", "0", "surface tension (N/m)"},
      {"scenario.duration", "1", "steepening: evolution time per case (s)"},
      {"scenario.h_short", "0.2", "two_soliton: amplitude of the slower wave (m)"},
      {"scenario.h_tall", "0.5", "two_soliton: amplitude of the faster wave (m)"},
      {"scenario.hbar", "0.1", "steepening: crest amplitude (m)"},
      {"scenario.k_list", "0.4,0.2,0.1,0.05,0.02,0.01", "cnoidal_sweep: trough depths k (m)"},
      {"scenario.l", "0.1", "cnoidal_sweep: crest height above trough (m)"},
      {"scenario.mode", "5", "boussinesq_demo: Fourier index of the linear test mode"},
      {"scenario.noise", "1e-10", "boussinesq_demo: noise amplitude relative to H"},
      {"scenario.noise_horizon", "1", "boussinesq_demo: noise run duration (s)"},
      {"scenario.p_ratio", "0.8,0.9,1,1.1,1.2", "steepening: p relative to the steady width"},
      {"scenario.periods", "10", "boussinesq_demo: periods of the linear mode"},
      {"scenario.points_list", "64,128,256,512,1024", "factorization: resolutions"},
      {"scenario.separation", "60", "two_soliton: initial crest separation (m)"},
      {"scheme.alpha", "0", "moving-frame parameter alpha (m)"},
      {"scheme.cfl", "2", "RK4 stability constant"},
      {"scheme.deriv", "spectral", "spatial derivatives: spectral | centered4"},
      {"scheme.dt", "0", "time step (s); 0 picks the stability advisory"},
      {"scheme.epsilon", "0", "Hamiltonian scale; 0 picks -H^2/12"},
      {"scheme.filter", "true", "Boussinesq low-pass on/off"},
      {"scheme.filter_cut", "0.5", "Boussinesq cutoff as a fraction of sqrt(3)/H"},
      {"scheme.frame", "fixed", "fixed | moving"},
      {"scheme.invariant_stride", "0", "steps between invariant samples"},
      {"scheme.snapshot_stride", "0", "steps between profile snapshots"},
      {"scheme.t_end", "0", "final time (s); 0 lets scenarios choose"},
      {"seed", "20240611", "RNG seed for noise"},
      {"wave.baseline", "trough", "cnoidal baseline: trough | mean"},
      {"wave.center", "0", "solitary crest position (m)"},
      {"wave.h0", "0.1", "solitary amplitude (m)"},
      {"wave.k", "0.1", "cnoidal trough depth below the frame level (m)"},
      {"wave.kind", "solitary", "solitary | cnoidal"},
      {"wave.l", "0.1", "cnoidal crest height above the trough (m)"},
      {"wave.phase", "0", "cnoidal crest position (m)"},
  };
  return keys;
}

bool Config::is_known(const std::string& key) {
  const auto& keys = known_keys();
  return std::any_of(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.name == key; });
}

void Config::set(const std::string& key, const std::string& value) {
  if (!is_known(key)) throw UsageError("unknown config key '" + key + "'");
  explicit_[key] = value;
}

void Config::set_default(const std::string& key, const std::string& value) {
  if (!is_known(key)) throw UsageError("unknown config key '" + key + "'");
  defaults_[key] = value;
}

void Config::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path.string(), path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    try {
      set(key, trim(line.substr(eq + 1)));
    } catch (const UsageError& e) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::string Config::get(const std::string& key) const {
  if (auto it = explicit_.find(key); it != explicit_.end()) return it->second;
  if (auto it = defaults_.find(key); it != defaults_.end()) return it->second;
  for (const KeySpec& k : known_keys()) {
    if (k.name == key) return k.fallback;
  }
  throw UsageError("unknown config key '" + key + "'");
}

double Config::number(const std::string& key) const {
  return with_key(key, [&] { return parse_number(get(key)); });
}

std::size_t Config::count(const std::string& key) const { return to_count(key, number(key)); }

std::uint64_t Config::unsigned_integer(const std::string& key) const {
  const std::string text = get(key);
  std::uint64_t v = 0;
  std::istringstream is(text);
  if (!(is >> v) || !is.eof()) throw UsageError(key + ": expected an unsigned integer");
  return v;
}

bool Config::flag(const std::string& key) const {
  const std::string v = get(key);
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw UsageError(key + ": expected true or false, got '" + v + "'");
}

std::vector<double> Config::number_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : split_list(get(key))) {
    out.push_back(with_key(key, [&] { return parse_number(item); }));
  }
  if (out.empty()) throw UsageError(key + ": expected a comma-separated list");
  return out;
}

std::vector<std::size_t> Config::count_list(const std::string& key) const {
  std::vector<std::size_t> out;
  for (double v : number_list(key)) out.push_back(to_count(key, v));
  return out;
}

CsvHeader Config::resolved() const {
  CsvHeader out;
  for (const KeySpec& k : known_keys()) out.emplace_back(k.name, get(k.name));
  return out;
}

PhysicalParams physical_from(const Config& config) {
  return with_key("physical", [&] {
    return PhysicalParams(config.number("physical.g"), config.number("physical.depth"),
                          config.number("physical.rho"), config.number("physical.tension"));
  });
}

PeriodicGrid grid_from(const Config& config) {
  return with_key("grid", [&] {
    return PeriodicGrid(config.number("grid.length"), config.count("grid.points"));
  });
}

SchemeConfig scheme_from(const Config& config) {
  SchemeConfig s;
  s.deriv = with_key("scheme.deriv", [&] { return parse_derivative_scheme(config.get("scheme.deriv")); });
  s.dt = config.number("scheme.dt");
  s.t_end = config.number("scheme.t_end");
  s.filter_cut = config.number("scheme.filter_cut");
  s.filter = config.flag("scheme.filter");
  const std::string frame = config.get("scheme.frame");
  if (frame == "fixed") {
    s.frame = Frame::fixed();
  } else if (frame == "moving") {
    s.frame = Frame::moving(config.number("scheme.alpha"));
  } else {
    throw UsageError("scheme.frame: expected fixed or moving, got '" + frame + "'");
  }
  s.cfl = config.number("scheme.cfl");
  s.invariant_stride = config.count("scheme.invariant_stride");
  s.snapshot_stride = config.count("scheme.snapshot_stride");
  s.epsilon = config.number("scheme.epsilon");
  s.validate();
  return s;
}

}  // namespace longwave
