#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "longwave/analytic_waves.hpp"
#include "longwave/config.hpp"
#include "longwave/csv_io.hpp"
#include "longwave/errors.hpp"
#include "oracles.hpp"

using namespace longwave;
namespace fs = std::filesystem;

namespace {

const PhysicalParams kWater = PhysicalParams::water(1.0);

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "longwave_test_csv_config";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string text_of(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(0.1) == "0.10000000000000001");
  oracle::Sampler rng(31);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.index(200)) - 100);
    CHECK(parse_number(format_number(v)) == v);
  }
  CHECK_THROWS_AS(parse_number("1.5x"), UsageError);
  CHECK_THROWS_AS(parse_number(""), UsageError);
  CHECK(parse_number("+2") == 2.0);
}

TEST_CASE("zero profile on eight points") {
  const fs::path path = scratch("zero.csv");
  emit_profile_csv(WaveField::zeros(PeriodicGrid(8.0, 8)), kWater, DerivativeScheme::spectral, path);
  std::vector<std::string> rows;
  for (const std::string& line : lines_of(path)) {
    if (!line.empty() && line[0] != '#' && line != "x,h") rows.push_back(line);
  }
  REQUIRE(rows.size() == 8);
  for (const std::string& row : rows) CHECK(row.substr(row.find(',') + 1) == "0");
  CHECK(text_of(path).find('\r') == std::string::npos);
}

TEST_CASE("profile round trip is bit-identical") {
  const PeriodicGrid grid(160.0, 256);
  const WaveField f = solitary_field(grid, SolitarySpec::from(kWater, 0.1), 3.7, 1.25);
  const fs::path path = scratch("solitary.csv");
  emit_profile_csv(f, kWater, DerivativeScheme::centered4, path, {{"note", "roundtrip"}});
  const ProfileCsv back = read_profile_csv(path);
  REQUIRE(back.h.size() == f.h.size());
  CHECK(std::memcmp(back.h.data(), f.h.data(), f.h.size() * sizeof(double)) == 0);
  for (std::size_t j = 0; j < grid.size(); ++j) CHECK(back.x[j] == grid.x(j));
  CHECK(back.value("scheme") == "centered4");
  CHECK(back.value("note") == "roundtrip");
  const WaveField rebuilt = back.field();
  CHECK(rebuilt.grid == grid);
  CHECK(rebuilt.t == 1.25);
}

TEST_CASE("profile header carries sigma") {
  const PhysicalParams p(9.81, 0.01, 1000.0, 0.0728);
  const fs::path path = scratch("sigma.csv");
  emit_profile_csv(WaveField::zeros(PeriodicGrid(1.0, 8)), p, DerivativeScheme::spectral, path);
  const ProfileCsv back = read_profile_csv(path);
  CHECK(parse_number(back.value("sigma")) == dispersion_sigma(p));
  CHECK(back.value("T") == "0.072800000000000004");
  CHECK_THROWS_AS(back.value("missing"), UsageError);
}

TEST_CASE("unwritable and unreadable paths") {
  const fs::path bad = scratch("no_such_dir") / "deeper" / "x.csv";
  try {
    emit_profile_csv(WaveField::zeros(PeriodicGrid(1.0, 8)), kWater, DerivativeScheme::spectral, bad);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
  }
  CHECK_THROWS_AS(read_profile_csv(bad), IoError);
  const fs::path junk = scratch("junk.csv");
  write(junk, "#N=8\nx,h\n1,2,3\n");
  CHECK_THROWS_AS(read_profile_csv(junk), UsageError);
}

TEST_CASE("invariants table") {
  InvariantSet a;
  a.t = 0.5;
  a.Q = 1.0;
  a.E = 2.0;
  a.M = -3.0;
  a.Hfun = 4.0;
  const fs::path one = scratch("one.csv");
  emit_invariants_csv(std::vector<InvariantSet>{a}, one);
  const std::vector<std::string> lines = lines_of(one);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "t,Q,E,M,Hfun,xg_dot");
  CHECK(lines[1] == "0.5,1,2,-3,4,");
  a.xg_dot = 3.25;
  emit_invariants_csv(std::vector<InvariantSet>{a, InvariantSet{}}, one);
  const std::vector<std::string> two = lines_of(one);
  REQUIRE(two.size() == 3);
  CHECK(two[1] == "0.5,1,2,-3,4,3.25");
  CHECK(two[2] == "0,0,0,0,0,");
}

TEST_CASE("config layering") {
  Config c;
  CHECK(c.get("grid.points") == "1024");
  c.set_default("grid.points", "512");
  CHECK(c.get("grid.points") == "512");
  CHECK(!c.is_explicit("grid.points"));
  c.set("grid.points", "256");
  c.set_default("grid.points", "128");
  CHECK(c.count("grid.points") == 256);
  CHECK(c.is_explicit("grid.points"));
  CHECK_THROWS_AS(c.set("grid.pointz", "1"), UsageError);
  CHECK_THROWS_AS(c.get("nope"), UsageError);
}

TEST_CASE("config file parsing") {
  const fs::path path = scratch("run.cfg");
  write(path, "# comment\n\nphysical.depth = 0.5  # trailing\nscenario.p_ratio=0.8,1.2\nscheme.filter=off\n");
  Config c;
  c.load_file(path);
  CHECK(c.number("physical.depth") == 0.5);
  CHECK(c.number_list("scenario.p_ratio") == std::vector<double>{0.8, 1.2});
  CHECK(!c.flag("scheme.filter"));
  CHECK(physical_from(c).depth() == 0.5);

  write(path, "grid.points=64\nbogus\n");
  try {
    Config d;
    d.load_file(path);
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  write(path, "unknown.key=1\n");
  CHECK_THROWS_AS(Config{}.load_file(path), UsageError);
  CHECK_THROWS_AS(Config{}.load_file(scratch("absent.cfg")), IoError);
}

TEST_CASE("typed views name the offending key") {
  auto message = [](auto&& fn) {
    try {
      fn();
    } catch (const UsageError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  Config c;
  c.set("grid.points", "7");
  CHECK(message([&] { grid_from(c); }).find("grid") != std::string::npos);
  c = Config{};
  c.set("physical.depth", "-1");
  CHECK(message([&] { physical_from(c); }).find("physical.depth") != std::string::npos);
  c = Config{};
  c.set("scheme.frame", "sideways");
  CHECK(message([&] { scheme_from(c); }).find("scheme.frame") != std::string::npos);
  c = Config{};
  c.set("scheme.dt", "abc");
  CHECK(message([&] { scheme_from(c); }).find("scheme.dt") != std::string::npos);
  c = Config{};
  c.set("scheme.frame", "moving");
  c.set("scheme.alpha", "-0.05");
  CHECK(scheme_from(c).frame.alpha == -0.05);
}

TEST_CASE("resolved configuration lists every known key once") {
  const CsvHeader r = Config{}.resolved();
  CHECK(r.size() == Config::known_keys().size());
  for (const auto& [k, v] : r) CHECK(Config::is_known(k));
}
