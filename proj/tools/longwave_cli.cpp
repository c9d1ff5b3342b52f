// Command-line front end: analytic profiles, evolution runs, stability advice,
// invariant evaluation and the named experiment scenarios.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "longwave/analytic_waves.hpp"
#include "longwave/config.hpp"
#include "longwave/csv_io.hpp"
#include "longwave/errors.hpp"
#include "longwave/evolution.hpp"
#include "longwave/invariants.hpp"
#include "longwave/scenarios.hpp"

namespace lw = longwave;

namespace {

enum Exit : int { ok = 0, failure = 1, usage = 2, blowup = 3, io = 4 };

struct Overrides {
  std::string config_file;
  std::map<std::string, std::string> values;
};

void add_config_options(CLI::App& sub, Overrides& o) {
  sub.add_option("--config", o.config_file, "key=value configuration file");
  for (const lw::KeySpec& k : lw::Config::known_keys()) {
    sub.add_option("--" + k.name, o.values[k.name], k.help + " [" + k.fallback + "]");
  }
}

lw::Config build_config(const CLI::App& sub, const Overrides& o) {
  lw::Config config;
  if (!o.config_file.empty()) config.load_file(o.config_file);
  for (const auto& [key, value] : o.values) {
    if (sub.get_option("--" + key)->count() > 0) config.set(key, value);
  }
  return config;
}

void print(const lw::CsvHeader& entries) {
  for (const auto& [k, v] : entries) std::cout << k << '=' << v << '\n';
}

std::filesystem::path output_dir(const lw::Config& config) {
  const std::filesystem::path dir = config.get("output.dir");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw lw::IoError("cannot create output directory " + dir.string(), dir.string());
  }
  return dir;
}

lw::WaveField analytic_field(const lw::Config& config, const lw::PhysicalParams& params,
                             const lw::PeriodicGrid& grid, lw::CsvHeader& facts) {
  const std::string kind = config.get("wave.kind");
  const auto num = lw::format_number;
  if (kind == "solitary") {
    const lw::SolitarySpec spec = lw::SolitarySpec::from(params, config.number("wave.h0"));
    facts.emplace_back("speed", num(lw::solitary_speed(spec)));
    if (params.depth() + spec.h0() > 0.0) {
      facts.emplace_back("rayleigh_speed",
                         num(lw::rayleigh_speed(params.g(), params.depth(), spec.h0())));
    }
    facts.emplace_back("inverse_width", num(spec.inverse_width()));
    return lw::solitary_field(grid, spec, config.number("wave.center"));
  }
  if (kind == "cnoidal") {
    const lw::CnoidalSpec spec =
        lw::CnoidalSpec::from(params, config.number("wave.k"), config.number("wave.l"));
    const std::string base = config.get("wave.baseline");
    if (base != "trough" && base != "mean") {
      throw lw::UsageError("wave.baseline: expected trough or mean, got '" + base + "'");
    }
    facts.emplace_back("parameter_m", num(spec.parameter().value()));
    facts.emplace_back("wavelength", num(lw::cnoidal_wavelength(spec)));
    facts.emplace_back("frame_alpha", num(spec.frame_alpha()));
    facts.emplace_back("speed_frame", num(lw::kdv_periodic_speed(spec)));
    if (params.depth() + spec.l() - spec.k() > 0.0) {
      facts.emplace_back("speed_boussinesq", num(lw::boussinesq_periodic_speed(spec)));
    }
    return lw::cnoidal_field(grid, spec, config.number("wave.phase"),
                             base == "mean" ? lw::Baseline::mean : lw::Baseline::trough);
  }
  throw lw::UsageError("wave.kind: expected solitary or cnoidal, got '" + kind + "'");
}

lw::WaveField initial_field(const lw::Config& config, const lw::PhysicalParams& params,
                            lw::CsvHeader& facts) {
  const std::string input = config.get("input.profile");
  if (!input.empty()) return lw::read_profile_csv(input).field();
  return analytic_field(config, params, lw::grid_from(config), facts);
}

int cmd_analytic(const lw::Config& config) {
  const lw::PhysicalParams params = lw::physical_from(config);
  const lw::PeriodicGrid grid = lw::grid_from(config);
  lw::CsvHeader facts{{"sigma", lw::format_number(lw::dispersion_sigma(params))}};
  const lw::WaveField field = analytic_field(config, params, grid, facts);
  const auto dir = output_dir(config);
  lw::emit_profile_csv(field, params, lw::DerivativeScheme::spectral, dir / "profile.csv", facts);
  print(facts);
  return ok;
}

int cmd_evolve(const lw::Config& config) {
  const lw::PhysicalParams params = lw::physical_from(config);
  const lw::SchemeConfig scheme = lw::scheme_from(config);
  lw::CsvHeader facts;
  const lw::WaveField initial = initial_field(config, params, facts);
  const auto dir = output_dir(config);
  const lw::KdvRun run = lw::evolve(initial, params, scheme);
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    lw::emit_profile_csv(run.snapshots[i], params, scheme.deriv,
                         dir / ("profile_" + std::to_string(i) + ".csv"));
  }
  lw::emit_invariants_csv(run.invariants, dir / "invariants.csv");
  const lw::InvariantDrift d = lw::conservation_drift(run.invariants);
  facts.emplace_back("steps", std::to_string(run.steps));
  facts.emplace_back("dt", lw::format_number(run.dt));
  facts.emplace_back("drift_Q", lw::format_number(d.Q));
  facts.emplace_back("drift_E", lw::format_number(d.E));
  facts.emplace_back("drift_M", lw::format_number(d.M));
  facts.emplace_back("drift_Hfun", lw::format_number(d.Hfun));
  lw::CsvHeader manifest = lw::manifest_preamble("evolve", config);
  manifest.insert(manifest.end(), facts.begin(), facts.end());
  lw::emit_manifest(dir / "manifest.txt", manifest);
  print(facts);
  return ok;
}

int cmd_stability(const lw::Config& config) {
  const lw::PhysicalParams params = lw::physical_from(config);
  const lw::PeriodicGrid grid = lw::grid_from(config);
  const lw::SchemeConfig scheme = lw::scheme_from(config);
  const double amp = std::abs(config.number("wave.h0"));
  print({{"kdv_dt", lw::format_number(lw::kdv_stable_dt(grid, params, scheme.frame, scheme.deriv,
                                                        amp, scheme.cfl))},
         {"boussinesq_dt",
          lw::format_number(lw::boussinesq_stable_dt(grid, params, scheme, amp))},
         {"sigma", lw::format_number(lw::dispersion_sigma(params))},
         {"critical_depth", lw::format_number(lw::critical_depth(params))}});
  return ok;
}

int cmd_invariants(const lw::Config& config) {
  const lw::PhysicalParams params = lw::physical_from(config);
  const lw::SchemeConfig scheme = lw::scheme_from(config);
  lw::CsvHeader facts;
  const lw::WaveField field = initial_field(config, params, facts);
  const double epsilon = scheme.epsilon != 0.0 ? scheme.epsilon : lw::canonical_epsilon(params);
  const lw::InvariantSet s =
      lw::compute_invariants(field, params, epsilon, scheme.deriv, scheme.frame);
  const auto num = lw::format_number;
  facts.emplace_back("Q", num(s.Q));
  facts.emplace_back("E", num(s.E));
  facts.emplace_back("M", num(s.M));
  facts.emplace_back("Hfun", num(s.Hfun));
  facts.emplace_back("xg_dot", s.xg_dot ? num(*s.xg_dot) : "");
  try {
    const lw::CriticalPointResidual c = lw::critical_point_residual(field, params, scheme.deriv);
    facts.emplace_back("critical_lambda", num(c.lambda));
    facts.emplace_back("critical_spread", num(c.spread));
  } catch (const lw::DegeneracyError&) {
    facts.emplace_back("critical_lambda", "");
  }
  const auto dir = output_dir(config);
  const lw::InvariantSet series[] = {s};
  lw::emit_invariants_csv(series, dir / "invariants.csv");
  print(facts);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-wave (KdV / Boussinesq) analytic waves, evolution and experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LONGWAVE_VERSION);

  Overrides analytic_o, evolve_o, stability_o, invariants_o, scenario_o;
  CLI::App* analytic = app.add_subcommand("analytic", "sample a solitary or cnoidal profile");
  CLI::App* evolve = app.add_subcommand("evolve", "integrate the unidirectional equation");
  CLI::App* stability = app.add_subcommand("stability", "print time-step advisories");
  CLI::App* invariants = app.add_subcommand("invariants", "evaluate conserved functionals");
  CLI::App* scenario = app.add_subcommand("scenario", "run a named experiment");
  std::string scenario_name;
  scenario->add_option("name", scenario_name, "scenario name")->required();
  add_config_options(*analytic, analytic_o);
  add_config_options(*evolve, evolve_o);
  add_config_options(*stability, stability_o);
  add_config_options(*invariants, invariants_o);
  add_config_options(*scenario, scenario_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*analytic) return cmd_analytic(build_config(*analytic, analytic_o));
    if (*evolve) return cmd_evolve(build_config(*evolve, evolve_o));
    if (*stability) return cmd_stability(build_config(*stability, stability_o));
    if (*invariants) return cmd_invariants(build_config(*invariants, invariants_o));
    if (*scenario) {
      print(lw::run_scenario(scenario_name, build_config(*scenario, scenario_o)));
      return ok;
    }
  } catch (const lw::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const lw::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const lw::BlowUpError& e) {
    std::cerr << "numerical blow-up: " << e.what() << '\n';
    return blowup;
  } catch (const lw::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
  return usage;
}
