#include "longwave/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "longwave/csv_io.hpp"
#include "longwave/errors.hpp"
#include "longwave/spectral.hpp"
#include "longwave/velocity_field.hpp"

#ifndef LONGWAVE_VERSION
#define LONGWAVE_VERSION "unknown"
#endif

namespace longwave {

namespace {

double wrap(double d, double length) {
  d = std::fmod(d + 0.5 * length, length);
  if (d < 0.0) d += length;
  return d - 0.5 * length;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Step size evolve() would pick, so strides can be set before the run.
double resolved_dt(const WaveField& initial, const PhysicalParams& params,
                   const SchemeConfig& scheme) {
  if (scheme.dt > 0.0) return scheme.dt;
  return kdv_stable_dt(initial.grid, params, scheme.frame, scheme.deriv, 2.0 * initial.max_abs(),
                       scheme.cfl);
}

std::size_t planned_steps(double t_end, double dt) {
  return static_cast<std::size_t>(std::ceil(t_end / dt * (1.0 - 1e-12)));
}

// Local maxima of the samples, tallest first, refined on the interpolant.
std::vector<Crest> tallest_crests(const WaveField& field, std::size_t count) {
  const PeriodicGrid& grid = field.grid;
  const std::size_t n = grid.size();
  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < n; ++j) {
    const double left = field.h[(j + n - 1) % n];
    const double right = field.h[(j + 1) % n];
    if (field.h[j] > left && field.h[j] >= right) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t a, std::size_t b) { return field.h[a] > field.h[b]; });
  if (peaks.size() < count) throw DegeneracyError("fewer crests than expected");
  std::vector<Crest> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = grid.x(peaks[i]);
    out.push_back(locate_crest(grid, field.h, x - 2.0 * grid.dx(), x + 2.0 * grid.dx()));
  }
  return out;
}

double windowed_shape_error(const WaveField& field, const PhysicalParams& params,
                            double amplitude, const Crest& crest) {
  const SolitarySpec spec = SolitarySpec::from(params, amplitude);
  const double window = 6.0 / spec.inverse_width();
  double worst = 0.0;
  for (std::size_t j = 0; j < field.grid.size(); ++j) {
    const double d = wrap(field.grid.x(j) - crest.position, field.grid.length());
    if (std::abs(d) > window) continue;
    worst = std::max(worst, std::abs(field.h[j] - solitary_profile(spec, d)));
  }
  return worst / amplitude;
}

std::string num(double v) { return format_number(v); }

// Shortest round-trip form, for labels inside keys.
std::string label(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

CrestTracker::CrestTracker(const WaveField& initial) : length_(initial.grid.length()) {
  const Crest c = locate_crest(initial.grid, initial.h);
  samples_.push_back({initial.t, c.position, c.height});
}

void CrestTracker::observe(const WaveField& field) {
  const Crest c = locate_crest(field.grid, field.h);
  const CrestSample& last = samples_.back();
  const double raw_last = wrap(last.position, length_);
  const double step = wrap(c.position - raw_last, length_);
  samples_.push_back({field.t, last.position + step, c.height});
}

double CrestTracker::mean_speed() const {
  const CrestSample& a = samples_.front();
  const CrestSample& b = samples_.back();
  if (b.t == a.t) return 0.0;
  return (b.position - a.position) / (b.t - a.t);
}

SolitaryTransitResult solitary_transit(const PhysicalParams& params, const PeriodicGrid& grid,
                                       SchemeConfig scheme, double h0) {
  const SolitarySpec spec = SolitarySpec::from(params, h0);
  const WaveField initial = solitary_field(grid, spec, 0.0);
  SolitaryTransitResult out;
  out.h0 = h0;
  out.speed_theory = solitary_speed(spec);
  out.tail_ratio = std::abs(initial.h.front()) / std::abs(h0);
  if (scheme.t_end == 0.0) {
    scheme.t_end = grid.length() / (out.speed_theory - scheme.frame.speed(params));
    scheme.t_end = std::abs(scheme.t_end);
  }
  const double dt = resolved_dt(initial, params, scheme);
  const std::size_t steps = planned_steps(scheme.t_end, dt);
  if (scheme.invariant_stride == 0) scheme.invariant_stride = std::max<std::size_t>(1, steps / 100);

  CrestTracker tracker(initial);
  const std::size_t track_stride = std::max<std::size_t>(1, steps / 400);
  std::size_t step = 0;
  out.run = evolve(initial, params, scheme, [&](const WaveField& f) {
    ++step;
    if (step % track_stride == 0 || step == steps) tracker.observe(f);
  });
  out.track = tracker.samples();
  out.speed_measured = tracker.mean_speed() + scheme.frame.speed(params);

  const WaveField& final_field = out.run.snapshots.back();
  const Crest crest = locate_crest(grid, final_field.h);
  const std::vector<double> recentred = spectral_shift(grid, final_field.h, -crest.position);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    worst = std::max(worst, std::abs(recentred[j] - initial.h[j]));
  }
  out.shape_error = worst / std::abs(h0);
  out.drift = conservation_drift(out.run.invariants);
  return out;
}

TwoSolitonResult two_soliton(const PhysicalParams& params, const PeriodicGrid& grid,
                             SchemeConfig scheme, double h_tall, double h_short,
                             double separation) {
  if (!(h_tall > h_short && h_short > 0.0)) {
    throw UsageError("two_soliton needs scenario.h_tall > scenario.h_short > 0");
  }
  if (!(separation > 0.0 && separation < grid.length())) {
    throw UsageError("scenario.separation must lie in (0, grid.length)");
  }
  TwoSolitonResult out;
  out.alpha = -(h_tall + h_short) / 4.0;
  scheme.frame = Frame::moving(out.alpha);
  const double rate = std::sqrt(params.g() / params.depth());
  const double v_tall = rate * (0.5 * h_tall + out.alpha);
  const double v_short = rate * (0.5 * h_short + out.alpha);
  if (scheme.t_end == 0.0) scheme.t_end = 2.0 * separation / (v_tall - v_short);
  out.t_end = scheme.t_end;

  const SolitarySpec tall = SolitarySpec::from(params, h_tall);
  const SolitarySpec low = SolitarySpec::from(params, h_short);
  const WaveField a = solitary_field(grid, tall, -0.5 * separation);
  const WaveField b = solitary_field(grid, low, 0.5 * separation);
  std::vector<double> h(grid.size());
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = a.h[j] + b.h[j];
  const WaveField initial(grid, std::move(h));

  const std::vector<Crest> before = tallest_crests(initial, 2);
  out.tall_initial = {before[0].height, before[0].position};
  out.short_initial = {before[1].height, before[1].position};

  out.run = evolve(initial, params, scheme);
  const WaveField& final_field = out.run.snapshots.back();
  const std::vector<Crest> after = tallest_crests(final_field, 2);
  out.tall_final = {after[0].height, after[0].position};
  out.short_final = {after[1].height, after[1].position};

  const double L = grid.length();
  out.tall_shift = wrap(after[0].position - (-0.5 * separation + v_tall * out.t_end), L);
  out.short_shift = wrap(after[1].position - (0.5 * separation + v_short * out.t_end), L);
  out.tall_shape_error = windowed_shape_error(final_field, params, h_tall, after[0]);
  out.short_shape_error = windowed_shape_error(final_field, params, h_short, after[1]);
  return out;
}

CnoidalRow cnoidal_row(const PhysicalParams& params, double k, double l, std::size_t points) {
  const CnoidalSpec spec = CnoidalSpec::from(params, k, l);
  CnoidalRow row{};
  row.k = k;
  row.l = l;
  row.m = spec.parameter().value();
  row.wavelength = cnoidal_wavelength(spec);
  row.speed_boussinesq = boussinesq_periodic_speed(spec);
  row.speed_frame = kdv_periodic_speed(spec);
  for (int j = 0; j < 64; ++j) {
    row.ode_residual = std::max(
        row.ode_residual, std::abs(cnoidal_ode_residual(spec, row.wavelength * j / 64.0)));
  }
  const PeriodicGrid grid(row.wavelength, points);
  const WaveField field = cnoidal_field(grid, spec, 0.0, Baseline::trough);
  row.bernoulli_spread = bernoulli_residual(field, row.speed_boussinesq, params).spread;
  return row;
}

SteepeningCase steepening_case(const PhysicalParams& params, const PeriodicGrid& grid,
                               double hbar, double p_ratio, double duration) {
  SteepeningCase c{};
  c.p_ratio = p_ratio;
  const double p = p_ratio * steady_inverse_width(hbar, params);
  c.spec = {hbar, p, specialized_alpha(hbar, p, params)};
  c.predicted = steepening_verdict(c.spec, params);
  c.measured = measure_steepening(c.spec, params, grid, duration);
  return c;
}

FactorizationResult factorization_study(const PhysicalParams& params, double length,
                                        const std::vector<std::size_t>& points, double h0) {
  if (points.empty()) throw UsageError("scenario.points_list is empty");
  const SolitarySpec spec = SolitarySpec::from(params, h0);
  FactorizationResult out{};
  out.h0 = h0;
  const double H = params.depth();
  out.predicted_floor = 0.25 * (h0 / H) * (h0 / H);
  for (std::size_t n : points) {
    const PeriodicGrid grid(length, n);
    out.rows.push_back({n, factorization_residual(solitary_field(grid, spec), params)});
  }

  const PeriodicGrid grid(length, *std::max_element(points.begin(), points.end()));
  const WaveField field = solitary_field(grid, spec);
  const Differentiator diff(grid, DerivativeScheme::spectral);
  const double omega = solitary_speed(spec);
  std::vector<double> ht = diff.d1(field.h);
  std::vector<double> htt = diff.d2(field.h);
  for (double& v : ht) v *= omega;
  for (double& v : htt) v *= omega * omega;
  out.control_bidirectional = boussinesq_operator_residual(field, ht, htt, params);
  const std::vector<double> kr = kdv_rhs(field, params, Frame::fixed());
  double worst = 0.0;
  for (std::size_t j = 0; j < kr.size(); ++j) worst = std::max(worst, std::abs(ht[j] - kr[j]));
  out.control_unidirectional = worst / max_abs(kr);
  return out;
}

LinearModeResult boussinesq_linear_mode(const PhysicalParams& params, const PeriodicGrid& grid,
                                        std::size_t mode, double periods, double filter_cut) {
  const double g = params.g();
  const double H = params.depth();
  LinearModeResult out{};
  out.k = mode_wavenumber(grid, mode);
  if (!(out.k < filter_cut * std::sqrt(3.0) / H)) {
    throw UsageError("scenario.mode lies above the Boussinesq filter cut");
  }
  out.omega_theory = out.k * std::sqrt(g * H) * std::sqrt(1.0 - H * H * out.k * out.k / 3.0);
  const double period = 2.0 * std::numbers::pi / out.omega_theory;

  std::vector<double> basis(grid.size());
  std::vector<double> h(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    basis[j] = std::cos(out.k * grid.x(j));
    h[j] = 1e-8 * H * basis[j];
  }
  const double norm = 2.0 / static_cast<double>(grid.size());
  auto project = [&](const WaveField& f) {
    double s = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) s += f.h[j] * basis[j];
    return norm * s;
  };
  BoussinesqState state{WaveField(grid, std::move(h)), WaveField::zeros(grid)};
  SchemeConfig scheme;
  scheme.dt = period / 400.0;
  scheme.t_end = periods * period;
  scheme.filter_cut = filter_cut;
  out.times.push_back(0.0);
  out.amplitude.push_back(project(state.h));
  evolve_boussinesq(state, params, scheme, [&](const BoussinesqState& s) {
    out.times.push_back(s.h.t);
    out.amplitude.push_back(project(s.h));
  });

  std::vector<double> crossings;
  for (std::size_t i = 1; i < out.times.size(); ++i) {
    const double a = out.amplitude[i - 1];
    const double b = out.amplitude[i];
    if ((a < 0.0) != (b < 0.0)) {
      crossings.push_back(out.times[i - 1] + (out.times[i] - out.times[i - 1]) * a / (a - b));
    }
  }
  if (crossings.size() < 2) throw DegeneracyError("linear mode produced no zero crossings");
  out.omega_measured = std::numbers::pi * static_cast<double>(crossings.size() - 1) /
                       (crossings.back() - crossings.front());
  return out;
}

BoussinesqSolitaryResult boussinesq_solitary(const PhysicalParams& params,
                                             const PeriodicGrid& grid, double h0, double dt,
                                             double filter_cut) {
  const SolitarySpec spec = SolitarySpec::from(params, h0);
  BoussinesqSolitaryResult out{};
  out.speed_theory = solitary_speed(spec);
  WaveField h = solitary_field(grid, spec);
  std::vector<double> ht = Differentiator(grid, DerivativeScheme::spectral).d1(h.h);
  for (double& v : ht) v *= -out.speed_theory;
  BoussinesqState state{h, WaveField(grid, std::move(ht))};

  SchemeConfig scheme;
  scheme.dt = dt;
  scheme.filter_cut = filter_cut;
  scheme.t_end = grid.length() / out.speed_theory;
  out.t_end = scheme.t_end;
  CrestTracker tracker(state.h);
  const std::size_t stride =
      std::max<std::size_t>(1, planned_steps(scheme.t_end, dt) / 400);
  std::size_t step = 0;
  const BoussinesqRun run = evolve_boussinesq(state, params, scheme, [&](const BoussinesqState& s) {
    if (++step % stride == 0) tracker.observe(s.h);
  });
  tracker.observe(run.snapshots.back().h);
  out.speed_measured = tracker.mean_speed();
  out.initial_filter_removed = run.initial_filter_removed;
  return out;
}

std::vector<double> seeded_noise(std::size_t n, double amplitude, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> out(n);
  for (double& v : out) {
    const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    v = amplitude * (2.0 * unit - 1.0);
  }
  return out;
}

NoiseResult boussinesq_noise(const PhysicalParams& params, const PeriodicGrid& grid,
                             double noise, std::uint64_t seed, double dt, double horizon,
                             double filter_cut) {
  const BoussinesqState initial{
      WaveField(grid, seeded_noise(grid.size(), noise * params.depth(), seed)),
      WaveField::zeros(grid)};
  SchemeConfig scheme;
  scheme.dt = dt;
  scheme.t_end = horizon;
  scheme.filter_cut = filter_cut;
  scheme.invariant_stride = 1;

  NoiseResult out{};
  const BoussinesqRun filtered = evolve_boussinesq(initial, params, scheme);
  out.energy = filtered.energy;
  const double e0 = out.energy.front().energy;
  for (const EnergySample& s : out.energy) {
    out.energy_drift = std::max(out.energy_drift, std::abs(s.energy - e0) / std::abs(e0));
  }

  scheme.filter = false;
  scheme.invariant_stride = 0;
  out.blowup_time = std::numeric_limits<double>::quiet_NaN();
  try {
    evolve_boussinesq(initial, params, scheme);
    out.unfiltered_blew_up = false;
  } catch (const BlowUpError& e) {
    out.unfiltered_blew_up = true;
    out.blowup_time = e.time_reached();
    out.blowup_message = e.what();
  }
  return out;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "solitary_transit", "two_soliton",   "cnoidal_sweep",  "steepening",
      "stability_conservation", "factorization", "boussinesq_demo"};
  return names;
}

CsvHeader manifest_preamble(const std::string& scenario, const Config& config) {
  CsvHeader out{{"version", LONGWAVE_VERSION}, {"scenario", scenario}};
  const CsvHeader resolved = config.resolved();
  out.insert(out.end(), resolved.begin(), resolved.end());
  return out;
}

namespace {

std::filesystem::path prepare_output(const Config& config) {
  const std::filesystem::path dir = config.get("output.dir");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string(), dir.string());
  }
  return dir;
}

void set_defaults(Config& config, const CsvHeader& defaults) {
  for (const auto& [k, v] : defaults) config.set_default(k, v);
}

CsvHeader run_transit(const Config& config, const std::filesystem::path& dir, bool conservation) {
  const PhysicalParams params = physical_from(config);
  const PeriodicGrid grid = grid_from(config);
  const SchemeConfig scheme = scheme_from(config);
  const double h0 = config.number("wave.h0");
  const SolitaryTransitResult r = solitary_transit(params, grid, scheme, h0);

  emit_profile_csv(r.run.snapshots.front(), params, scheme.deriv, dir / "profile_initial.csv");
  emit_profile_csv(r.run.snapshots.back(), params, scheme.deriv, dir / "profile_final.csv");
  emit_invariants_csv(r.run.invariants, dir / "invariants.csv");
  std::vector<std::vector<double>> rows;
  for (const CrestSample& s : r.track) rows.push_back({s.t, s.position, s.height});
  emit_table_csv(dir / "crest_track.csv", {}, {"t", "position", "height"}, rows);

  CsvHeader out{{"result.steps", std::to_string(r.run.steps)},
                {"result.dt", num(r.run.dt)},
                {"result.t_end", num(r.run.snapshots.back().t)},
                {"result.tail_ratio", num(r.tail_ratio)},
                {"result.speed_theory", num(r.speed_theory)},
                {"result.speed_measured", num(r.speed_measured)},
                {"result.speed_relative_error",
                 num(std::abs(r.speed_measured - r.speed_theory) / r.speed_theory)},
                {"result.shape_error", num(r.shape_error)},
                {"result.drift_Q", num(r.drift.Q)},
                {"result.drift_E", num(r.drift.E)},
                {"result.drift_M", num(r.drift.M)},
                {"result.drift_Hfun", num(r.drift.Hfun)}};
  if (conservation) {
    for (const auto& [label, field] : {std::pair{"initial", &r.run.snapshots.front()},
                                       std::pair{"final", &r.run.snapshots.back()}}) {
      const CriticalPointResidual c = critical_point_residual(*field, params, scheme.deriv);
      out.emplace_back(std::string("result.critical_lambda_") + label, num(c.lambda));
      out.emplace_back(std::string("result.critical_spread_") + label, num(c.spread));
    }
    out.emplace_back("result.critical_lambda_theory",
                     num(-3.0 * h0 / std::pow(params.depth(), 3)));
  }
  return out;
}

CsvHeader run_two_soliton(const Config& config, const std::filesystem::path& dir) {
  const PhysicalParams params = physical_from(config);
  const PeriodicGrid grid = grid_from(config);
  const SchemeConfig scheme = scheme_from(config);
  const TwoSolitonResult r =
      two_soliton(params, grid, scheme, config.number("scenario.h_tall"),
                  config.number("scenario.h_short"), config.number("scenario.separation"));
  for (std::size_t i = 0; i < r.run.snapshots.size(); ++i) {
    const std::string name = i == 0 ? "profile_initial.csv"
                             : i + 1 == r.run.snapshots.size()
                                 ? "profile_final.csv"
                                 : "profile_" + std::to_string(i) + ".csv";
    emit_profile_csv(r.run.snapshots[i], params, scheme.deriv, dir / name,
                     {{"frame_alpha", num(r.alpha)}});
  }
  emit_invariants_csv(r.run.invariants, dir / "invariants.csv");
  return {{"result.alpha", num(r.alpha)},
          {"result.t_end", num(r.t_end)},
          {"result.steps", std::to_string(r.run.steps)},
          {"result.tall_amplitude_initial", num(r.tall_initial.amplitude)},
          {"result.tall_amplitude_final", num(r.tall_final.amplitude)},
          {"result.short_amplitude_initial", num(r.short_initial.amplitude)},
          {"result.short_amplitude_final", num(r.short_final.amplitude)},
          {"result.tall_phase_shift", num(r.tall_shift)},
          {"result.short_phase_shift", num(r.short_shift)},
          {"result.tall_shape_error", num(r.tall_shape_error)},
          {"result.short_shape_error", num(r.short_shape_error)}};
}

CsvHeader run_cnoidal_sweep(const Config& config, const std::filesystem::path& dir) {
  const PhysicalParams params = physical_from(config);
  const std::size_t points = config.count("grid.points");
  const double l = config.number("scenario.l");
  std::vector<std::vector<double>> rows;
  CsvHeader out;
  for (double k : config.number_list("scenario.k_list")) {
    const CnoidalRow r = cnoidal_row(params, k, l, points);
    rows.push_back({r.k, r.l, r.m, r.wavelength, r.speed_boussinesq, r.speed_frame,
                    r.ode_residual, r.bernoulli_spread});
    const CnoidalSpec spec = CnoidalSpec::from(params, k, l);
    const PeriodicGrid grid(r.wavelength, points);
    emit_profile_csv(cnoidal_field(grid, spec), params, DerivativeScheme::spectral,
                     dir / ("cnoidal_k" + label(k) + ".csv"), {{"k", num(k)}, {"l", num(l)}});
  }
  emit_table_csv(dir / "cnoidal_sweep.csv", {},
                 {"k", "l", "m", "wavelength", "speed_boussinesq", "speed_frame",
                  "ode_residual", "bernoulli_spread"},
                 rows);
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, row[6]);
  out.emplace_back("result.cases", std::to_string(rows.size()));
  out.emplace_back("result.max_ode_residual", num(worst));
  return out;
}

CsvHeader run_steepening(const Config& config, const std::filesystem::path& dir) {
  const PhysicalParams params = physical_from(config);
  const PeriodicGrid grid = grid_from(config);
  const double hbar = config.number("scenario.hbar");
  const double duration = config.number("scenario.duration");
  std::vector<std::vector<double>> rows;
  CsvHeader out;
  std::size_t agree = 0;
  const std::vector<double> ratios = config.number_list("scenario.p_ratio");
  for (double ratio : ratios) {
    const SteepeningCase c = steepening_case(params, grid, hbar, ratio, duration);
    rows.push_back({ratio, c.spec.p, c.spec.alpha, c.measured.front_slope_initial,
                    c.measured.front_slope_final, c.measured.back_slope_initial,
                    c.measured.back_slope_final});
    const std::string key = "result.p_ratio_" + label(ratio);
    out.emplace_back(key + ".verdict", to_string(c.predicted));
    out.emplace_back(key + ".observed", to_string(c.measured.observed));
    if (c.predicted == c.measured.observed) ++agree;
  }
  emit_table_csv(dir / "steepening.csv", {{"hbar", num(hbar)}, {"duration", num(duration)}},
                 {"p_ratio", "p", "alpha", "front_slope_initial", "front_slope_final",
                  "back_slope_initial", "back_slope_final"},
                 rows);
  out.emplace_back("result.agreement", std::to_string(agree) + "/" + std::to_string(ratios.size()));
  if (ratios.size() == 1) out.emplace_back("result.verdict", out.front().second);
  return out;
}

CsvHeader run_factorization(const Config& config, const std::filesystem::path& dir) {
  const PhysicalParams params = physical_from(config);
  const FactorizationResult r =
      factorization_study(params, config.number("grid.length"),
                          config.count_list("scenario.points_list"), config.number("wave.h0"));
  std::vector<std::vector<double>> rows;
  for (const FactorizationRow& row : r.rows) {
    rows.push_back({static_cast<double>(row.points), row.residual});
  }
  emit_table_csv(dir / "factorization.csv", {{"h0", num(r.h0)}}, {"N", "residual"}, rows);
  return {{"result.residual_finest", num(r.rows.back().residual)},
          {"result.predicted_floor", num(r.predicted_floor)},
          {"result.control_bidirectional", num(r.control_bidirectional)},
          {"result.control_unidirectional", num(r.control_unidirectional)}};
}

CsvHeader run_boussinesq_demo(const Config& config, const std::filesystem::path& dir) {
  const PhysicalParams params = physical_from(config);
  const PeriodicGrid grid = grid_from(config);
  const SchemeConfig scheme = scheme_from(config);
  const LinearModeResult lin =
      boussinesq_linear_mode(params, grid, config.count("scenario.mode"),
                             config.number("scenario.periods"), scheme.filter_cut);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < lin.times.size(); ++i) rows.push_back({lin.times[i], lin.amplitude[i]});
  emit_table_csv(dir / "linear_mode.csv", {{"k", num(lin.k)}}, {"t", "amplitude"}, rows);

  const PeriodicGrid soliton_grid(160.0, 512);
  const BoussinesqSolitaryResult sol =
      boussinesq_solitary(params, soliton_grid, 0.05 * params.depth(), 0.05, scheme.filter_cut);

  const double dt = scheme.dt > 0.0 ? scheme.dt : 0.01;
  const NoiseResult noise =
      boussinesq_noise(params, grid, config.number("scenario.noise"),
                       config.unsigned_integer("seed"), dt,
                       config.number("scenario.noise_horizon"), scheme.filter_cut);
  rows.clear();
  for (const EnergySample& s : noise.energy) rows.push_back({s.t, s.energy});
  emit_table_csv(dir / "energy_filtered.csv", {}, {"t", "energy"}, rows);

  return {{"result.mode_k", num(lin.k)},
          {"result.omega_theory", num(lin.omega_theory)},
          {"result.omega_measured", num(lin.omega_measured)},
          {"result.omega_relative_error",
           num(std::abs(lin.omega_measured - lin.omega_theory) / lin.omega_theory)},
          {"result.solitary_grid", "L=160,N=512,h0=0.05H,dt=0.05"},
          {"result.solitary_speed_theory", num(sol.speed_theory)},
          {"result.solitary_speed_measured", num(sol.speed_measured)},
          {"result.noise_dt", num(dt)},
          {"result.filtered_energy_drift", num(noise.energy_drift)},
          {"result.unfiltered_blew_up", noise.unfiltered_blew_up ? "true" : "false"},
          {"result.unfiltered_blowup_time", num(noise.blowup_time)}};
}

}  // namespace

CsvHeader run_scenario(const std::string& name, Config config) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown scenario '" + name + "'; known scenarios: " + known);
  }
  if (name == "two_soliton") {
    set_defaults(config, {{"grid.points", "512"}, {"scheme.frame", "moving"}});
  } else if (name == "cnoidal_sweep") {
    set_defaults(config, {{"grid.points", "256"}});
  } else if (name == "steepening") {
    set_defaults(config, {{"grid.length", "80"}, {"grid.points", "512"}});
  } else if (name == "boussinesq_demo") {
    set_defaults(config, {{"grid.length", num(20.0 * std::numbers::pi)},
                          {"grid.points", "128"},
                          {"scheme.dt", "0.01"}});
  }
  // Validate everything before any output is produced.
  physical_from(config);
  grid_from(config);
  scheme_from(config);
  const std::filesystem::path dir = prepare_output(config);

  CsvHeader results;
  if (name == "solitary_transit") results = run_transit(config, dir, false);
  if (name == "stability_conservation") results = run_transit(config, dir, true);
  if (name == "two_soliton") results = run_two_soliton(config, dir);
  if (name == "cnoidal_sweep") results = run_cnoidal_sweep(config, dir);
  if (name == "steepening") results = run_steepening(config, dir);
  if (name == "factorization") results = run_factorization(config, dir);
  if (name == "boussinesq_demo") results = run_boussinesq_demo(config, dir);

  CsvHeader manifest = manifest_preamble(name, config);
  manifest.insert(manifest.end(), results.begin(), results.end());
  emit_manifest(dir / "manifest.txt", manifest);
  return results;
}

}  // namespace longwave
