#include "longwave/evolution.hpp"

#include <algorithm>
#include <complex>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "longwave/elliptic.hpp"
#include "longwave/errors.hpp"

namespace longwave {

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string format_time(double t) {
  std::ostringstream os;
  os.precision(9);
  os << t;
  return os.str();
}

// Classical RK4 on a flat state vector. rhs(y, out) writes dy/dt.
template <typename Rhs>
void rk4_advance(std::vector<double>& y, double t, double dt, Rhs&& rhs) {
  const std::size_t n = y.size();
  std::vector<double> k1 = rhs(y);
  std::vector<double> stage(n);
  auto check = [&](const std::vector<double>& k, int which) {
    if (!all_finite(k)) {
      throw BlowUpError("non-finite RK4 stage " + std::to_string(which) + " at t=" + format_time(t),
                        t);
    }
  };
  check(k1, 1);
  for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * dt * k1[i];
  std::vector<double> k2 = rhs(stage);
  check(k2, 2);
  for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * dt * k2[i];
  std::vector<double> k3 = rhs(stage);
  check(k3, 3);
  for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + dt * k3[i];
  std::vector<double> k4 = rhs(stage);
  check(k4, 4);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

void check_amplitude(std::span<const double> h, const PhysicalParams& params, double t) {
  if (!all_finite(h)) throw BlowUpError("non-finite surface at t=" + format_time(t), t);
  const double m = max_abs(h);
  if (m > 10.0 * params.depth()) {
    throw BlowUpError("|h| = " + format_time(m) + " exceeds 10 H at t=" + format_time(t), t);
  }
}

std::size_t step_count(double t_end, double dt) {
  if (t_end <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(t_end / dt * (1.0 - 1e-12)));
}

bool sample_due(std::size_t step, std::size_t steps, std::size_t stride) {
  if (step == 0 || step == steps) return true;
  return stride > 0 && step % stride == 0;
}

}  // namespace

void SchemeConfig::validate() const {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw UsageError("scheme.dt must be >= 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw UsageError("scheme.t_end must be >= 0");
  if (!(filter_cut > 0.0 && filter_cut < 1.0)) {
    throw UsageError("scheme.filter_cut must lie in (0, 1)");
  }
  if (!(cfl > 0.0)) throw UsageError("scheme.cfl must be > 0");
}

KdvOperator::KdvOperator(const PeriodicGrid& grid, const PhysicalParams& params, Frame frame,
                         DerivativeScheme scheme)
    : diff_(grid, scheme),
      coeff_(1.5 * std::sqrt(params.g() / params.depth())),
      linear_(frame.kind == Frame::Kind::fixed ? 2.0 / 3.0 * params.depth()
                                               : 2.0 / 3.0 * frame.alpha),
      dispersion_(dispersion_sigma(params) / 3.0),
      fft_(grid.size()),
      wavenumber_(fft_.modes()) {
  for (std::size_t j = 0; j + 1 < wavenumber_.size(); ++j) wavenumber_[j] = mode_wavenumber(grid, j);
}

std::vector<double> KdvOperator::operator()(std::span<const double> h) const {
  if (diff_.scheme() == DerivativeScheme::spectral) {
    // Flux assembled in Fourier space: 2 forward transforms and 1 inverse.
    if (h.size() != wavenumber_.size() * 2 - 2) throw UsageError("KdV input has the wrong length");
    std::vector<double> sq(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) sq[i] = 0.5 * h[i] * h[i];
    std::vector<std::complex<double>> flux = fft_.forward(sq);
    const std::vector<std::complex<double>> hh = fft_.forward(h);
    for (std::size_t j = 0; j < flux.size(); ++j) {
      const double k = wavenumber_[j];
      const std::complex<double> f = flux[j] + (linear_ - dispersion_ * k * k) * hh[j];
      const double ck = coeff_ * k;
      flux[j] = {ck * f.imag(), -ck * f.real()};  // -i ck f
    }
    return fft_.inverse(std::move(flux));
  }
  std::vector<double> flux = diff_.d2(h);
  for (std::size_t i = 0; i < flux.size(); ++i) {
    flux[i] = linear_ * h[i] + 0.5 * h[i] * h[i] + dispersion_ * flux[i];
  }
  std::vector<double> rhs = diff_.d1(flux);
  for (double& v : rhs) v *= -coeff_;
  return rhs;
}

std::vector<double> KdvOperator::linearized(std::span<const double> h,
                                            std::span<const double> v) const {
  std::vector<double> flux = diff_.d2(v);
  for (std::size_t i = 0; i < flux.size(); ++i) {
    flux[i] = linear_ * v[i] + h[i] * v[i] + dispersion_ * flux[i];
  }
  std::vector<double> out = diff_.d1(flux);
  for (double& x : out) x *= -coeff_;
  return out;
}

std::vector<double> kdv_rhs(const WaveField& field, const PhysicalParams& params, Frame frame,
                            DerivativeScheme scheme) {
  return KdvOperator(field.grid, params, frame, scheme)(field.h);
}

double kdv_stable_dt(const PeriodicGrid& grid, const PhysicalParams& params, Frame frame,
                     DerivativeScheme scheme, double max_amplitude, double cfl) {
  const Differentiator diff(grid, scheme);
  const double coeff = 1.5 * std::sqrt(params.g() / params.depth());
  const double linear =
      frame.kind == Frame::Kind::fixed ? 2.0 / 3.0 * params.depth() : 2.0 / 3.0 * frame.alpha;
  const double advective = coeff * (std::abs(linear) + std::abs(max_amplitude));
  const double dispersive = coeff * std::abs(dispersion_sigma(params)) / 3.0;
  const double bound = advective * diff.max_symbol(1) + dispersive * diff.max_symbol(3);
  return cfl / bound;
}

BoussinesqRate boussinesq_rhs(const BoussinesqState& state, const PhysicalParams& params,
                              const SchemeConfig& config) {
  require_same_grid(state.h, state.ht);
  const PeriodicGrid& grid = state.h.grid;
  const Differentiator diff(grid, config.deriv);
  const double g = params.g();
  const double H = params.depth();
  const auto& h = state.h.h;

  std::vector<double> hxx = diff.d2(h);
  std::vector<double> inner(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    inner[i] = 1.5 * h[i] * h[i] / H + H * H / 3.0 * hxx[i];
  }
  std::vector<double> inner_xx = diff.d2(inner);
  BoussinesqRate rate{state.ht.h, std::vector<double>(h.size())};
  for (std::size_t i = 0; i < h.size(); ++i) rate.dht[i] = g * H * (hxx[i] + inner_xx[i]);
  if (config.filter) {
    const double k_cut = config.filter_cut * std::sqrt(3.0) / H;
    lowpass_filter(grid, rate.dh, k_cut);
    lowpass_filter(grid, rate.dht, k_cut);
  }
  return rate;
}

double boussinesq_stable_dt(const PeriodicGrid& grid, const PhysicalParams& params,
                            const SchemeConfig& config, double max_amplitude) {
  const double g = params.g();
  const double H = params.depth();
  const double k = config.filter ? std::min(config.filter_cut * std::sqrt(3.0) / H,
                                            grid.nyquist_wavenumber())
                                 : grid.nyquist_wavenumber();
  // Linearised about amplitude a: omega^2 = gH k^2 |1 + 3a/H - H^2 k^2/3|.
  const double a = std::abs(max_amplitude);
  const double omega = k * std::sqrt(g * H * std::abs(1.0 + 3.0 * a / H - H * H * k * k / 3.0));
  return config.cfl / std::max(omega, 1e-300);
}

double boussinesq_energy(const BoussinesqState& state, const PhysicalParams& params,
                         DerivativeScheme scheme) {
  require_same_grid(state.h, state.ht);
  const PeriodicGrid& grid = state.h.grid;
  const Differentiator diff(grid, scheme);
  const double g = params.g();
  const double H = params.depth();
  const auto& h = state.h.h;
  const std::vector<double> q = periodic_antiderivative(grid, state.ht.h);
  const std::vector<double> hx = diff.d1(h);
  std::vector<double> density(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    density[i] = 0.5 * q[i] * q[i] + 0.5 * g * H * h[i] * h[i] + 0.5 * g * h[i] * h[i] * h[i] -
                 g * H * H * H / 6.0 * hx[i] * hx[i];
  }
  return integrate(grid, density);
}

void step_rk4(WaveField& field, const PhysicalParams& params, const SchemeConfig& config) {
  if (!(config.dt > 0.0)) throw UsageError("step_rk4 needs scheme.dt > 0");
  const KdvOperator op(field.grid, params, config.frame, config.deriv);
  rk4_advance(field.h, field.t, config.dt, [&](std::span<const double> y) { return op(y); });
  field.t += config.dt;
  check_amplitude(field.h, params, field.t);
}

namespace {

void boussinesq_advance(BoussinesqState& state, const PhysicalParams& params,
                        const SchemeConfig& config) {
  const std::size_t n = state.h.h.size();
  std::vector<double> y(2 * n);
  std::copy(state.h.h.begin(), state.h.h.end(), y.begin());
  std::copy(state.ht.h.begin(), state.ht.h.end(), y.begin() + static_cast<long>(n));
  const PeriodicGrid grid = state.h.grid;
  auto rhs = [&](std::span<const double> v) {
    // Stages are only checked for finiteness after return, so build the state unchecked.
    BoussinesqState s{WaveField::zeros(grid), WaveField::zeros(grid)};
    std::copy(v.begin(), v.begin() + static_cast<long>(n), s.h.h.begin());
    std::copy(v.begin() + static_cast<long>(n), v.end(), s.ht.h.begin());
    BoussinesqRate r = boussinesq_rhs(s, params, config);
    std::vector<double> out(2 * n);
    std::copy(r.dh.begin(), r.dh.end(), out.begin());
    std::copy(r.dht.begin(), r.dht.end(), out.begin() + static_cast<long>(n));
    return out;
  };
  rk4_advance(y, state.h.t, config.dt, rhs);
  std::copy(y.begin(), y.begin() + static_cast<long>(n), state.h.h.begin());
  std::copy(y.begin() + static_cast<long>(n), y.end(), state.ht.h.begin());
  state.h.t += config.dt;
  state.ht.t = state.h.t;
  check_amplitude(state.h.h, params, state.h.t);
}

}  // namespace

void step_rk4(BoussinesqState& state, const PhysicalParams& params, const SchemeConfig& config) {
  require_same_grid(state.h, state.ht);
  if (!(config.dt > 0.0)) throw UsageError("step_rk4 needs scheme.dt > 0");
  boussinesq_advance(state, params, config);
}

KdvRun evolve(const WaveField& initial, const PhysicalParams& params, const SchemeConfig& config,
              const FieldObserver& observer) {
  config.validate();
  KdvRun run;
  run.dt = config.dt > 0.0 ? config.dt
                           : kdv_stable_dt(initial.grid, params, config.frame, config.deriv,
                                           2.0 * initial.max_abs(), config.cfl);
  run.steps = step_count(config.t_end, run.dt);
  if (run.steps > 0) run.dt = config.t_end / static_cast<double>(run.steps);
  const double epsilon = config.epsilon != 0.0 ? config.epsilon : canonical_epsilon(params);

  const KdvOperator op(initial.grid, params, config.frame, config.deriv);
  WaveField field = initial;
  const double t0 = initial.t;
  auto sample = [&](std::size_t step) {
    if (sample_due(step, run.steps, config.invariant_stride)) {
      run.invariants.push_back(
          compute_invariants(field, params, epsilon, config.deriv, config.frame));
    }
    if (sample_due(step, run.steps, config.snapshot_stride)) run.snapshots.push_back(field);
  };
  sample(0);
  for (std::size_t step = 1; step <= run.steps; ++step) {
    rk4_advance(field.h, field.t, run.dt, [&](std::span<const double> y) { return op(y); });
    field.t = t0 + static_cast<double>(step) * run.dt;
    check_amplitude(field.h, params, field.t);
    if (observer) observer(field);
    sample(step);
  }
  return run;
}

BoussinesqRun evolve_boussinesq(const BoussinesqState& initial, const PhysicalParams& params,
                                const SchemeConfig& config,
                                const std::function<void(const BoussinesqState&)>& observer) {
  config.validate();
  require_same_grid(initial.h, initial.ht);
  BoussinesqRun run;
  BoussinesqState state = initial;
  if (config.filter) {
    const double k_cut = config.filter_cut * std::sqrt(3.0) / params.depth();
    run.initial_filter_removed = std::max(lowpass_filter(state.h.grid, state.h.h, k_cut),
                                          lowpass_filter(state.h.grid, state.ht.h, k_cut));
  }
  run.dt = config.dt > 0.0
               ? config.dt
               : boussinesq_stable_dt(state.h.grid, params, config, 2.0 * state.h.max_abs());
  run.steps = step_count(config.t_end, run.dt);
  if (run.steps > 0) run.dt = config.t_end / static_cast<double>(run.steps);

  SchemeConfig stepping = config;
  stepping.dt = run.dt;
  const double t0 = state.h.t;
  auto sample = [&](std::size_t step) {
    if (sample_due(step, run.steps, config.invariant_stride)) {
      run.energy.push_back({state.h.t, boussinesq_energy(state, params, config.deriv)});
    }
    if (sample_due(step, run.steps, config.snapshot_stride)) run.snapshots.push_back(state);
  };
  sample(0);
  for (std::size_t step = 1; step <= run.steps; ++step) {
    boussinesq_advance(state, params, stepping);
    state.h.t = t0 + static_cast<double>(step) * run.dt;
    state.ht.t = state.h.t;
    if (config.filter) run.filter_applications += 4;
    if (observer) observer(state);
    sample(step);
  }
  return run;
}

void DeformationSpec::validate() const {
  if (!(hbar > 0.0)) throw DomainError("deformation spec needs hbar > 0");
  if (!(p > 0.0)) throw DomainError("deformation spec needs p > 0");
}

double deformation_rate_closed_form(const DeformationSpec& spec, const PhysicalParams& params,
                                    double xi) {
  spec.validate();
  const double sigma = dispersion_sigma(params);
  const double s2 = sech_sq(spec.p * xi);
  const double th = std::tanh(spec.p * xi);
  const double p2 = spec.p * spec.p;
  const double bracket =
      (spec.hbar - 4.0 * sigma * p2) * s2 + 2.0 / 3.0 * (spec.alpha + 2.0 * sigma * p2);
  return 3.0 * std::sqrt(params.g() / params.depth()) * spec.hbar * spec.p * bracket * s2 * th;
}

double deformation_rate_specialized(const DeformationSpec& spec, const PhysicalParams& params,
                                    double xi) {
  spec.validate();
  const double sigma = dispersion_sigma(params);
  const double s2 = sech_sq(spec.p * xi);
  const double th = std::tanh(spec.p * xi);
  return 3.0 * std::sqrt(params.g() / params.depth()) * spec.hbar * spec.p *
         (4.0 * sigma * spec.p * spec.p - spec.hbar) * s2 * th * th * th;
}

double specialized_alpha(double hbar, double p, const PhysicalParams& params) {
  return 4.0 * dispersion_sigma(params) * p * p - 1.5 * hbar;
}

double steady_inverse_width(double hbar, const PhysicalParams& params) {
  const double sigma = dispersion_sigma(params);
  if (!(hbar / sigma > 0.0)) throw DomainError("steady inverse width needs hbar*sigma > 0");
  return std::sqrt(hbar / (4.0 * sigma));
}

const char* to_string(SteepeningVerdict verdict) noexcept {
  switch (verdict) {
    case SteepeningVerdict::steepens_in_front:
      return "steepens_in_front";
    case SteepeningVerdict::flattens_in_front:
      return "flattens_in_front";
    case SteepeningVerdict::steady:
      return "steady";
  }
  return "unknown";
}

SteepeningVerdict steepening_verdict(const DeformationSpec& spec, const PhysicalParams& params) {
  spec.validate();
  const double p_steady = steady_inverse_width(spec.hbar, params);
  if (std::abs(spec.p - p_steady) <= 1e-12 * p_steady) return SteepeningVerdict::steady;
  return spec.p < p_steady ? SteepeningVerdict::steepens_in_front
                           : SteepeningVerdict::flattens_in_front;
}

namespace {

struct FaceSlopes {
  double front;
  double back;
};

FaceSlopes face_slopes(const WaveField& field, DerivativeScheme scheme) {
  const PeriodicGrid& grid = field.grid;
  const Crest crest = locate_crest(grid, field.h);
  const std::vector<double> slope = Differentiator(grid, scheme).d1(field.h);
  FaceSlopes out{0.0, 0.0};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double d = std::fmod(grid.x(j) - crest.position + 1.5 * grid.length(), grid.length());
    d -= 0.5 * grid.length();
    if (d > 0.0) out.front = std::max(out.front, std::abs(slope[j]));
    if (d < 0.0) out.back = std::max(out.back, std::abs(slope[j]));
  }
  return out;
}

}  // namespace

SteepeningMeasurement measure_steepening(const DeformationSpec& spec, const PhysicalParams& params,
                                         const PeriodicGrid& grid, double duration,
                                         double tolerance) {
  spec.validate();
  std::vector<double> h(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) h[j] = spec.hbar * sech_sq(spec.p * grid.x(j));
  WaveField field(grid, std::move(h));

  SchemeConfig config;
  config.frame = Frame::moving(spec.alpha);
  config.t_end = duration;
  const KdvRun run = evolve(field, params, config);

  const FaceSlopes before = face_slopes(run.snapshots.front(), config.deriv);
  const FaceSlopes after = face_slopes(run.snapshots.back(), config.deriv);
  SteepeningMeasurement m{before.front, after.front, before.back, after.back, duration,
                          SteepeningVerdict::steady};
  const double change = (after.front - before.front) / before.front;
  if (change > tolerance) {
    m.observed = SteepeningVerdict::steepens_in_front;
  } else if (change < -tolerance) {
    m.observed = SteepeningVerdict::flattens_in_front;
  }
  return m;
}

double boussinesq_operator_residual(const WaveField& field, std::span<const double> ht,
                                    std::span<const double> htt, const PhysicalParams& params,
                                    DerivativeScheme scheme) {
  (void)ht;  // the operator is second order in time; h_t enters only through h_tt
  const Differentiator diff(field.grid, scheme);
  const double g = params.g();
  const double H = params.depth();
  const auto& h = field.h;
  const std::vector<double> hxx = diff.d2(h);
  std::vector<double> inner(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    inner[i] = 1.5 * h[i] * h[i] / H + H * H / 3.0 * hxx[i];
  }
  const std::vector<double> inner_xx = diff.d2(inner);
  const double scale = g * H * max_abs(hxx);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    worst = std::max(worst, std::abs(htt[i] - g * H * hxx[i] - g * H * inner_xx[i]));
  }
  return worst / scale;
}

double factorization_residual(const WaveField& field, const PhysicalParams& params,
                              DerivativeScheme scheme) {
  const KdvOperator op(field.grid, params, Frame::fixed(), scheme);
  const std::vector<double> ht = op(field.h);
  const std::vector<double> htt = op.linearized(field.h, ht);
  return boussinesq_operator_residual(field, ht, htt, params, scheme);
}

}  // namespace longwave
