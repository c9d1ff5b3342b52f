#include "longwave/velocity_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "longwave/errors.hpp"

namespace longwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::size_t MaskedSamples::valid_count() const noexcept {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

double MaskedSamples::median() const {
  std::vector<double> kept;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (valid[i]) kept.push_back(values[i]);
  }
  if (kept.empty()) throw DegeneracyError("median of a fully masked sample set");
  const auto mid = kept.begin() + static_cast<long>(kept.size() / 2);
  std::nth_element(kept.begin(), mid, kept.end());
  if (kept.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(kept.begin(), mid);
  return 0.5 * (lower + upper);
}

double MaskedSamples::max_relative_deviation(double reference) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (valid[i]) worst = std::max(worst, std::abs(values[i] - reference));
  }
  return worst / std::abs(reference);
}

MaskedSamples omega_pointwise(const WaveField& field, const PhysicalParams& params,
                              DerivativeScheme scheme, double mask) {
  const double H = params.depth();
  const double c = params.linear_speed();
  const double floor = mask * field.max_abs();
  const std::vector<double> hxx = Differentiator(field.grid, scheme).d2(field.h);
  MaskedSamples out{std::vector<double>(hxx.size(), kNaN),
                    std::vector<std::uint8_t>(hxx.size(), 0)};
  for (std::size_t i = 0; i < hxx.size(); ++i) {
    const double h = field.h[i];
    if (!(std::abs(h) > floor)) continue;
    out.values[i] = c * (1.0 + 0.75 * h / H + H * H * hxx[i] / (6.0 * h));
    out.valid[i] = 1;
  }
  return out;
}

MaskedSamples omega_from_mass_flux(const WaveField& before, const WaveField& after,
                                   const PhysicalParams& params, double mask) {
  (void)params;
  require_same_grid(before, after);
  const double dt = after.t - before.t;
  if (!(dt > 0.0)) throw UsageError("omega_from_mass_flux needs before.t < after.t");
  const PeriodicGrid& grid = before.grid;
  const std::size_t n = grid.size();
  std::vector<double> mid(n);
  std::vector<double> ht(n);
  for (std::size_t i = 0; i < n; ++i) {
    mid[i] = 0.5 * (before.h[i] + after.h[i]);
    ht[i] = (after.h[i] - before.h[i]) / dt;
  }
  std::vector<double> flux = periodic_antiderivative(grid, ht);
  std::size_t anchor = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(mid[i]) < std::abs(mid[anchor])) anchor = i;
  }
  const double base = flux[anchor];
  for (double& f : flux) f = -(f - base);

  double peak = 0.0;
  for (double v : mid) peak = std::max(peak, std::abs(v));
  const double floor = mask * peak;
  MaskedSamples out{std::vector<double>(n, kNaN), std::vector<std::uint8_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(mid[i]) > floor)) continue;
    out.values[i] = flux[i] / mid[i];
    out.valid[i] = 1;
  }
  return out;
}

std::vector<double> mean_velocity_U(const WaveField& field, double omega,
                                    const PhysicalParams& params) {
  const double H = params.depth();
  std::vector<double> U(field.h.size());
  for (std::size_t i = 0; i < U.size(); ++i) {
    const double column = H + field.h[i];
    if (!(column > 0.0)) throw DomainError("mean velocity: dry point with H + h <= 0");
    U[i] = omega * field.h[i] / column;
  }
  return U;
}

BernoulliResidual bernoulli_residual(const WaveField& field, double omega,
                                     const PhysicalParams& params, DerivativeScheme scheme) {
  const double g = params.g();
  const double H = params.depth();
  const std::vector<double> U = mean_velocity_U(field, omega, params);
  const std::vector<double> hxx = Differentiator(field.grid, scheme).d2(field.h);
  BernoulliResidual out{std::vector<double>(U.size()), 0.0};
  for (std::size_t i = 0; i < U.size(); ++i) {
    out.samples[i] = -omega * U[i] + g * field.h[i] + 0.5 * U[i] * U[i] +
                     H * omega * omega / 3.0 * hxx[i];
  }
  const auto [lo, hi] = std::minmax_element(out.samples.begin(), out.samples.end());
  out.spread = *hi - *lo;
  return out;
}

VelocityDiagnostics velocity_diagnostics(const WaveField& field, double omega_const,
                                         const PhysicalParams& params, DerivativeScheme scheme) {
  return {omega_pointwise(field, params, scheme), mean_velocity_U(field, omega_const, params),
          bernoulli_residual(field, omega_const, params, scheme).samples};
}

}  // namespace longwave
