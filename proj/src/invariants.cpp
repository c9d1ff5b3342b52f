#include "longwave/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "longwave/errors.hpp"
#include "longwave/evolution.hpp"

namespace longwave {

double canonical_epsilon(const PhysicalParams& params) {
  const double H = params.depth();
  return -H * H / 12.0;
}

namespace {

double stability_moment(const WaveField& field, const PhysicalParams& params,
                        const Differentiator& diff) {
  const double H3 = std::pow(params.depth(), 3);
  const std::vector<double> hx = diff.d1(field.h);
  std::vector<double> density(hx.size());
  for (std::size_t i = 0; i < hx.size(); ++i) {
    const double h = field.h[i];
    density[i] = hx[i] * hx[i] - 3.0 * h * h * h / H3;
  }
  return integrate(field.grid, density);
}

double squared_integral(const WaveField& field) {
  std::vector<double> sq(field.h.size());
  std::transform(field.h.begin(), field.h.end(), sq.begin(), [](double v) { return v * v; });
  return integrate(field.grid, sq);
}

}  // namespace

InvariantSet compute_invariants(const WaveField& field, const PhysicalParams& params,
                                double epsilon, DerivativeScheme scheme, Frame frame) {
  const PeriodicGrid& grid = field.grid;
  const Differentiator diff(grid, scheme);
  InvariantSet out;
  out.t = field.t;
  out.Q = integrate(grid, field.h);
  out.E = squared_integral(field);
  out.M = stability_moment(field, params, diff);
  out.Hfun = 0.5 * out.E + epsilon * out.M;

  const double scale = grid.length() * params.depth();
  if (std::abs(out.Q) > 1e-12 * scale) {
    const std::vector<double> ht = KdvOperator(grid, params, frame, scheme)(field.h);
    std::vector<double> xh(grid.size());
    std::vector<double> xht(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      xh[j] = grid.x(j) * field.h[j];
      xht[j] = grid.x(j) * ht[j];
    }
    const double first = integrate(grid, xh);
    const double dfirst = integrate(grid, xht);
    const double dmass = integrate(grid, ht);
    out.xg_dot = (dfirst * out.Q - first * dmass) / (out.Q * out.Q);
  }
  return out;
}

double hamiltonian(const WaveField& field, const PhysicalParams& params, double epsilon,
                   DerivativeScheme scheme) {
  const Differentiator diff(field.grid, scheme);
  return 0.5 * squared_integral(field) + epsilon * stability_moment(field, params, diff);
}

std::vector<double> variational_derivative(const WaveField& field, const PhysicalParams& params,
                                           double epsilon, DerivativeScheme scheme) {
  const double H3 = std::pow(params.depth(), 3);
  std::vector<double> out = Differentiator(field.grid, scheme).d2(field.h);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double h = field.h[i];
    out[i] = h + epsilon * (-2.0 * out[i] - 9.0 * h * h / H3);
  }
  return out;
}

std::vector<double> hamiltonian_flow_rhs(const WaveField& field, const PhysicalParams& params,
                                         double epsilon, DerivativeScheme scheme) {
  const std::vector<double> grad = variational_derivative(field, params, epsilon, scheme);
  std::vector<double> out = Differentiator(field.grid, scheme).d1(grad);
  const double c = params.linear_speed();
  for (double& v : out) v *= -c;
  return out;
}

CriticalPointResidual critical_point_residual(const WaveField& field, const PhysicalParams& params,
                                              DerivativeScheme scheme) {
  const double H3 = std::pow(params.depth(), 3);
  const double floor = 1e-8 * field.max_abs();
  const std::vector<double> hxx = Differentiator(field.grid, scheme).d2(field.h);
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t count = 0;
  for (std::size_t i = 0; i < hxx.size(); ++i) {
    const double h = field.h[i];
    if (!(std::abs(h) > floor)) continue;
    const double r = (-2.0 * hxx[i] - 9.0 * h * h / H3) / (2.0 * h);
    sum += r;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    ++count;
  }
  if (count == 0) throw DegeneracyError("critical-point ratio: every sample is masked");
  const double lambda = sum / static_cast<double>(count);
  const double spread = lambda != 0.0 ? (hi - lo) / std::abs(lambda)
                                      : std::numeric_limits<double>::infinity();
  return {lambda, spread, count};
}

namespace {

double relative_change(double now, double start) {
  const double scale = std::abs(start) < 1e-14 ? 1.0 : std::abs(start);
  return std::abs(now - start) / scale;
}

}  // namespace

InvariantDrift conservation_drift(std::span<const InvariantSet> series) {
  InvariantDrift d;
  if (series.empty()) return d;
  const InvariantSet& s0 = series.front();
  bool centroid = s0.xg_dot.has_value();
  double centroid_drift = 0.0;
  for (const InvariantSet& s : series) {
    d.Q = std::max(d.Q, relative_change(s.Q, s0.Q));
    d.E = std::max(d.E, relative_change(s.E, s0.E));
    d.M = std::max(d.M, relative_change(s.M, s0.M));
    d.Hfun = std::max(d.Hfun, relative_change(s.Hfun, s0.Hfun));
    if (centroid && s.xg_dot) {
      centroid_drift = std::max(centroid_drift, relative_change(*s.xg_dot, *s0.xg_dot));
    } else {
      centroid = false;
    }
  }
  if (centroid) d.xg_dot = centroid_drift;
  return d;
}

}  // namespace longwave
