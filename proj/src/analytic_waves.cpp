#include "longwave/analytic_waves.hpp"

#include <cmath>
#include <string>

#include "longwave/errors.hpp"

namespace longwave {

SolitarySpec::SolitarySpec(double h0, double sigma, double depth, double g)
    : h0_(h0), sigma_(sigma), depth_(depth), g_(g) {
  if (!(h0 * sigma > 0.0)) {
    throw DomainError("no steady solitary wave: h0*sigma must be > 0 (h0=" + std::to_string(h0) +
                      ", sigma=" + std::to_string(sigma) + ")");
  }
  if (!(depth > 0.0) || !(g > 0.0)) throw DomainError("solitary wave needs depth > 0 and g > 0");
}

SolitarySpec SolitarySpec::from(const PhysicalParams& params, double h0) {
  return {h0, dispersion_sigma(params), params.depth(), params.g()};
}

double SolitarySpec::inverse_width() const noexcept { return std::sqrt(h0_ / (4.0 * sigma_)); }

CnoidalSpec::CnoidalSpec(double k, double l, double sigma, double depth, double g)
    : k_(k), l_(l), sigma_(sigma), depth_(depth), g_(g) {
  if (!(k > 0.0) || !(l > 0.0)) throw DomainError("cnoidal roots need k > 0 and l > 0");
  if (!(sigma > 0.0)) throw DomainError("cnoidal wave needs sigma > 0");
  if (!(depth > 0.0) || !(g > 0.0)) throw DomainError("cnoidal wave needs depth > 0 and g > 0");
}

CnoidalSpec CnoidalSpec::from(const PhysicalParams& params, double k, double l) {
  return {k, l, dispersion_sigma(params), params.depth(), params.g()};
}

EllipticParameter CnoidalSpec::parameter() const { return EllipticParameter(l_ / (l_ + k_)); }

double CnoidalSpec::argument_scale() const noexcept {
  return std::sqrt((l_ + k_) / (4.0 * sigma_));
}

double solitary_profile(const SolitarySpec& spec, double x) {
  return spec.h0() * sech_sq(spec.inverse_width() * x);
}

double solitary_slope(const SolitarySpec& spec, double x) {
  const double u = spec.inverse_width() * x;
  return -2.0 * spec.h0() * spec.inverse_width() * sech_sq(u) * std::tanh(u);
}

double solitary_speed(const SolitarySpec& spec) {
  const double g = spec.g();
  const double H = spec.depth();
  return std::sqrt(g * H) + 0.5 * std::sqrt(g / H) * spec.h0();
}

double rayleigh_speed(double g, double depth, double h0) {
  if (!(depth + h0 > 0.0)) throw DomainError("rayleigh_speed needs H + h0 > 0");
  return std::sqrt(g * (depth + h0));
}

double steady_ode_residual_solitary(const SolitarySpec& spec, double x) {
  const double h = solitary_profile(spec, x);
  const double dh = solitary_slope(spec, x);
  const double h0 = spec.h0();
  const double sigma = spec.sigma();
  return (dh * dh - h * h * (h0 - h) / sigma) / (h0 * h0 * h0 / sigma);
}

double cnoidal_profile(const CnoidalSpec& spec, double xi) {
  const auto j = jacobi_cn_sn_dn(spec.argument_scale() * xi, spec.parameter());
  return spec.l() * j.cn * j.cn;
}

double cnoidal_slope(const CnoidalSpec& spec, double xi) {
  const double beta = spec.argument_scale();
  const auto j = jacobi_cn_sn_dn(beta * xi, spec.parameter());
  return -2.0 * spec.l() * beta * j.cn * j.sn * j.dn;
}

double cnoidal_wavelength(const CnoidalSpec& spec) {
  return 4.0 * complete_k(spec.parameter()) * std::sqrt(spec.sigma() / (spec.l() + spec.k()));
}

double cnoidal_ode_residual(const CnoidalSpec& spec, double xi) {
  const double h = cnoidal_profile(spec, xi);
  const double dh = cnoidal_slope(spec, xi);
  const double k = spec.k();
  const double l = spec.l();
  const double sigma = spec.sigma();
  const double scale = (l + k) * (l + k) * (l + k) / sigma;
  return (dh * dh - (h + k) * h * (l - h) / sigma) / scale;
}

double boussinesq_periodic_speed(const CnoidalSpec& spec) {
  const double depth = spec.depth() + spec.l() - spec.k();
  if (!(depth > 0.0)) throw DomainError("boussinesq_periodic_speed needs H + l - k > 0");
  return std::sqrt(spec.g() * depth);
}

double kdv_periodic_speed(const CnoidalSpec& spec) {
  const double g = spec.g();
  const double H = spec.depth();
  return std::sqrt(g * H) + 0.5 * std::sqrt(g / H) * (spec.l() - spec.k());
}

double periodic_offset(const PeriodicGrid& grid, double x, double center) {
  const double L = grid.length();
  double d = std::fmod(x - center + 0.5 * L, L);
  if (d < 0.0) d += L;
  return d - 0.5 * L;
}

WaveField solitary_field(const PeriodicGrid& grid, const SolitarySpec& spec, double center,
                         double t) {
  std::vector<double> h(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    h[j] = solitary_profile(spec, periodic_offset(grid, grid.x(j), center));
  }
  return WaveField(grid, std::move(h), t);
}

WaveField cnoidal_field(const PeriodicGrid& grid, const CnoidalSpec& spec, double phase,
                        Baseline baseline, double t) {
  std::vector<double> h(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) h[j] = cnoidal_profile(spec, grid.x(j) - phase);
  if (baseline == Baseline::mean) {
    const double mean = integrate(grid, h) / grid.length();
    for (double& v : h) v -= mean;
  }
  return WaveField(grid, std::move(h), t);
}

}  // namespace longwave
