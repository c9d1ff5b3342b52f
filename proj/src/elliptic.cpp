#include "longwave/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "longwave/errors.hpp"

namespace longwave {

namespace {

constexpr int kMaxAgmSteps = 40;

}  // namespace

EllipticParameter::EllipticParameter(double m) : m_(m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw DomainError("elliptic parameter must lie in [0, 1], got " + std::to_string(m));
  }
}

double complete_k(EllipticParameter m) {
  if (m.value() >= 1.0) throw DomainError("complete_k diverges at m = 1");
  double a = 1.0;
  double b = std::sqrt(m.complement());
  for (int i = 0; i < kMaxAgmSteps; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * a) break;
  }
  return std::numbers::pi / (a + b);
}

JacobiTriple jacobi_cn_sn_dn(double u, EllipticParameter m) {
  if (!std::isfinite(u)) throw DomainError("jacobi_cn_sn_dn requires a finite argument");
  const double mv = m.value();
  if (mv == 0.0) return {std::cos(u), std::sin(u), 1.0};
  if (mv == 1.0) {
    const double s = std::sqrt(sech_sq(u));
    return {s, std::tanh(u), s};
  }

  // AGM scale: a_n, c_n with c_n/a_n -> 0 quadratically.
  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  double b = std::sqrt(m.complement());
  c[0] = std::sqrt(mv);
  int n = 0;
  while (n < kMaxAgmSteps && std::abs(c[n]) > std::numeric_limits<double>::epsilon() * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }

  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  const double cn = std::cos(phi);
  const double sn = std::sin(phi);
  // dn^2 = (1 - m) + m cn^2 stays well conditioned near the quarter period,
  // where cos(phi_1 - phi_0) and cn both vanish.
  const double dn = std::sqrt(m.complement() + mv * cn * cn);
  return {cn, sn, dn};
}

double sech_sq(double u) noexcept {
  const double e = std::exp(-2.0 * std::abs(u));
  const double d = 1.0 + e;
  return 4.0 * e / (d * d);
}

}  // namespace longwave
