#pragma once

namespace longwave {

/// Elliptic parameter m = kappa^2 (square of the modulus), 0 <= m <= 1.
/// Every elliptic routine in this library takes the parameter, never the modulus.
class EllipticParameter {
 public:
  /// Throws DomainError outside [0, 1] or for NaN.
  explicit EllipticParameter(double m);
  double value() const noexcept { return m_; }
  /// 1 - m, exact for m close to 1.
  double complement() const noexcept { return 1.0 - m_; }

 private:
  double m_;
};

/// Complete elliptic integral of the first kind,
/// K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt, via the arithmetic-geometric mean.
/// Throws DomainError for m >= 1.
double complete_k(EllipticParameter m);

struct JacobiTriple {
  double cn;
  double sn;
  double dn;
};

/// Jacobi cn(u|m), sn(u|m), dn(u|m).
///
/// Uses the AGM scale sequence with descending Landen recurrence for the
/// amplitude. m = 1 is handled exactly (cn = dn = sech u, sn = tanh u).
/// Throws DomainError for non-finite u.
JacobiTriple jacobi_cn_sn_dn(double u, EllipticParameter m);

/// 1/cosh^2(u) without overflow for large |u|.
double sech_sq(double u) noexcept;

}  // namespace longwave
