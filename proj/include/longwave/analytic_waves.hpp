#pragma once

#include "longwave/elliptic.hpp"
#include "longwave/model.hpp"

namespace longwave {

/// Steady solitary wave h0 sech^2(sqrt(h0/(4 sigma)) x).
/// Elevation waves need sigma > 0, depression waves (h0 < 0) need sigma < 0.
class SolitarySpec {
 public:
  /// Throws DomainError unless h0 * sigma > 0 and depth, g > 0.
  SolitarySpec(double h0, double sigma, double depth, double g);
  static SolitarySpec from(const PhysicalParams& params, double h0);

  double h0() const noexcept { return h0_; }
  double sigma() const noexcept { return sigma_; }
  double depth() const noexcept { return depth_; }
  double g() const noexcept { return g_; }
  /// sqrt(h0/(4 sigma)), the sech argument per unit length.
  double inverse_width() const noexcept;

 private:
  double h0_;
  double sigma_;
  double depth_;
  double g_;
};

/// Periodic steady wave l cn^2(sqrt((l+k)/(4 sigma)) xi | m), m = l/(l+k).
/// Elevation is measured from the trough; the crest sits at xi = 0.
class CnoidalSpec {
 public:
  /// Throws DomainError unless k > 0, l > 0, sigma > 0.
  CnoidalSpec(double k, double l, double sigma, double depth, double g);
  static CnoidalSpec from(const PhysicalParams& params, double k, double l);

  double k() const noexcept { return k_; }
  double l() const noexcept { return l_; }
  double sigma() const noexcept { return sigma_; }
  double depth() const noexcept { return depth_; }
  double g() const noexcept { return g_; }

  EllipticParameter parameter() const;
  /// sqrt((l+k)/(4 sigma)): maps xi to the cn argument.
  double argument_scale() const noexcept;
  /// Moving-frame constant alpha = (k - l)/2 for which the trough-based profile is steady.
  double frame_alpha() const noexcept { return 0.5 * (k_ - l_); }

 private:
  double k_;
  double l_;
  double sigma_;
  double depth_;
  double g_;
};

double solitary_profile(const SolitarySpec& spec, double x);
/// Analytic dh/dx of the solitary profile.
double solitary_slope(const SolitarySpec& spec, double x);
/// sqrt(gH) + sqrt(g/H) h0 / 2.
double solitary_speed(const SolitarySpec& spec);
/// Unapproximated sqrt(g (H + h0)). Throws DomainError if H + h0 <= 0.
double rayleigh_speed(double g, double depth, double h0);
/// ((dh/dx)^2 - h^2 (h0 - h)/sigma) / (h0^3/sigma) on the closed-form profile.
double steady_ode_residual_solitary(const SolitarySpec& spec, double x);

double cnoidal_profile(const CnoidalSpec& spec, double xi);
/// Analytic dh/dxi of the cnoidal profile.
double cnoidal_slope(const CnoidalSpec& spec, double xi);
/// 4 K(m) sqrt(sigma/(l+k)).
double cnoidal_wavelength(const CnoidalSpec& spec);
/// ((dh/dxi)^2 - (h+k) h (l-h)/sigma) / ((l+k)^3/sigma) on the closed-form profile.
double cnoidal_ode_residual(const CnoidalSpec& spec, double xi);
/// sqrt(g (H + l - k)). Throws DomainError if H + l - k <= 0.
double boussinesq_periodic_speed(const CnoidalSpec& spec);
/// Fixed-frame speed of the KdV moving frame with alpha = (k - l)/2:
/// sqrt(gH) + sqrt(g/H) (l - k)/2.
double kdv_periodic_speed(const CnoidalSpec& spec);

enum class Baseline { trough, mean };

/// Samples the solitary profile centred at `center`, using the periodic distance to it.
WaveField solitary_field(const PeriodicGrid& grid, const SolitarySpec& spec, double center = 0.0,
                         double t = 0.0);

/// Samples the cnoidal profile with its crest at `phase`. Baseline::mean subtracts the
/// grid mean so the field has zero mass, as the evolution equations expect.
WaveField cnoidal_field(const PeriodicGrid& grid, const CnoidalSpec& spec, double phase = 0.0,
                        Baseline baseline = Baseline::trough, double t = 0.0);

/// Wraps x - center into [-L/2, L/2).
double periodic_offset(const PeriodicGrid& grid, double x, double center);

}  // namespace longwave
