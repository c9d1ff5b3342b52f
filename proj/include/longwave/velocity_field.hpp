#pragma once

#include <cstdint>
#include <vector>

#include "longwave/model.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

/// Default relative threshold below which |h| is treated as zero.
inline constexpr double kVelocityMask = 1e-6;

/// Samples with a validity mask (1 = valid). Masked values are NaN.
struct MaskedSamples {
  std::vector<double> values;
  std::vector<std::uint8_t> valid;

  std::size_t valid_count() const noexcept;
  /// Median over valid entries. Throws DegeneracyError if none are valid.
  double median() const;
  /// max |value - reference| / |reference| over valid entries (0 if none).
  double max_relative_deviation(double reference) const;
};

/// Local wave velocity sqrt(gH) (1 + 3h/(4H) + H^2 h_xx/(6h)), masked where
/// |h| < mask * max|h|.
MaskedSamples omega_pointwise(const WaveField& field, const PhysicalParams& params,
                              DerivativeScheme scheme = DerivativeScheme::spectral,
                              double mask = kVelocityMask);

/// Wave velocity from the mass flux, omega = (1/h) int -h_t dx, with h_t from the
/// difference of two snapshots and h at their midpoint. The integral is anchored at
/// the sample of smallest |h|. Throws UsageError on mismatched grids or
/// before.t >= after.t.
MaskedSamples omega_from_mass_flux(const WaveField& before, const WaveField& after,
                                   const PhysicalParams& params, double mask = kVelocityMask);

/// Depth-mean horizontal velocity omega h/(H + h). Throws DomainError at a dry point.
std::vector<double> mean_velocity_U(const WaveField& field, double omega,
                                    const PhysicalParams& params);

struct BernoulliResidual {
  std::vector<double> samples;
  double spread;  ///< max - min over samples
};

/// -omega U + g h + U^2/2 + (H omega^2/3) h_xx, which is constant on a steady profile
/// up to terms cubic in the amplitude.
BernoulliResidual bernoulli_residual(const WaveField& field, double omega,
                                     const PhysicalParams& params,
                                     DerivativeScheme scheme = DerivativeScheme::spectral);

struct VelocityDiagnostics {
  MaskedSamples omega;
  std::vector<double> U;
  std::vector<double> bernoulli;
};

/// All three diagnostics at once, with U and the Bernoulli samples evaluated at omega_const.
VelocityDiagnostics velocity_diagnostics(const WaveField& field, double omega_const,
                                         const PhysicalParams& params,
                                         DerivativeScheme scheme = DerivativeScheme::spectral);

}  // namespace longwave
