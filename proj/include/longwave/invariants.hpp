#pragma once

#include <optional>
#include <span>
#include <vector>

#include "longwave/model.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

/// Conserved functionals of the unidirectional model at one time.
struct InvariantSet {
  double Q = 0.0;     ///< mass, int h dx
  double E = 0.0;     ///< energy, int h^2 dx
  double M = 0.0;     ///< stability moment, int (h_x^2 - 3 h^3/H^3) dx
  double Hfun = 0.0;  ///< Hamiltonian E/2 + epsilon M
  std::optional<double> xg_dot;  ///< centre-of-gravity velocity; absent when |Q| <= 1e-12 H L
  double t = 0.0;
};

/// Scale parameter -H^2/12 that makes the Hamiltonian flow reproduce the fixed-frame KdV equation.
double canonical_epsilon(const PhysicalParams& params);

/// All functionals by the periodic rectangle rule. xg_dot is
/// d/dt (int x h / int h) with h_t from the KdV right-hand side in `frame`.
InvariantSet compute_invariants(const WaveField& field, const PhysicalParams& params,
                                double epsilon,
                                DerivativeScheme scheme = DerivativeScheme::spectral,
                                Frame frame = Frame::fixed());

/// Hamiltonian functional value for an arbitrary epsilon.
double hamiltonian(const WaveField& field, const PhysicalParams& params, double epsilon,
                   DerivativeScheme scheme = DerivativeScheme::spectral);

/// delta H / delta h = h + epsilon (-2 h_xx - 9 h^2/H^3).
std::vector<double> variational_derivative(const WaveField& field, const PhysicalParams& params,
                                           double epsilon,
                                           DerivativeScheme scheme = DerivativeScheme::spectral);

/// -sqrt(gH) d/dx (delta H / delta h).
std::vector<double> hamiltonian_flow_rhs(const WaveField& field, const PhysicalParams& params,
                                         double epsilon,
                                         DerivativeScheme scheme = DerivativeScheme::spectral);

struct CriticalPointResidual {
  double lambda;  ///< mean of r(x), the Lagrange multiplier estimate (1/m^2)
  double spread;  ///< (max r - min r)/|lambda|
  std::size_t samples;
};

/// r(x) = (-2 h_xx - 9 h^2/H^3)/(2h) over |h| > 1e-8 max|h|. A steady solitary
/// wave is a critical point of M at fixed E, so r is constant there.
/// Throws DegeneracyError when every sample is masked.
CriticalPointResidual critical_point_residual(const WaveField& field, const PhysicalParams& params,
                                              DerivativeScheme scheme = DerivativeScheme::spectral);

struct InvariantDrift {
  double Q = 0.0;
  double E = 0.0;
  double M = 0.0;
  double Hfun = 0.0;
  std::optional<double> xg_dot;
};

/// max_t |I(t) - I(0)| / max(|I(0)|, floor) per invariant, with floor 1 (absolute
/// drift) when |I(0)| < 1e-14.
InvariantDrift conservation_drift(std::span<const InvariantSet> series);

}  // namespace longwave
