#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "longwave/invariants.hpp"
#include "longwave/model.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

/// Explicit RK4 stability constant c in dt <= c / max|eigenvalue|. The imaginary-axis
/// limit of classical RK4 is 2 sqrt(2).
inline constexpr double kDefaultCfl = 2.0;

struct SchemeConfig {
  DerivativeScheme deriv = DerivativeScheme::spectral;
  double dt = 0.0;     ///< time step (s); 0 selects the stability advisory
  double t_end = 0.0;  ///< final time (s)
  double filter_cut = 0.5;  ///< Boussinesq low-pass cutoff as a fraction of sqrt(3)/H
  bool filter = true;       ///< disable only for the ill-posedness demonstration
  Frame frame = Frame::fixed();
  double cfl = kDefaultCfl;
  std::size_t invariant_stride = 0;  ///< steps between invariant samples; 0 = first/last only
  std::size_t snapshot_stride = 0;   ///< steps between snapshots; 0 = first/last only
  double epsilon = 0.0;              ///< Hamiltonian scale for invariant series; 0 = canonical

  /// Throws UsageError on dt < 0, t_end < 0, filter_cut outside (0, 1) or cfl <= 0.
  void validate() const;
};

/// Right-hand side of the unidirectional equation,
///   fixed:  h_t = -(3/2) sqrt(g/H) d/dx (2/3 H h + 1/2 h^2 + sigma/3 h_xx)
///   moving: h_t = -(3/2) sqrt(g/H) d/dxi (1/2 h^2 + 2/3 alpha h + sigma/3 h_xixi)
/// sigma/3 equals H^3/9 without capillarity.
std::vector<double> kdv_rhs(const WaveField& field, const PhysicalParams& params, Frame frame,
                            DerivativeScheme scheme = DerivativeScheme::spectral);

/// Reusable KdV right-hand side bound to one grid.
class KdvOperator {
 public:
  KdvOperator(const PeriodicGrid& grid, const PhysicalParams& params, Frame frame,
              DerivativeScheme scheme);
  std::vector<double> operator()(std::span<const double> h) const;
  /// Frechet derivative of the right-hand side at h applied to v.
  std::vector<double> linearized(std::span<const double> h, std::span<const double> v) const;
  const Differentiator& differentiator() const noexcept { return diff_; }

 private:
  Differentiator diff_;
  double coeff_;      // (3/2) sqrt(g/H)
  double linear_;     // 2/3 H (fixed) or 2/3 alpha (moving)
  double dispersion_; // sigma/3
  FourierTransform fft_;
  std::vector<double> wavenumber_;  // Nyquist entry zeroed
};

/// Largest stable step for the KdV operator at amplitude max_amplitude.
double kdv_stable_dt(const PeriodicGrid& grid, const PhysicalParams& params, Frame frame,
                     DerivativeScheme scheme, double max_amplitude, double cfl = kDefaultCfl);

/// Surface and its time derivative for the bidirectional equation.
struct BoussinesqState {
  WaveField h;
  WaveField ht;
};

struct BoussinesqRate {
  std::vector<double> dh;   ///< = h_t (filtered)
  std::vector<double> dht;  ///< = h_tt (filtered)
};

/// First-order form of h_tt = gH h_xx + gH d^2/dx^2 (3h^2/(2H) + H^2/3 h_xx), with the
/// sharp low-pass at filter_cut sqrt(3)/H applied to both components when enabled.
/// Throws UsageError when h and h_t live on different grids.
BoussinesqRate boussinesq_rhs(const BoussinesqState& state, const PhysicalParams& params,
                              const SchemeConfig& config);

/// Largest stable step for the filtered bidirectional equation.
double boussinesq_stable_dt(const PeriodicGrid& grid, const PhysicalParams& params,
                            const SchemeConfig& config, double max_amplitude);

/// Conserved energy of the bidirectional equation,
///   int [ q^2/2 + gH h^2/2 + g h^3/2 - gH^3/6 h_x^2 ] dx,  with q_x = -h_t.
double boussinesq_energy(const BoussinesqState& state, const PhysicalParams& params,
                         DerivativeScheme scheme = DerivativeScheme::spectral);

/// One classical RK4 step of size config.dt. Throws BlowUpError (naming the
/// time reached) on non-finite stages or |h| > 10 H.
void step_rk4(WaveField& field, const PhysicalParams& params, const SchemeConfig& config);
void step_rk4(BoussinesqState& state, const PhysicalParams& params, const SchemeConfig& config);

/// Called after every completed step.
using FieldObserver = std::function<void(const WaveField&)>;

struct KdvRun {
  std::vector<WaveField> snapshots;
  std::vector<InvariantSet> invariants;
  double dt = 0.0;
  std::size_t steps = 0;
};

/// Integrates to config.t_end with ceil(t_end/dt) equal steps. Snapshots and
/// invariants are sampled at step 0, at every stride and at the final step.
KdvRun evolve(const WaveField& initial, const PhysicalParams& params, const SchemeConfig& config,
              const FieldObserver& observer = {});

struct EnergySample {
  double t;
  double energy;
};

struct BoussinesqRun {
  std::vector<BoussinesqState> snapshots;
  std::vector<EnergySample> energy;
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t filter_applications = 0;
  double initial_filter_removed = 0.0;  ///< largest coefficient removed from the initial data
};

/// Bidirectional counterpart of evolve. With the filter on, the initial state is
/// projected onto the retained modes first.
BoussinesqRun evolve_boussinesq(const BoussinesqState& initial, const PhysicalParams& params,
                                const SchemeConfig& config,
                                const std::function<void(const BoussinesqState&)>& observer = {});

/// Near-solitary profile hbar sech^2(p xi) in a frame with parameter alpha.
struct DeformationSpec {
  double hbar;
  double p;
  double alpha;

  /// Throws DomainError unless hbar > 0 and p > 0.
  void validate() const;
};

/// Instantaneous d h/d tau of the near-solitary profile in the moving frame:
///   3 sqrt(g/H) hbar p [ (hbar - 4 sigma p^2) sech^2 + 2/3 (alpha + 2 sigma p^2) ] sech^2 tanh.
/// This is the closed form with the (4 sigma p^2 - hbar) factor multiplied through, so it
/// stays finite when 4 sigma p^2 = hbar.
double deformation_rate_closed_form(const DeformationSpec& spec, const PhysicalParams& params,
                                    double xi);

/// Specialisation for alpha = 4 sigma p^2 - 3/2 hbar:
///   3 sqrt(g/H) hbar p (4 sigma p^2 - hbar) sech^2 tanh^3.
double deformation_rate_specialized(const DeformationSpec& spec, const PhysicalParams& params,
                                    double xi);

/// alpha = 4 sigma p^2 - 3/2 hbar.
double specialized_alpha(double hbar, double p, const PhysicalParams& params);

/// sqrt(hbar/(4 sigma)), the inverse width of the steady wave with crest hbar.
double steady_inverse_width(double hbar, const PhysicalParams& params);

enum class SteepeningVerdict { steepens_in_front, flattens_in_front, steady };
const char* to_string(SteepeningVerdict verdict) noexcept;

/// steady iff p = sqrt(hbar/(4 sigma)) to 1e-12 relative; steepens_in_front iff p is smaller.
SteepeningVerdict steepening_verdict(const DeformationSpec& spec, const PhysicalParams& params);

struct SteepeningMeasurement {
  double front_slope_initial;  ///< max |h_xi| ahead of the crest at tau = 0
  double front_slope_final;
  double back_slope_initial;   ///< max |h_xi| behind the crest
  double back_slope_final;
  double duration;
  SteepeningVerdict observed;
};

/// Evolves the profile in the moving frame for `duration` and classifies the change of the
/// largest front-face slope (relative change beyond `tolerance` counts).
SteepeningMeasurement measure_steepening(const DeformationSpec& spec, const PhysicalParams& params,
                                         const PeriodicGrid& grid, double duration,
                                         double tolerance = 1e-6);

/// Max-norm of the bidirectional operator
///   h_tt - gH h_xx - gH d^2/dx^2 (3h^2/(2H) + H^2/3 h_xx)
/// evaluated with h_t = kdv_rhs(h) and h_tt its chain-ruled time derivative,
/// normalised by gH max|h_xx|. Returns 0 for a flat field.
double factorization_residual(const WaveField& field, const PhysicalParams& params,
                              DerivativeScheme scheme = DerivativeScheme::spectral);

/// Same operator with a caller-supplied h_t (e.g. a left-moving wave) and its h_tt.
double boussinesq_operator_residual(const WaveField& field, std::span<const double> ht,
                                    std::span<const double> htt, const PhysicalParams& params,
                                    DerivativeScheme scheme = DerivativeScheme::spectral);

}  // namespace longwave
