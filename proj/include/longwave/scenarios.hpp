#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "longwave/analytic_waves.hpp"
#include "longwave/config.hpp"
#include "longwave/evolution.hpp"
#include "longwave/invariants.hpp"

namespace longwave {

struct CrestSample {
  double t;
  double position;      ///< unwrapped crest position (m)
  double height;
};

/// Follows the crest of a single travelling hump, unwrapping across the periodic seam.
class CrestTracker {
 public:
  explicit CrestTracker(const WaveField& initial);
  void observe(const WaveField& field);
  const std::vector<CrestSample>& samples() const noexcept { return samples_; }
  /// Mean speed between first and last sample.
  double mean_speed() const;

 private:
  std::vector<CrestSample> samples_;
  double length_;
};

struct SolitaryTransitResult {
  double h0;
  double speed_theory;    ///< sqrt(gH) + sqrt(g/H) h0/2
  double speed_measured;  ///< crest displacement over elapsed time
  double shape_error;     ///< max |recentred final - initial| / h0
  double tail_ratio;      ///< |h| at the domain edge over h0
  InvariantDrift drift;
  KdvRun run;
  std::vector<CrestSample> track;
};

/// One fixed-frame transit of the solitary wave (t_end = L/speed when scheme.t_end is 0).
SolitaryTransitResult solitary_transit(const PhysicalParams& params, const PeriodicGrid& grid,
                                       SchemeConfig scheme, double h0);

struct SolitonState {
  double amplitude;
  double position;
};

struct TwoSolitonResult {
  SolitonState tall_initial, short_initial;
  SolitonState tall_final, short_final;
  double tall_shift;   ///< final crest minus unperturbed translation (m), wrapped
  double short_shift;
  double tall_shape_error;   ///< windowed max error against the sech^2 of the initial amplitude, / amplitude
  double short_shape_error;
  double alpha;
  double t_end;
  KdvRun run;
};

/// Overtaking collision in the moving frame alpha = -(tall + short)/4, taller wave behind.
TwoSolitonResult two_soliton(const PhysicalParams& params, const PeriodicGrid& grid,
                             SchemeConfig scheme, double h_tall, double h_short,
                             double separation);

struct CnoidalRow {
  double k, l, m;
  double wavelength;
  double speed_boussinesq;  ///< sqrt(g(H + l - k))
  double speed_frame;       ///< sqrt(gH) + sqrt(g/H)(l - k)/2
  double ode_residual;      ///< max over 64 phases
  double bernoulli_spread;  ///< trough-based profile on a one-wavelength grid
};

CnoidalRow cnoidal_row(const PhysicalParams& params, double k, double l, std::size_t points);

struct SteepeningCase {
  double p_ratio;
  DeformationSpec spec;
  SteepeningVerdict predicted;
  SteepeningMeasurement measured;
};

/// alpha follows the specialised choice 4 sigma p^2 - 3/2 hbar.
SteepeningCase steepening_case(const PhysicalParams& params, const PeriodicGrid& grid,
                               double hbar, double p_ratio, double duration);

struct FactorizationRow {
  std::size_t points;
  double residual;
};

struct FactorizationResult {
  double h0;
  std::vector<FactorizationRow> rows;
  /// Residual of a traveling wave at speed omega in the bidirectional operator is
  /// (omega^2 - g(H + h0)) h_xx; with the unidirectional speed this leaves (h0/H)^2/4.
  double predicted_floor;
  /// Left-moving copy evaluated with its own h_t = +omega h_x and h_tt = omega^2 h_xx.
  double control_bidirectional;
  /// max |h_t - kdv_rhs(h)| / max |kdv_rhs(h)| for the left-moving copy.
  double control_unidirectional;
};

FactorizationResult factorization_study(const PhysicalParams& params, double length,
                                        const std::vector<std::size_t>& points, double h0);

struct LinearModeResult {
  double k;
  double omega_theory;
  double omega_measured;
  std::vector<double> times;
  std::vector<double> amplitude;
};

/// Single cosine mode of amplitude 1e-8 H with h_t = 0, filtered bidirectional run.
LinearModeResult boussinesq_linear_mode(const PhysicalParams& params, const PeriodicGrid& grid,
                                        std::size_t mode, double periods, double filter_cut);

struct BoussinesqSolitaryResult {
  double speed_theory;
  double speed_measured;
  double t_end;
  double initial_filter_removed;
};

/// Right-moving solitary data (h, -omega h_x) propagated over one transit.
BoussinesqSolitaryResult boussinesq_solitary(const PhysicalParams& params,
                                             const PeriodicGrid& grid, double h0, double dt,
                                             double filter_cut);

struct NoiseResult {
  double energy_drift;  ///< filtered run, relative
  std::vector<EnergySample> energy;
  bool unfiltered_blew_up;
  double blowup_time;   ///< NaN when the unfiltered run survived
  std::string blowup_message;
};

/// Uniform noise of amplitude `noise` H from a seeded Mersenne twister, h_t = 0.
std::vector<double> seeded_noise(std::size_t n, double amplitude, std::uint64_t seed);

NoiseResult boussinesq_noise(const PhysicalParams& params, const PeriodicGrid& grid,
                             double noise, std::uint64_t seed, double dt, double horizon,
                             double filter_cut);

/// Names accepted by run_scenario.
const std::vector<std::string>& scenario_names();

/// Runs a named scenario, writing CSV files and manifest.txt to output.dir.
/// Scenario defaults are applied below explicit config values. Throws UsageError
/// (unknown name or bad config), BlowUpError or IoError.
CsvHeader run_scenario(const std::string& name, Config config);

/// Manifest preamble: version, scenario and every resolved key.
CsvHeader manifest_preamble(const std::string& scenario, const Config& config);

}  // namespace longwave
