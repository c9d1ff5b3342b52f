#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace longwave {

/// Physical constants of the canal, SI units throughout.
class PhysicalParams {
 public:
  /// Throws UsageError unless g > 0, H > 0, rho > 0, T >= 0.
  PhysicalParams(double g, double depth, double rho, double tension);

  /// Water under standard gravity without capillarity.
  static PhysicalParams water(double depth, double tension = 0.0) {
    return {9.81, depth, 1000.0, tension};
  }

  double g() const noexcept { return g_; }
  double depth() const noexcept { return depth_; }
  double rho() const noexcept { return rho_; }
  double tension() const noexcept { return tension_; }

  /// Lagrange long-wave speed sqrt(gH).
  double linear_speed() const noexcept;

 private:
  double g_;
  double depth_;
  double rho_;
  double tension_;
};

/// Dispersion parameter sigma = H^3/3 - T H/(rho g), in m^3. May be <= 0.
double dispersion_sigma(const PhysicalParams& params);

/// Depth sqrt(3T/(rho g)) below which sigma < 0.
double critical_depth(const PhysicalParams& params);

/// Uniform periodic grid on [-L/2, L/2), x_j = -L/2 + j dx.
/// The node set is symmetric about x = 0 modulo L (j <-> N - j) and contains x = 0.
class PeriodicGrid {
 public:
  /// Throws UsageError unless length > 0 and points is even and >= 8.
  PeriodicGrid(double length, std::size_t points);

  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return points_; }
  double dx() const noexcept { return length_ / static_cast<double>(points_); }
  double x(std::size_t j) const noexcept;
  std::vector<double> coordinates() const;

  /// Largest resolved wavenumber pi/dx.
  double nyquist_wavenumber() const noexcept;

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  double length_;
  std::size_t points_;
};

/// Surface elevation h(x) above the undisturbed level at time t.
struct WaveField {
  PeriodicGrid grid;
  std::vector<double> h;
  double t = 0.0;

  /// Throws UsageError if h.size() != grid.size() or any sample is non-finite.
  WaveField(PeriodicGrid grid, std::vector<double> h, double t = 0.0);

  static WaveField zeros(const PeriodicGrid& grid, double t = 0.0);

  double max_abs() const noexcept;
};

/// Throws UsageError when two fields live on different grids.
void require_same_grid(const WaveField& a, const WaveField& b);

/// Periodic rectangle rule, dx * sum(values).
double integrate(const PeriodicGrid& grid, std::span<const double> values);

/// Reference frame of the unidirectional equation. The moving frame translates
/// at sqrt(gH) - sqrt(g/H) alpha.
struct Frame {
  enum class Kind { fixed, moving };
  Kind kind = Kind::fixed;
  double alpha = 0.0;

  static Frame fixed() { return {Kind::fixed, 0.0}; }
  static Frame moving(double alpha) { return {Kind::moving, alpha}; }
  /// Speed of the frame relative to the fixed one (0 for the fixed frame).
  double speed(const PhysicalParams& params) const;
};

}  // namespace longwave
