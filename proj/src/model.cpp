#include "longwave/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "longwave/errors.hpp"

namespace longwave {

PhysicalParams::PhysicalParams(double g, double depth, double rho, double tension)
    : g_(g), depth_(depth), rho_(rho), tension_(tension) {
  if (!(g > 0.0) || !std::isfinite(g)) throw UsageError("physical.g must be > 0");
  if (!(depth > 0.0) || !std::isfinite(depth)) throw UsageError("physical.depth must be > 0");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw UsageError("physical.rho must be > 0");
  if (!(tension >= 0.0) || !std::isfinite(tension)) throw UsageError("physical.tension must be >= 0");
}

double PhysicalParams::linear_speed() const noexcept { return std::sqrt(g_ * depth_); }

double dispersion_sigma(const PhysicalParams& params) {
  const double H = params.depth();
  return H * H * H / 3.0 - params.tension() * H / (params.rho() * params.g());
}

double critical_depth(const PhysicalParams& params) {
  return std::sqrt(3.0 * params.tension() / (params.rho() * params.g()));
}

PeriodicGrid::PeriodicGrid(double length, std::size_t points) : length_(length), points_(points) {
  if (!(length > 0.0) || !std::isfinite(length)) throw UsageError("grid.length must be > 0");
  if (points < 8 || points % 2 != 0) {
    throw UsageError("grid.points must be even and >= 8 (got " + std::to_string(points) + ")");
  }
}

double PeriodicGrid::x(std::size_t j) const noexcept {
  return -0.5 * length_ + static_cast<double>(j) * dx();
}

std::vector<double> PeriodicGrid::coordinates() const {
  std::vector<double> xs(points_);
  for (std::size_t j = 0; j < points_; ++j) xs[j] = x(j);
  return xs;
}

double PeriodicGrid::nyquist_wavenumber() const noexcept { return std::numbers::pi / dx(); }

WaveField::WaveField(PeriodicGrid grid_in, std::vector<double> h_in, double t_in)
    : grid(grid_in), h(std::move(h_in)), t(t_in) {
  if (h.size() != grid.size()) {
    throw UsageError("field has " + std::to_string(h.size()) + " samples, grid has " +
                     std::to_string(grid.size()));
  }
  if (!std::all_of(h.begin(), h.end(), [](double v) { return std::isfinite(v); })) {
    throw UsageError("field contains non-finite samples");
  }
}

WaveField WaveField::zeros(const PeriodicGrid& grid, double t) {
  return WaveField(grid, std::vector<double>(grid.size(), 0.0), t);
}

double WaveField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : h) m = std::max(m, std::abs(v));
  return m;
}

void require_same_grid(const WaveField& a, const WaveField& b) {
  if (!(a.grid == b.grid)) throw UsageError("fields are defined on different grids");
}

double integrate(const PeriodicGrid& grid, std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid.dx();
}

double Frame::speed(const PhysicalParams& params) const {
  if (kind == Kind::fixed) return 0.0;
  const double g = params.g();
  const double H = params.depth();
  return std::sqrt(g * H) - std::sqrt(g / H) * alpha;
}


}  // namespace longwave
