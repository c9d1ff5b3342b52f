#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "longwave/model.hpp"

namespace longwave {

enum class DerivativeScheme { spectral, centered4 };

const char* to_string(DerivativeScheme scheme) noexcept;
/// Accepts "spectral" and "centered4" (alias "fd4"). Throws UsageError otherwise.
DerivativeScheme parse_derivative_scheme(const std::string& name);

/// Real-to-complex FFT of a fixed even length with the 1/N scaling folded
/// into the inverse. Plans are shared process-wide; execution is thread-safe.
class FourierTransform {
 public:
  explicit FourierTransform(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t modes() const noexcept { return n_ / 2 + 1; }

  std::vector<std::complex<double>> forward(std::span<const double> values) const;
  /// Consumes the coefficients; returns samples such that inverse(forward(f)) == f.
  std::vector<double> inverse(std::vector<std::complex<double>> coeffs) const;

  struct Plans;  // opaque, defined in the implementation

 private:
  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
};

/// Angular wavenumber of r2c mode j on the grid, 2 pi j / L.
double mode_wavenumber(const PeriodicGrid& grid, std::size_t j) noexcept;

/// Periodic derivative operator on a grid: Fourier collocation (Nyquist mode
/// zeroed for every order) or 4th-order centred differences.
class Differentiator {
 public:
  Differentiator(const PeriodicGrid& grid, DerivativeScheme scheme);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  DerivativeScheme scheme() const noexcept { return scheme_; }

  /// d^order f / dx^order for order in 1..4. Throws UsageError otherwise
  /// or when f has the wrong length.
  std::vector<double> derivative(std::span<const double> f, int order) const;
  std::vector<double> d1(std::span<const double> f) const { return derivative(f, 1); }
  std::vector<double> d2(std::span<const double> f) const { return derivative(f, 2); }

  /// Largest |symbol| of d/dx composed with the `order - 1` derivative over
  /// resolved wavenumbers; used for explicit time-step bounds.
  double max_symbol(int order) const;

 private:
  std::vector<double> centered(std::span<const double> f, int order) const;

  PeriodicGrid grid_;
  DerivativeScheme scheme_;
  FourierTransform fft_;
};

/// Zeroes every Fourier mode with |k| > k_cut. Returns the largest removed
/// coefficient magnitude (in units of f).
double lowpass_filter(const PeriodicGrid& grid, std::vector<double>& f, double k_cut);

/// Band-limited translation: returns g with g(x) = f(x - shift).
std::vector<double> spectral_shift(const PeriodicGrid& grid, std::span<const double> f,
                                   double shift);

/// Zero-mean periodic antiderivative of f - mean(f).
std::vector<double> periodic_antiderivative(const PeriodicGrid& grid, std::span<const double> f);

/// Value of the trigonometric interpolant of f at an arbitrary x.
double spectral_interpolate(const PeriodicGrid& grid, std::span<const double> f, double x);

/// Location and height of the global maximum of the trigonometric interpolant,
/// refined by Newton iteration from the best grid sample.
struct Crest {
  double position;
  double height;
};
Crest locate_crest(const PeriodicGrid& grid, std::span<const double> f);
/// Same, restricted to grid samples with x in [lo, hi] for the starting guess.
Crest locate_crest(const PeriodicGrid& grid, std::span<const double> f, double lo, double hi);

}  // namespace longwave
