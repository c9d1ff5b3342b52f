#include "longwave/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "longwave/errors.hpp"

namespace longwave {

const char* to_string(DerivativeScheme scheme) noexcept {
  switch (scheme) {
    case DerivativeScheme::spectral:
      return "spectral";
    case DerivativeScheme::centered4:
      return "centered4";
  }
  return "unknown";
}

DerivativeScheme parse_derivative_scheme(const std::string& name) {
  if (name == "spectral") return DerivativeScheme::spectral;
  if (name == "centered4" || name == "fd4") return DerivativeScheme::centered4;
  throw UsageError("scheme.deriv must be 'spectral' or 'centered4', got '" + name + "'");
}

// FFTW planning is not thread-safe, so plans are created once per size under a
// lock. Execution goes through the new-array interface on per-thread aligned
// scratch buffers, which keeps the SIMD codelets chosen at planning time valid.
struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

namespace {

struct AlignedBuffers {
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  explicit AlignedBuffers(std::size_t n)
      : real(fftw_alloc_real(n)), cplx(fftw_alloc_complex(n / 2 + 1)) {}
  ~AlignedBuffers() {
    fftw_free(real);
    fftw_free(cplx);
  }
  AlignedBuffers(const AlignedBuffers&) = delete;
  AlignedBuffers& operator=(const AlignedBuffers&) = delete;
};

AlignedBuffers& scratch(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<AlignedBuffers>> buffers;
  auto& slot = buffers[n];
  if (!slot) slot = std::make_unique<AlignedBuffers>(n);
  return *slot;
}

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const FourierTransform::Plans> plans_for(std::size_t n) {
  static std::map<std::size_t, std::shared_ptr<const FourierTransform::Plans>> cache;
  std::lock_guard lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto plans = std::make_shared<FourierTransform::Plans>();
  AlignedBuffers buf(n);
  const int len = static_cast<int>(n);
  plans->forward = fftw_plan_dft_r2c_1d(len, buf.real, buf.cplx, FFTW_ESTIMATE);
  plans->backward = fftw_plan_dft_c2r_1d(len, buf.cplx, buf.real, FFTW_ESTIMATE);
  cache.emplace(n, plans);
  return plans;
}

}  // namespace

FourierTransform::FourierTransform(std::size_t n) : n_(n), plans_(nullptr) {
  if (n < 2 || n % 2 != 0) throw UsageError("FFT length must be even");
  plans_ = plans_for(n);
}

std::vector<std::complex<double>> FourierTransform::forward(std::span<const double> values) const {
  if (values.size() != n_) throw UsageError("FFT input has the wrong length");
  AlignedBuffers& buf = scratch(n_);
  std::copy(values.begin(), values.end(), buf.real);
  fftw_execute_dft_r2c(plans_->forward, buf.real, buf.cplx);
  std::vector<std::complex<double>> out(modes());
  const auto* c = reinterpret_cast<const std::complex<double>*>(buf.cplx);
  std::copy(c, c + modes(), out.begin());
  return out;
}

std::vector<double> FourierTransform::inverse(std::vector<std::complex<double>> coeffs) const {
  if (coeffs.size() != modes()) throw UsageError("inverse FFT input has the wrong length");
  AlignedBuffers& buf = scratch(n_);
  std::copy(coeffs.begin(), coeffs.end(), reinterpret_cast<std::complex<double>*>(buf.cplx));
  fftw_execute_dft_c2r(plans_->backward, buf.cplx, buf.real);
  std::vector<double> out(n_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = buf.real[i] * scale;
  return out;
}

namespace {

// Fourier-space multiplier (i k)^order.
std::complex<double> ik_power(double k, int order) {
  switch (order % 4) {
    case 0:
      return {std::pow(k, order), 0.0};
    case 1:
      return {0.0, std::pow(k, order)};
    case 2:
      return {-std::pow(k, order), 0.0};
    default:
      return {0.0, -std::pow(k, order)};
  }
}

}  // namespace

double mode_wavenumber(const PeriodicGrid& grid, std::size_t j) noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / grid.length();
}

Differentiator::Differentiator(const PeriodicGrid& grid, DerivativeScheme scheme)
    : grid_(grid), scheme_(scheme), fft_(grid.size()) {}

std::vector<double> Differentiator::derivative(std::span<const double> f, int order) const {
  if (order < 1 || order > 4) throw UsageError("derivative order must be 1..4");
  if (f.size() != grid_.size()) throw UsageError("derivative input has the wrong length");
  if (scheme_ == DerivativeScheme::centered4) return centered(f, order);

  auto c = fft_.forward(f);
  const std::size_t nyquist = grid_.size() / 2;
  for (std::size_t j = 0; j < c.size(); ++j) {
    c[j] = j == nyquist ? 0.0 : c[j] * ik_power(mode_wavenumber(grid_, j), order);
  }
  return fft_.inverse(std::move(c));
}

std::vector<double> Differentiator::centered(std::span<const double> f, int order) const {
  const std::size_t n = f.size();
  const double dx = grid_.dx();
  std::vector<double> out(n);
  auto at = [&](std::size_t j, long offset) {
    const long idx = static_cast<long>(j) + offset;
    const long len = static_cast<long>(n);
    return f[static_cast<std::size_t>(((idx % len) + len) % len)];
  };
  for (std::size_t j = 0; j < n; ++j) {
    switch (order) {
      case 1:
        out[j] = (at(j, -2) - 8.0 * at(j, -1) + 8.0 * at(j, 1) - at(j, 2)) / (12.0 * dx);
        break;
      case 2:
        out[j] = (-at(j, -2) + 16.0 * at(j, -1) - 30.0 * f[j] + 16.0 * at(j, 1) - at(j, 2)) /
                 (12.0 * dx * dx);
        break;
      case 3:
        out[j] = (-at(j, 3) + 8.0 * at(j, 2) - 13.0 * at(j, 1) + 13.0 * at(j, -1) -
                  8.0 * at(j, -2) + at(j, -3)) /
                 (8.0 * dx * dx * dx);
        break;
      default:
        out[j] = (-at(j, -3) + 12.0 * at(j, -2) - 39.0 * at(j, -1) + 56.0 * f[j] -
                  39.0 * at(j, 1) + 12.0 * at(j, 2) - at(j, 3)) /
                 (6.0 * dx * dx * dx * dx);
        break;
    }
  }
  return out;
}

double Differentiator::max_symbol(int order) const {
  if (order < 1 || order > 4) throw UsageError("symbol order must be 1..4");
  if (scheme_ == DerivativeScheme::spectral) {
    const double k = mode_wavenumber(grid_, grid_.size() / 2 - 1);
    return std::pow(k, order);
  }
  const double dx = grid_.dx();
  double best = 0.0;
  constexpr int kSamples = 4096;
  for (int i = 0; i <= kSamples; ++i) {
    const double th = std::numbers::pi * i / kSamples;
    const double s1 = (8.0 * std::sin(th) - std::sin(2.0 * th)) / (6.0 * dx);
    const double s2 = (-2.0 * std::cos(2.0 * th) + 32.0 * std::cos(th) - 30.0) / (12.0 * dx * dx);
    double s = 0.0;
    switch (order) {
      case 1:
        s = s1;
        break;
      case 2:
        s = s2;
        break;
      case 3:
        s = s1 * s2;
        break;
      default:
        s = s2 * s2;
        break;
    }
    best = std::max(best, std::abs(s));
  }
  return best;
}

double lowpass_filter(const PeriodicGrid& grid, std::vector<double>& f, double k_cut) {
  FourierTransform fft(grid.size());
  auto c = fft.forward(f);
  double removed = 0.0;
  const double scale = 2.0 / static_cast<double>(grid.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (mode_wavenumber(grid, j) > k_cut) {
      removed = std::max(removed, std::abs(c[j]) * scale);
      c[j] = 0.0;
    }
  }
  f = fft.inverse(std::move(c));
  return removed;
}

std::vector<double> spectral_shift(const PeriodicGrid& grid, std::span<const double> f,
                                   double shift) {
  FourierTransform fft(grid.size());
  auto c = fft.forward(f);
  const std::size_t nyquist = grid.size() / 2;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double phase = -mode_wavenumber(grid, j) * shift;
    if (j == nyquist) {
      c[j] *= std::cos(phase);
    } else {
      c[j] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return fft.inverse(std::move(c));
}

std::vector<double> periodic_antiderivative(const PeriodicGrid& grid, std::span<const double> f) {
  FourierTransform fft(grid.size());
  auto c = fft.forward(f);
  const std::size_t nyquist = grid.size() / 2;
  c[0] = 0.0;
  for (std::size_t j = 1; j < c.size(); ++j) {
    c[j] = j == nyquist ? 0.0 : c[j] / std::complex<double>(0.0, mode_wavenumber(grid, j));
  }
  return fft.inverse(std::move(c));
}

namespace {

// Value and first two derivatives of the trigonometric interpolant at x.
struct InterpolantValue {
  double f;
  double df;
  double d2f;
};

InterpolantValue evaluate_interpolant(const PeriodicGrid& grid,
                                      const std::vector<std::complex<double>>& c, double x) {
  const std::size_t n = grid.size();
  const std::size_t nyquist = n / 2;
  // Coefficients refer to samples starting at x_0 = -L/2.
  const double s = x - grid.x(0);
  InterpolantValue out{c[0].real(), 0.0, 0.0};
  for (std::size_t j = 1; j <= nyquist; ++j) {
    const double k = mode_wavenumber(grid, j);
    const double w = j == nyquist ? 1.0 : 2.0;
    const std::complex<double> e(std::cos(k * s), std::sin(k * s));
    const std::complex<double> term = c[j] * e;
    out.f += w * term.real();
    if (j != nyquist) {
      out.df += w * (term * std::complex<double>(0.0, k)).real();
      out.d2f -= w * k * k * term.real();
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.f *= inv_n;
  out.df *= inv_n;
  out.d2f *= inv_n;
  return out;
}

}  // namespace

double spectral_interpolate(const PeriodicGrid& grid, std::span<const double> f, double x) {
  FourierTransform fft(grid.size());
  return evaluate_interpolant(grid, fft.forward(f), x).f;
}

Crest locate_crest(const PeriodicGrid& grid, std::span<const double> f) {
  return locate_crest(grid, f, -grid.length(), grid.length());
}

Crest locate_crest(const PeriodicGrid& grid, std::span<const double> f, double lo, double hi) {
  if (f.size() != grid.size()) throw UsageError("locate_crest input has the wrong length");
  std::size_t best = grid.size();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    if (x < lo || x > hi) continue;
    if (best == grid.size() || f[j] > f[best]) best = j;
  }
  if (best == grid.size()) throw UsageError("locate_crest search window contains no samples");

  FourierTransform fft(grid.size());
  const auto c = fft.forward(f);
  double x = grid.x(best);
  const double dx = grid.dx();
  for (int it = 0; it < 50; ++it) {
    const auto v = evaluate_interpolant(grid, c, x);
    if (!(v.d2f < 0.0)) break;
    double step = -v.df / v.d2f;
    step = std::clamp(step, -dx, dx);
    x += step;
    if (std::abs(step) < 1e-14 * grid.length()) break;
  }
  return {x, evaluate_interpolant(grid, c, x).f};
}

}  // namespace longwave
