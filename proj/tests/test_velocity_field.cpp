#include <doctest.h>

#include <cmath>
#include <vector>

#include "longwave/analytic_waves.hpp"
#include "longwave/errors.hpp"
#include "longwave/evolution.hpp"
#include "longwave/velocity_field.hpp"
#include "longwave/scenarios.hpp"
#include "oracles.hpp"

using namespace longwave;

namespace {

const PhysicalParams kWater = PhysicalParams::water(1.0);

WaveField solitary(std::size_t n, double h0, double center = 0.0, double length = 160.0) {
  return solitary_field(PeriodicGrid(length, n), SolitarySpec::from(kWater, h0), center);
}

double bernoulli_spread_cnoidal(double k, double l) {
  return cnoidal_row(kWater, k, l, 256).bernoulli_spread;
}

}  // namespace

TEST_CASE("pointwise omega on a flat field") {
  const PeriodicGrid grid(10.0, 32);
  const WaveField flat(grid, std::vector<double>(32, 0.02));
  const MaskedSamples w = omega_pointwise(flat, kWater);
  const double expected = std::sqrt(9.81) * (1.0 + 0.75 * 0.02);
  CHECK(w.valid_count() == 32);
  CHECK(w.max_relative_deviation(expected) < 1e-14);
}

TEST_CASE("pointwise omega masks the whole zero field") {
  const MaskedSamples w = omega_pointwise(WaveField::zeros(PeriodicGrid(10.0, 16)), kWater);
  CHECK(w.valid_count() == 0);
  for (double v : w.values) CHECK(std::isnan(v));
  CHECK_THROWS_AS(w.median(), DegeneracyError);
}

TEST_CASE("pointwise omega is the solitary speed on the solitary profile") {
  const double h0 = 0.1;
  const double expected = std::sqrt(9.81) + 0.5 * std::sqrt(9.81) * h0;
  const MaskedSamples w = omega_pointwise(solitary(2048, h0), kWater);
  CHECK(w.valid_count() > 500);
  CHECK(w.max_relative_deviation(expected) < 1e-6);
}

TEST_CASE("pointwise omega converges at fourth order with centred differences") {
  const double h0 = 0.1;
  const double expected = std::sqrt(9.81) + 0.5 * std::sqrt(9.81) * h0;
  const double coarse =
      omega_pointwise(solitary(512, h0), kWater, DerivativeScheme::centered4).max_relative_deviation(expected);
  const double fine =
      omega_pointwise(solitary(1024, h0), kWater, DerivativeScheme::centered4).max_relative_deviation(expected);
  CHECK(coarse / fine == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("mass-flux omega on a rigidly translated solitary wave") {
  const double h0 = 0.1;
  const double L = 160.0;
  const double omega = std::sqrt(9.81) + 0.5 * std::sqrt(9.81) * h0;
  const double dt = 1e-4 * L / omega;
  WaveField before = solitary(2048, h0);
  WaveField after = solitary(2048, h0, omega * dt);
  after.t = dt;
  const MaskedSamples w = omega_from_mass_flux(before, after, kWater);
  CHECK(w.valid_count() > 500);
  CHECK(w.max_relative_deviation(omega) < 1e-4);
}

TEST_CASE("mass-flux omega vanishes for a frozen field") {
  WaveField before = solitary(256, 0.1);
  WaveField after = before;
  after.t = 0.5;
  const MaskedSamples w = omega_from_mass_flux(before, after, kWater);
  for (std::size_t j = 0; j < w.values.size(); ++j) {
    if (w.valid[j]) CHECK(std::abs(w.values[j]) < 1e-12);
  }
}

TEST_CASE("mass-flux omega rejects bad snapshot pairs") {
  const WaveField a = solitary(256, 0.1);
  WaveField b = solitary(128, 0.1);
  b.t = 1.0;
  CHECK_THROWS_AS(omega_from_mass_flux(a, b, kWater), UsageError);
  CHECK_THROWS_AS(omega_from_mass_flux(a, a, kWater), UsageError);
}

TEST_CASE("mass-flux and pointwise omega agree along a KdV run") {
  SchemeConfig scheme;
  scheme.t_end = 0.05;
  scheme.snapshot_stride = 1;
  const KdvRun run = evolve(solitary(1024, 0.1), kWater, scheme);
  REQUIRE(run.snapshots.size() >= 3);
  const WaveField& a = run.snapshots[run.snapshots.size() - 3];
  const WaveField& c = run.snapshots.back();
  const WaveField& mid = run.snapshots[run.snapshots.size() - 2];
  const MaskedSamples flux = omega_from_mass_flux(a, c, kWater);
  const MaskedSamples local = omega_pointwise(mid, kWater);
  std::vector<double> diff;
  for (std::size_t j = 0; j < flux.values.size(); ++j) {
    if (flux.valid[j] && local.valid[j]) diff.push_back(flux.values[j] - local.values[j]);
  }
  REQUIRE(!diff.empty());
  const MaskedSamples d{diff, std::vector<std::uint8_t>(diff.size(), 1)};
  CHECK(std::abs(d.median()) < 0.01 * std::sqrt(9.81));
}

TEST_CASE("mean velocity") {
  const PeriodicGrid grid(10.0, 8);
  const std::vector<double> U = mean_velocity_U(WaveField(grid, std::vector<double>(8, 0.1)), 3.3, kWater);
  for (double u : U) CHECK(u == doctest::Approx(0.3).epsilon(1e-14));
  for (double u : mean_velocity_U(WaveField::zeros(grid), 3.3, kWater)) CHECK(u == 0.0);
}

TEST_CASE("mean velocity approximation gap is cubic") {
  const PeriodicGrid grid(10.0, 8);
  auto gap = [&](double h) {
    const double omega = 3.3;
    const double exact = mean_velocity_U(WaveField(grid, std::vector<double>(8, h)), omega, kWater)[0];
    return std::abs(exact - omega * h * (1.0 - h));
  };
  for (double h : {0.2, 0.1, 0.05}) {
    const double ratio = gap(h) / gap(h / 2);
    CHECK(ratio > 8.0 / 2.0);
    CHECK(ratio < 8.0 * 2.0);
  }
}

TEST_CASE("mean velocity never exceeds omega for non-negative elevation") {
  oracle::Sampler rng(7);
  const PeriodicGrid grid(10.0, 64);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> h(64);
    for (double& v : h) v = rng.uniform(0.0, 2.0);
    const double omega = rng.uniform(0.1, 5.0);
    for (double u : mean_velocity_U(WaveField(grid, h), omega, kWater)) CHECK(u <= omega);
  }
}

TEST_CASE("mean velocity rejects a dry point") {
  const PeriodicGrid grid(10.0, 8);
  std::vector<double> h(8, 0.0);
  h[3] = -1.0;
  CHECK_THROWS_AS(mean_velocity_U(WaveField(grid, h), 3.0, kWater), DomainError);
}

TEST_CASE("Bernoulli residual of still water") {
  const BernoulliResidual b =
      bernoulli_residual(WaveField::zeros(PeriodicGrid(10.0, 16)), std::sqrt(9.81), kWater);
  CHECK(b.spread == 0.0);
}

TEST_CASE("Bernoulli spread of cnoidal waves is higher order in amplitude") {
  for (double ratio : {0.25, 0.5, 1.0}) {
    const double l = 0.1;
    const double full = bernoulli_spread_cnoidal(ratio * l, l);
    const double half = bernoulli_spread_cnoidal(ratio * l / 2, l / 2);
    CAPTURE(ratio);
    CHECK(half / full >= 1.0 / 16.0);
    CHECK(half / full <= 1.0 / 4.0);
  }
}

TEST_CASE("Bernoulli spread decreases with amplitude at fixed k/l") {
  double prev = INFINITY;
  for (double l : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    const double s = bernoulli_spread_cnoidal(0.5 * l, l);
    CHECK(s < prev);
    prev = s;
  }
}

// Spread of the Bernoulli expression on the analytic sech^2 with analytic h_xx, 50 digits.
double solitary_bernoulli_oracle(double h0) {
  using oracle::big;
  const big g = 9.81;
  const big omega = sqrt(g) * (1 + big(h0) / 2);
  const big p2 = 3 * big(h0) / 4;
  big lo = 0;
  big hi = 0;
  for (int i = 0; i <= 4000; ++i) {
    const big s2 = oracle::sech_sq(0.005 * i);
    const big h = big(h0) * s2;
    const big hxx = big(h0) * p2 * (4 * s2 - 6 * s2 * s2);
    const big U = omega * h / (1 + h);
    const big b = -omega * U + g * h + U * U / 2 + omega * omega / 3 * hxx;
    if (i == 0 || b < lo) lo = b;
    if (i == 0 || b > hi) hi = b;
  }
  return static_cast<double>(hi - lo);
}

TEST_CASE("Bernoulli spread of the solitary wave") {
  const double h0 = 0.05;
  const double omega = std::sqrt(9.81) + 0.5 * std::sqrt(9.81) * h0;
  const BernoulliResidual b = bernoulli_residual(solitary(2048, h0), omega, kWater);
  const double reference = solitary_bernoulli_oracle(h0);
  CHECK(b.spread == doctest::Approx(reference).epsilon(1e-3));
  // regression value 1.709e-3, i.e. 1.39 g h0^3 / H^2
  CHECK(b.spread <= 1.5 * 9.81 * h0 * h0 * h0);
  const double half = bernoulli_residual(solitary(2048, h0 / 2), std::sqrt(9.81) * (1.0 + h0 / 4),
                                         kWater).spread;
  CHECK(b.spread / half == doctest::Approx(8.0).epsilon(0.15));
}
