#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "loggas/fourier_energy.hpp"
#include "loggas/rng.hpp"
#include "loggas/special.hpp"

using namespace loggas;

namespace {

constexpr double kPi = 3.14159265358979323846;

// density g on [0,1], midpoint grid with M cells, weights g(x_i)/M
SignedGridMeasure density_measure(std::size_t M, double (*g)(double)) {
  std::vector<double> grid(M), w(M);
  for (std::size_t i = 0; i < M; ++i) {
    grid[i] = (double(i) + 0.5) / double(M);
    w[i] = g(grid[i]) / double(M);
  }
  return SignedGridMeasure::make(grid, w);
}

double cos_pi(double x) { return std::cos(kPi * x); }

}  // namespace

TEST_CASE("log kernel fourier coefficients", "[fourier]") {
  REQUIRE(fourier_log_coeff(0) == -1.0);
  for (int k = 1; k <= 12; ++k)
    REQUIRE(fourier_log_coeff(-k) == fourier_log_coeff(k));
  // frozen against independent high-precision quadrature
  REQUIRE(fourier_log_coeff(1) ==
          Catch::Approx(-0.58948987223608363).margin(1e-12));
  REQUIRE(fourier_log_coeff(2) ==
          Catch::Approx(-0.22570583339507016).margin(1e-12));
  REQUIRE(fourier_log_coeff(3) ==
          Catch::Approx(-0.17769774587275733).margin(1e-12));
  REQUIRE(fourier_log_coeff(10) ==
          Catch::Approx(-0.048988817115387866).margin(1e-12));
  REQUIRE(fourier_log_coeff(100) ==
          Catch::Approx(-0.0049898680869304550).margin(1e-12));
  double prev = 1.0;
  for (int k = 1; k <= 50; ++k) {
    const double r = fourier_log_coeff(k);
    REQUIRE(r < 0.0);
    REQUIRE(std::abs(r) < prev);
    prev = std::abs(r);
  }
}

TEST_CASE("energy of the cosine density", "[fourier]") {
  // E = -int int cos(pi x) cos(pi y) ln|x-y| dx dy, frozen independently
  const double frozen = 0.3868475049514081;
  const SignedGridMeasure m = density_measure(2000, cos_pi);
  const double direct = log_energy(m, EnergyMethod::direct);
  double tail = 0.0;
  const double fourier = log_energy(m, EnergyMethod::fourier, 4096, &tail);
  REQUIRE(direct == Catch::Approx(frozen).margin(1e-5));
  REQUIRE(fourier == Catch::Approx(frozen).epsilon(1e-3));
  REQUIRE(fourier == Catch::Approx(direct).epsilon(1e-3));
  REQUIRE(tail >= 0.0);
  REQUIRE(tail < 1e-4);
}

TEST_CASE("bilinear form is symmetric and Cauchy-Schwarz holds", "[fourier]") {
  const std::size_t M = 400;
  std::vector<double> grid(M), w1(M), w2(M);
  for (std::size_t i = 0; i < M; ++i) {
    grid[i] = (double(i) + 0.5) / double(M);
    w1[i] = std::cos(kPi * grid[i]) / double(M);
    w2[i] = std::sin(2.0 * kPi * grid[i]) / double(M);
  }
  const SignedGridMeasure a = SignedGridMeasure::make(grid, w1);
  const SignedGridMeasure b = SignedGridMeasure::make(grid, w2);
  const double eab = log_energy_bilinear(a, b);
  const double eba = log_energy_bilinear(b, a);
  const double eaa = log_energy_bilinear(a, a);
  const double ebb = log_energy_bilinear(b, b);
  REQUIRE(eab == Catch::Approx(eba).margin(1e-13));
  REQUIRE(eaa > 0.0);
  REQUIRE(ebb > 0.0);
  REQUIRE(eab * eab <= eaa * ebb * (1.0 + 1e-9) + 1e-9);
}

TEST_CASE("fourier route guards its hypotheses", "[fourier]") {
  // nonzero total mass: positive density
  std::vector<double> grid = {0.2, 0.5, 0.8};
  std::vector<double> pos = {0.3, 0.4, 0.3};
  const SignedGridMeasure bad = SignedGridMeasure::make(grid, pos);
  REQUIRE_THROWS_AS(log_energy(bad, EnergyMethod::fourier), ConfigError);
  std::vector<double> zero = {0.5, -1.0, 0.5};
  const SignedGridMeasure ok = SignedGridMeasure::make(grid, zero);
  REQUIRE_THROWS_AS(log_energy(ok, EnergyMethod::fourier, 8), ConfigError);
  REQUIRE_NOTHROW(log_energy(ok, EnergyMethod::fourier, 64));
}

TEST_CASE("wide measures are rescaled internally", "[fourier]") {
  // same shape stretched onto [0,3]: the affine map back into unit length
  // leaves the energy of a zero-mass measure unchanged
  const std::size_t M = 1200;
  std::vector<double> grid(M), w(M);
  for (std::size_t i = 0; i < M; ++i) {
    grid[i] = 3.0 * (double(i) + 0.5) / double(M);
    w[i] = std::cos(kPi * grid[i] / 3.0) * 3.0 / double(M);
  }
  const SignedGridMeasure m = SignedGridMeasure::make(grid, w);
  const double direct = log_energy(m, EnergyMethod::direct);
  // the affine map divides the effective frequency cutoff by the stretch
  // factor, so the truncation tail is ~10x the unit-interval case
  const double fourier = log_energy(m, EnergyMethod::fourier, 4096);
  REQUIRE(fourier == Catch::Approx(direct).epsilon(4e-3));
}

TEST_CASE("randomized zero-mass measures agree across methods", "[fourier]") {
  // smooth random densities: the fourier tail then decays like 1/K^2
  CounterRng rng(55);
  const std::size_t M = 2000;
  for (int trial = 0; trial < 6; ++trial) {
    const double a = rng.uniform(-1.0, 1.0);
    const double b = rng.uniform(-1.0, 1.0);
    const double c = rng.uniform(-1.0, 1.0);
    std::vector<double> grid(M), w(M);
    double mass = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      grid[i] = (double(i) + 0.5) / double(M);
      const double x = grid[i];
      w[i] = (a + b * x + c * x * x) / double(M);
      mass += w[i];
    }
    for (std::size_t i = 0; i < M; ++i) w[i] -= mass / double(M);
    const SignedGridMeasure m = SignedGridMeasure::make(grid, w);
    const double direct = log_energy(m, EnergyMethod::direct);
    const double fourier = log_energy(m, EnergyMethod::fourier, 4096);
    REQUIRE(fourier ==
            Catch::Approx(direct).epsilon(2e-3).margin(1e-8));
  }
}
