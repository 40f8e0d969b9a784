#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "loggas/hs.hpp"
#include "loggas/quadrature.hpp"
#include "loggas/rng.hpp"

using namespace loggas;

TEST_CASE("cutoff shape and derivative", "[hs]") {
  const double D = 1.4;
  REQUIRE(cutoff_value(D, 0.0) == 1.0);
  REQUIRE(cutoff_value(D, 0.5 * D) == 1.0);
  REQUIRE(cutoff_value(D, -0.3 * D) == 1.0);
  REQUIRE(cutoff_value(D, D) == 0.0);
  REQUIRE(cutoff_value(D, 1.7 * D) == 0.0);
  const double mid = cutoff_value(D, 0.75 * D);
  REQUIRE(mid == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(cutoff_value(D, 0.75 * D) == cutoff_value(D, -0.75 * D));
  // finite differences against cutoff_deriv across the shell
  for (double y : {0.2, 0.55 * D, 0.7 * D, 0.9 * D, -0.8 * D, 1.1 * D}) {
    const double e = 1e-6;
    const double fd = (cutoff_value(D, y + e) - cutoff_value(D, y - e)) /
                      (2.0 * e);
    REQUIRE(cutoff_deriv(D, y) == Catch::Approx(fd).margin(1e-6));
  }
}

TEST_CASE("polynomial recentering identity", "[hs]") {
  const std::vector<double> p = {1.0, -2.0, 0.5, 3.0};
  const double delta = 0.7, h = 1.3;
  const std::vector<double> q = detail::poly_shift_scale(p, delta, h);
  CounterRng rng(5);
  for (int i = 0; i < 20; ++i) {
    const double u = rng.uniform(-2.0, 2.0);
    const double t = (u - delta) / h;
    const double direct = detail::poly_eval(p, t);
    REQUIRE(detail::poly_eval(q, u) ==
            Catch::Approx(direct).margin(1e-12));
  }
}

TEST_CASE("poisson kernel moments", "[hs]") {
  const double a = -0.3, b = 1.7, y = 0.4;
  const std::vector<double> I = detail::poisson_moments(a, b, y, 6);
  for (std::size_t j = 0; j <= 6; ++j) {
    const double ref = integrate_panels(
        [&](double u) { return std::pow(u, double(j)) / (u * u + y * y); },
        a, b, 64, 16);
    REQUIRE(I[j] == Catch::Approx(ref).margin(1e-10));
  }
}

TEST_CASE("half-plane bound on a single atom", "[hs]") {
  // f is the quartic bump on [-1.5, 1.5]; the atom sits at 0.3
  const CompactPoly f = bump_poly(0.0, 1.5);
  const SignedGridMeasure m = SignedGridMeasure::make({0.3}, {1.0});
  const HsBound hb = hs_bound_check(f, 1.0, m);
  REQUIRE(hb.lhs == Catch::Approx(std::abs(f.eval(0.3))).margin(1e-14));
  REQUIRE(hb.lhs == Catch::Approx(0.884736).margin(1e-9));
  REQUIRE(hb.smoothing_term >= 0.0);
  REQUIRE(hb.boundary_term >= 0.0);
  REQUIRE(hb.lhs <= hb.rhs);
}

TEST_CASE("half-plane bound on a dipole", "[hs]") {
  const CompactPoly f = bump_poly(0.0, 1.5);
  const SignedGridMeasure m =
      SignedGridMeasure::make({0.29, 0.31}, {1.0, -1.0});
  const HsBound hb = hs_bound_check(f, 1.0, m);
  REQUIRE(hb.lhs <= hb.rhs);
  REQUIRE_THROWS_AS(hs_bound_check(f, 0.0, m), ConfigError);
}

TEST_CASE("half-plane bound over randomized measures", "[hs]") {
  CounterRng rng(123);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 5 + std::size_t(rng.uniform(0.0, 35.0));
    std::vector<double> grid(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      // stratified so the grid is strictly increasing
      const double u = 0.05 + 0.9 * rng.uniform01();
      grid[i] = -1.5 + 3.0 * (double(i) + u) / double(n);
      w[i] = rng.uniform(-1.0, 1.0);
    }
    const SignedGridMeasure m = SignedGridMeasure::make(grid, w);
    const std::vector<double> q = {rng.uniform(-1.0, 1.0),
                                   rng.uniform(-1.0, 1.0),
                                   rng.uniform(-1.0, 1.0)};
    const CompactPoly f =
        poly_bump_poly(q, rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0));
    const double D = rng.uniform(0.5, 2.0);
    const HsBound hb = hs_bound_check(f, D, m);
    REQUIRE(hb.smoothing_term >= 0.0);
    REQUIRE(hb.boundary_term >= 0.0);
    REQUIRE(hb.lhs <= hb.rhs * (1.0 + 1e-6) + 1e-12);
  }
}
