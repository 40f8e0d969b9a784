#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "loggas/special.hpp"

using namespace loggas;

TEST_CASE("sine integral against reference points", "[special]") {
  // mpmath mp.si at 40 digits
  const struct {
    double x, si;
  } ref[] = {
      {0.5, 0.49310741804306669},
      {1.0, 0.94608307036718301},
      {4.0, 1.7582031389490531},
      {10.0, 1.6583475942188740},
      {25.0, 1.5314825509999613},
      {100.0, 1.5622254668890563},
      {314.15926535897932, 1.5676132924282873},
      {31415.926535897932, 1.5707644958063427},
  };
  for (const auto& r : ref) {
    REQUIRE(sine_integral(r.x) == Catch::Approx(r.si).epsilon(5e-14));
    REQUIRE(sine_integral(-r.x) == Catch::Approx(-r.si).epsilon(5e-14));
  }
  REQUIRE(sine_integral(0.0) == 0.0);
}

TEST_CASE("box-averaged log kernel against brute-force quadrature", "[special]") {
  // mpmath box averages of ln|t-w| over [x-eps, x+eps]
  REQUIRE(smoothed_log_kernel(0.0, 10.0, 0.01) ==
          Catch::Approx(2.3025849263273290).epsilon(1e-13));
  REQUIRE(smoothed_log_kernel(1.0, 2.5, 0.3) ==
          Catch::Approx(0.39871688111844777).epsilon(1e-13));
  // singular case: w inside the box
  REQUIRE(smoothed_log_kernel(0.5, 0.5, 0.2) ==
          Catch::Approx(-2.6094379124341003).epsilon(1e-13));
  REQUIRE(smoothed_log_kernel(-1.2, -0.9, 0.4) ==
          Catch::Approx(-1.5999137125706467).epsilon(1e-13));
}

TEST_CASE("box average degrades gracefully as eps -> 0", "[special]") {
  // far from the singularity the average tends to the plain log
  for (double eps : {1e-3, 1e-6, 1e-9})
    REQUIRE(smoothed_log_kernel(1.0, 3.0, eps) ==
            Catch::Approx(std::log(2.0)).margin(eps));
}

TEST_CASE("xlogx continuous at zero", "[special]") {
  REQUIRE(xlogx(0.0) == 0.0);
  REQUIRE(std::abs(xlogx(1e-300)) < 1e-290);
  REQUIRE(xlogx(2.0) == Catch::Approx(2.0 * std::log(2.0)));
}

TEST_CASE("log kernel Fourier coefficients", "[special]") {
  SECTION("zeroth coefficient is exactly -1") {
    REQUIRE(fourier_log_coeff(0) == -1.0);
  }
  SECTION("parity") {
    for (long long k = 1; k <= 12; ++k)
      REQUIRE(fourier_log_coeff(k) == fourier_log_coeff(-k));
  }
  SECTION("reference values -Si(pi k)/(pi k)") {
    REQUIRE(fourier_log_coeff(1) ==
            Catch::Approx(-0.58948987223608363).epsilon(1e-12));
    REQUIRE(fourier_log_coeff(2) ==
            Catch::Approx(-0.22570583339507016).epsilon(1e-12));
    REQUIRE(fourier_log_coeff(3) ==
            Catch::Approx(-0.17769774587275733).epsilon(1e-12));
    REQUIRE(fourier_log_coeff(10) ==
            Catch::Approx(-0.048988817115387866).epsilon(1e-12));
    REQUIRE(fourier_log_coeff(100) ==
            Catch::Approx(-0.0049898680869304550).epsilon(1e-12));
  }
  SECTION("all negative, magnitude decreasing like 1/k") {
    double prev = 0.0;
    for (long long k = 1; k <= 50; ++k) {
      const double r = fourier_log_coeff(k);
      REQUIRE(r < 0.0);
      if (k > 1) REQUIRE(std::abs(r) < std::abs(prev));
      prev = r;
    }
  }
}
