#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "loggas/equilibrium.hpp"

using namespace loggas;

namespace {

const EquilibriumMeasure& semicircle() {
  static const EquilibriumMeasure eqm =
      solve_equilibrium(quadratic_potential());
  return eqm;
}

const EquilibriumMeasure& two_cut_c2() {
  static const EquilibriumMeasure eqm = [] {
    EquilibriumOptions opt;
    opt.domain_lo = -3.2;
    opt.domain_hi = 3.2;
    return solve_equilibrium(symmetric_quartic(2.0), opt);
  }();
  return eqm;
}

}  // namespace

TEST_CASE("quadratic confinement gives the semicircle", "[equilibrium]") {
  const EquilibriumMeasure& eqm = semicircle();
  REQUIRE(eqm.n_cuts() == 1);
  REQUIRE(eqm.edges[0].A == Catch::Approx(-2.0).margin(1e-6));
  REQUIRE(eqm.edges[0].B == Catch::Approx(2.0).margin(1e-6));
  REQUIRE(eqm.filling_fractions[0] == Catch::Approx(1.0).margin(1e-9));

  const double pi = 3.14159265358979323846;
  REQUIRE(eqm.density(0.0) == Catch::Approx(1.0 / pi).margin(1e-10));
  REQUIRE(eqm.density(1.5) ==
          Catch::Approx(std::sqrt(4.0 - 2.25) / (2.0 * pi)).margin(1e-10));
  REQUIRE(eqm.density(2.5) == 0.0);
}

TEST_CASE("semicircle CDF and quantile against quadrature references",
          "[equilibrium]") {
  const EquilibriumMeasure& eqm = semicircle();
  REQUIRE(eqm.cdf(1.0) == Catch::Approx(0.80449889052211468).margin(1e-10));
  REQUIRE(eqm.cdf(-0.5) == Catch::Approx(0.34251882123714628).margin(1e-10));
  REQUIRE(eqm.quantile(0.75) ==
          Catch::Approx(0.80794550659903442).margin(1e-9));
  // quantile inverts the CDF
  for (double p : {0.05, 0.3, 0.5, 0.92})
    REQUIRE(eqm.cdf(eqm.quantile(p)) == Catch::Approx(p).margin(1e-9));
  REQUIRE(eqm.quantile(0.0) == eqm.support_lo());
  REQUIRE(eqm.quantile(1.0) == Catch::Approx(eqm.support_hi()).margin(1e-9));
}

TEST_CASE("semicircle resolvent against the closed form", "[equilibrium]") {
  const EquilibriumMeasure& eqm = semicircle();
  const cplx m3 = stieltjes(eqm, cplx(0.0, 3.0));
  REQUIRE(m3.real() == Catch::Approx(0.0).margin(1e-10));
  REQUIRE(m3.imag() == Catch::Approx(-0.30277563773199465).margin(1e-10));
  const cplx mz = stieltjes(eqm, cplx(0.5, 0.8));
  REQUIRE(mz.real() == Catch::Approx(0.15493580165338683).margin(1e-10));
  REQUIRE(mz.imag() == Catch::Approx(-0.65192072030513981).margin(1e-10));
}

TEST_CASE("resolvent identity holds off the support", "[equilibrium]") {
  const EquilibriumMeasure& eqm = semicircle();
  std::vector<cplx> pts;
  const double pi = 3.14159265358979323846;
  for (int j = 0; j < 20; ++j) {
    const double th = 2.0 * pi * (j + 0.5) / 20.0;
    pts.emplace_back(eqm.contour.center +
                         0.8 * eqm.contour.half_width * std::cos(th),
                     0.8 * eqm.contour.half_height * std::sin(th));
  }
  REQUIRE(check_rh_identity(eqm, quadratic_potential(), pts) <= 1e-8);
}

TEST_CASE("classical locations are the k/N quantiles", "[equilibrium]") {
  const EquilibriumMeasure& eqm = semicircle();
  const std::vector<double> eta = eqm.classical_locations(8);
  REQUIRE(eta.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    REQUIRE(eta[k] == eqm.quantile(double(k + 1) / 8.0));
    if (k > 0) REQUIRE(eta[k] > eta[k - 1]);
  }
  REQUIRE(eta.front() > eqm.support_lo());
  REQUIRE(eta.back() == Catch::Approx(eqm.support_hi()).margin(1e-9));
}

TEST_CASE("double-well quartic splits into two symmetric cuts",
          "[equilibrium]") {
  const EquilibriumMeasure& eqm = two_cut_c2();
  REQUIRE(eqm.n_cuts() == 2);
  const double a = std::sqrt(2.0), b = std::sqrt(6.0);
  REQUIRE(eqm.edges[0].A == Catch::Approx(-b).margin(1e-9));
  REQUIRE(eqm.edges[0].B == Catch::Approx(-a).margin(1e-9));
  REQUIRE(eqm.edges[1].A == Catch::Approx(a).margin(1e-9));
  REQUIRE(eqm.edges[1].B == Catch::Approx(b).margin(1e-9));
  REQUIRE(eqm.filling_fractions[0] == Catch::Approx(0.5).margin(1e-6));
  REQUIRE(eqm.filling_fractions[1] == Catch::Approx(0.5).margin(1e-6));

  REQUIRE(eqm.density(1.5) ==
          Catch::Approx(0.23115166652306243).margin(1e-10));
  const cplx m2 = stieltjes(eqm, cplx(0.0, 2.0));
  REQUIRE(m2.real() == Catch::Approx(0.0).margin(1e-10));
  REQUIRE(m2.imag() == Catch::Approx(-0.25403330758516623).margin(1e-9));
}

TEST_CASE("effective potential is flat on the support and higher in the gap",
          "[equilibrium]") {
  const EquilibriumMeasure& eqm = two_cut_c2();
  const Potential p = symmetric_quartic(2.0);
  std::vector<double> values;
  for (const Cut& c : eqm.edges)
    for (int k = 0; k < 9; ++k)
      values.push_back(
          effective_potential(eqm, p, c.A + c.length() * (k + 0.5) / 9.0));
  // the multiplier for this potential: reference quadrature gives -3.5
  for (double h : values) REQUIRE(h == Catch::Approx(-3.5).margin(1e-7));
  REQUIRE(effective_potential(eqm, p, 0.0) - (-3.5) > 0.1);
}

TEST_CASE("serialization round-trips and is stable", "[equilibrium]") {
  const EquilibriumMeasure& eqm = two_cut_c2();
  const std::string text = serialize(eqm);
  const EquilibriumMeasure back = deserialize_equilibrium(text);
  REQUIRE(back.edges.size() == eqm.edges.size());
  for (std::size_t i = 0; i < eqm.edges.size(); ++i) {
    REQUIRE(back.edges[i].A == eqm.edges[i].A);
    REQUIRE(back.edges[i].B == eqm.edges[i].B);
    REQUIRE(back.filling_fractions[i] == eqm.filling_fractions[i]);
    REQUIRE(back.r_samples[i] == eqm.r_samples[i]);
  }
  for (double x : {-2.3, -1.5, 1.5, 2.3})
    REQUIRE(back.density(x) == eqm.density(x));
  REQUIRE(serialize(back) == text);
  back.validate();
}

TEST_CASE("equilibrium file parser rejects malformed input", "[equilibrium]") {
  REQUIRE_THROWS_AS(deserialize_equilibrium("not-a-header 1\n"), ConfigError);
  REQUIRE_THROWS_AS(deserialize_equilibrium("loggas-eqm 1\nq 2\nedges 1 2\n"),
                    ConfigError);
  REQUIRE_THROWS_AS(
      deserialize_equilibrium("loggas-eqm 1\nq 0\nwhatever 3\n"), ConfigError);
}

TEST_CASE("single-cut view of one island", "[equilibrium]") {
  const EquilibriumMeasure& eqm = two_cut_c2();
  const EquilibriumMeasure view = cut_equilibrium_view(eqm, 1);
  REQUIRE(view.n_cuts() == 1);
  REQUIRE(view.edges[0].A == eqm.edges[1].A);
  REQUIRE(view.edges[0].B == eqm.edges[1].B);
  REQUIRE(view.filling_fractions[0] == 1.0);
  // density is the parent's, renormalized by the filling fraction
  for (double x : {1.5, 1.9, 2.3})
    REQUIRE(view.density(x) ==
            Catch::Approx(eqm.density(x) / eqm.filling_fractions[1])
                .epsilon(1e-10));
  // its classical locations coincide with the per-cut ones of the parent
  const std::vector<double> a = view.classical_locations(6);
  const std::vector<double> b = eqm.cut_classical_locations(1, 6);
  for (std::size_t k = 0; k < 6; ++k)
    REQUIRE(a[k] == Catch::Approx(b[k]).margin(1e-9));
  REQUIRE_THROWS_AS(cut_equilibrium_view(eqm, 2), ConfigError);
}
