#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "loggas/equilibrium.hpp"
#include "loggas/gibbs.hpp"

using namespace loggas;

namespace {

const EquilibriumMeasure& tight_quadratic_eqm() {
  static const EquilibriumMeasure eqm = [] {
    EquilibriumOptions opt;
    opt.domain_lo = -0.6;
    opt.domain_hi = 0.6;
    return solve_equilibrium(Potential{{0.0, 0.0, 50.0}, 0.0, "tight"}, opt);
  }();
  return eqm;
}

const EquilibriumMeasure& two_cut_c3() {
  static const EquilibriumMeasure eqm = [] {
    EquilibriumOptions opt;
    opt.domain_lo = -3.2;
    opt.domain_hi = 3.2;
    return solve_equilibrium(symmetric_quartic(3.0), opt);
  }();
  return eqm;
}

GibbsModel full_line_model(const Potential& p, double beta, std::size_t N) {
  GibbsModel m;
  m.potential = p;
  m.beta = beta;
  m.n_particles = N;
  m.label = p.label + "_full";
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("log weight of a free pair is the interaction alone", "[gibbs]") {
  const GibbsModel m = full_line_model(Potential{{0.0}, 0.0, "zero"}, 2.0, 2);
  REQUIRE(log_weight(m, ParticleConfiguration{{0.2, 0.7}}) ==
          Catch::Approx(2.0 * std::log(0.5)).margin(1e-14));
}

TEST_CASE("log weight of a single particle is the confinement alone",
          "[gibbs]") {
  const GibbsModel m = full_line_model(quadratic_potential(), 3.0, 1);
  // -(N beta / 2) V(x) with N = 1
  REQUIRE(log_weight(m, ParticleConfiguration{{1.2}}) ==
          Catch::Approx(-1.5 * 0.5 * 1.2 * 1.2).margin(1e-14));
}

TEST_CASE("log weight is exchangeable and rejects coincidences", "[gibbs]") {
  const GibbsModel m = full_line_model(quadratic_potential(), 2.0, 3);
  const double a = log_weight(m, ParticleConfiguration{{-0.4, 0.1, 0.9}});
  const double b = log_weight(m, ParticleConfiguration{{0.9, -0.4, 0.1}});
  REQUIRE(a == Catch::Approx(b).margin(1e-13));
  REQUIRE(log_weight(m, ParticleConfiguration{{0.1, 0.1, 0.9}}) ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("domain restriction sends outside configurations to -inf",
          "[gibbs]") {
  GibbsModel m = full_line_model(quadratic_potential(), 2.0, 2);
  m.domain = {Cut{-1.0, 1.0}};
  REQUIRE(std::isfinite(log_weight(m, ParticleConfiguration{{-0.5, 0.5}})));
  REQUIRE(log_weight(m, ParticleConfiguration{{-0.5, 1.5}}) ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("within-block interaction masks cross-block pairs", "[gibbs]") {
  GibbsModel m;
  m.potential = Potential{{0.0}, 0.0, "zero"};
  m.beta = 2.0;
  m.n_particles = 2;
  m.domain = {Cut{0.0, 0.4}, Cut{0.6, 1.0}};
  m.interaction = Interaction::within_block;
  m.validate();
  // one particle per block: no pair term at all
  REQUIRE(log_weight(m, ParticleConfiguration{{0.2, 0.8}}) ==
          Catch::Approx(0.0).margin(1e-14));
  // same block: the usual log interaction
  REQUIRE(log_weight(m, ParticleConfiguration{{0.2, 0.3}}) ==
          Catch::Approx(2.0 * std::log(0.1)).margin(1e-13));
}

TEST_CASE("one-cut decomposition is the restriction, exactly", "[gibbs]") {
  const EquilibriumMeasure& eqm = tight_quadratic_eqm();
  const Potential p{{0.0, 0.0, 50.0}, 0.0, "tight"};
  REQUIRE(eqm.n_cuts() == 1);
  REQUIRE(eqm.edges[0].A == Catch::Approx(-0.2).margin(1e-4));
  REQUIRE(eqm.edges[0].B == Catch::Approx(0.2).margin(1e-4));

  const GibbsModel dec = build_decomposed_model(eqm, p, 2.0, 8, 0.05);
  const GibbsModel full = full_line_model(p, 2.0, 8);
  // no second block: the external correction and the constant vanish
  REQUIRE(dec.constant_term == 0.0);
  for (double x : {-0.2, -0.05, 0.1, 0.22})
    REQUIRE(dec.extra(x) == Catch::Approx(0.0).margin(1e-12));
  ParticleConfiguration c;
  for (int i = 0; i < 8; ++i) c.positions.push_back(-0.18 + 0.05 * i);
  REQUIRE(delta_H(full, dec, c) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("block margin rules", "[gibbs]") {
  const EquilibriumMeasure& eqm = two_cut_c3();
  // gap = 4: margin must stay below gap/100
  REQUIRE_THROWS_AS(check_kappa(eqm, 0.05), ConfigError);
  REQUIRE_THROWS_AS(check_kappa(eqm, 0.0), ConfigError);
  REQUIRE_THROWS_AS(check_kappa(eqm, 0.2), ConfigError);
  REQUIRE_NOTHROW(check_kappa(eqm, 0.035));
  REQUIRE_NOTHROW(check_kappa(eqm, default_kappa(eqm)));

  const std::vector<Cut> blocks = blocks_of(eqm, 0.03);
  REQUIRE(blocks.size() == 2);
  REQUIRE(blocks[0].A == Catch::Approx(eqm.edges[0].A - 0.015).margin(1e-12));
  REQUIRE(blocks[1].B == Catch::Approx(eqm.edges[1].B + 0.015).margin(1e-12));
}

TEST_CASE("external correction mirrors with the symmetric potential",
          "[gibbs]") {
  const EquilibriumMeasure& eqm = two_cut_c3();
  const GibbsModel dec =
      build_decomposed_model(eqm, symmetric_quartic(3.0), 2.0, 16, 0.035);
  REQUIRE(dec.external_extra.size() == 2);
  for (double x : {2.05, 2.3, 2.6, 2.8})
    REQUIRE(dec.extra(x) == Catch::Approx(dec.extra(-x)).margin(1e-9));
  // the correction is a genuine attraction toward the other block: negative
  // of twice the log potential of a positive measure at distance > 1 means
  // extra < 0 here (ln|x-y| > 0 across the gap)
  REQUIRE(dec.extra(2.3) < 0.0);
}

TEST_CASE("cross-block energy against independent 2-D quadrature", "[gibbs]") {
  EquilibriumOptions opt;
  opt.domain_lo = -3.2;
  opt.domain_hi = 3.2;
  const EquilibriumMeasure eqm = solve_equilibrium(symmetric_quartic(2.0), opt);
  // mpmath double integral of rho(x) rho(y) ln|x-y| over the two cut pairs
  REQUIRE(detail::cross_cut_energy(eqm) ==
          Catch::Approx(0.68695564717637292).margin(1e-8));
}

TEST_CASE("Hamiltonian gap two-path identity", "[gibbs]") {
  const EquilibriumMeasure& eqm = two_cut_c3();
  const Potential p = symmetric_quartic(3.0);
  const std::size_t N = 16;
  const GibbsModel dec = build_decomposed_model(eqm, p, 2.0, N, 0.035);
  const GibbsModel full = full_line_model(p, 2.0, N);

  ParticleConfiguration c;
  for (double x : eqm.cut_classical_locations(0, 8)) c.positions.push_back(x);
  for (double x : eqm.cut_classical_locations(1, 8)) c.positions.push_back(x);

  const double dh = delta_H(full, dec, c);
  // independent route: cross-pair interactions, the reconstructed external
  // term, and the constant
  double cross = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if ((i < 8) != (j < 8))
        cross += std::log(std::abs(c.positions[i] - c.positions[j]));
  double vstar = 0.0;
  for (double x : c.positions) vstar += -0.5 * dec.extra(x);
  const double direct = cross / double(N) - vstar + dec.constant_term;
  REQUIRE(dh == Catch::Approx(direct).margin(1e-10));

  REQUIRE_THROWS_AS(
      delta_H(full, dec, ParticleConfiguration{{0.0}}), ConfigError);
}

TEST_CASE("single-cut law rescales the confinement", "[gibbs]") {
  const EquilibriumMeasure& eqm = two_cut_c3();
  const Potential p = symmetric_quartic(3.0);
  const GibbsModel cut = build_cut_model(eqm, p, 2.0, 1, 8, 1.0);
  // c / R_1 = 1 / 0.5 = 2 multiplies every coefficient
  for (std::size_t k = 0; k < p.coefficients.size(); ++k)
    REQUIRE(cut.potential.coefficients[k] ==
            Catch::Approx(2.0 * p.coefficients[k]).epsilon(1e-9).margin(1e-12));
  REQUIRE(cut.domain.size() == 1);
  REQUIRE(cut.domain[0].A < eqm.edges[1].A);
  REQUIRE(cut.domain[0].B > eqm.edges[1].B);
  REQUIRE(cut.n_particles == 8);
  REQUIRE(cut.interaction == Interaction::full);
  ParticleConfiguration cc{eqm.cut_classical_locations(1, 8)};
  REQUIRE(std::isfinite(log_weight(cut, cc)));
}

TEST_CASE("model identity text and hash", "[gibbs]") {
  const GibbsModel a = full_line_model(quadratic_potential(), 2.0, 16);
  const GibbsModel b = full_line_model(quadratic_potential(), 2.0, 16);
  GibbsModel c = full_line_model(quadratic_potential(), 2.0, 16);
  c.beta = 4.0;
  REQUIRE(a.canonical_text() == b.canonical_text());
  REQUIRE(a.hash() == b.hash());
  REQUIRE(a.hash() != c.hash());
}

TEST_CASE("model validation rejects malformed block lists", "[gibbs]") {
  GibbsModel m = full_line_model(quadratic_potential(), 2.0, 4);
  m.domain = {Cut{0.0, 1.0}, Cut{0.5, 2.0}};
  REQUIRE_THROWS_AS(m.validate(), ConfigError);
  m.domain = {Cut{1.0, 1.0}};
  REQUIRE_THROWS_AS(m.validate(), ConfigError);
}
