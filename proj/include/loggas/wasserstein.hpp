#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "loggas/equilibrium.hpp"
#include "loggas/gibbs.hpp"
#include "loggas/quadrature.hpp"

namespace loggas {

namespace detail {

// int_{A_i}^{min(x,B_i)} t rho(t) dt with the square-root edges absorbed
inline double partial_cut_first_moment(const EquilibriumMeasure& eqm,
                                       std::size_t i, double x) {
  const Cut& c = eqm.edges[i];
  if (x <= c.A) return 0.0;
  const double up = std::min(x, c.B);
  const double th = std::asin(std::sqrt((up - c.A) / c.length()));
  auto f = [&](double t) {
    const double s = std::sin(t), co = std::cos(t);
    const double y = c.A + c.length() * s * s;
    return y * eqm.density(y) * c.length() * 2.0 * s * co;
  };
  return integrate(f, 0.0, th, 96);
}

// int_{-inf}^{x} t rho(t) dt
inline double partial_first_moment(const EquilibriumMeasure& eqm, double x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < eqm.edges.size(); ++i) {
    if (x <= eqm.edges[i].A) break;
    acc += partial_cut_first_moment(eqm, i, x);
  }
  return acc;
}

// int_u^v F_eq(x) dx = v F(v) - u F(u) - int_u^v x rho dx
inline double cdf_integral(const EquilibriumMeasure& eqm, double u, double v) {
  return v * eqm.cdf(v) - u * eqm.cdf(u) -
         (partial_first_moment(eqm, v) - partial_first_moment(eqm, u));
}

// int_u^v |c - F_eq(x)| dx for constant c, exact up to quadrature of smooth
// integrands: F_eq is monotone so the sign changes at most once
inline double abs_cdf_gap(const EquilibriumMeasure& eqm, double u, double v,
                          double c) {
  if (v <= u) return 0.0;
  const double Fu = eqm.cdf(u), Fv = eqm.cdf(v);
  if (c <= Fu)  // F >= c throughout
    return cdf_integral(eqm, u, v) - c * (v - u);
  if (c >= Fv)  // F <= c throughout
    return c * (v - u) - cdf_integral(eqm, u, v);
  const double xs = std::clamp(eqm.quantile(c), u, v);
  return (c * (xs - u) - cdf_integral(eqm, u, xs)) +
         (cdf_integral(eqm, xs, v) - c * (v - xs));
}

}  // namespace detail

// exact 1-D Wasserstein-1 distance between the empirical measure of the
// configuration and the equilibrium measure: int |F_N - F_eq| dx. This also
// bounds the bounded-Lipschitz distance from above.
inline double wasserstein1(const ParticleConfiguration& config,
                           const EquilibriumMeasure& eqm) {
  std::vector<double> x = config.positions;
  if (x.empty()) throw ConfigError("wasserstein1: empty configuration");
  std::sort(x.begin(), x.end());
  const std::size_t N = x.size();
  const double lo = std::min(eqm.support_lo(), x.front());
  const double hi = std::max(eqm.support_hi(), x.back());
  double total = 0.0;
  double prev = lo;
  for (std::size_t k = 0; k <= N; ++k) {
    const double next = (k == N) ? hi : x[k];
    total += detail::abs_cdf_gap(eqm, prev, std::max(prev, next),
                                 double(k) / double(N));
    prev = std::max(prev, next);
  }
  return total;
}

}  // namespace loggas
