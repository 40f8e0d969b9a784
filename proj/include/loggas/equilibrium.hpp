#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "loggas/errors.hpp"
#include "loggas/grid_minimizer.hpp"
#include "loggas/measures.hpp"
#include "loggas/potential.hpp"
#include "loggas/quadrature.hpp"
#include "loggas/serialize.hpp"
#include "loggas/series.hpp"

namespace loggas {

using cplx = std::complex<double>;

struct Cut {
  double A = 0.0, B = 0.0;
  double length() const { return B - A; }
};

// sqrt((z-A)(z-B)) on the branch that behaves like z at infinity: the product
// of principal square roots sqrt(z-A)*sqrt(z-B). Taking the principal root of
// the product instead would put a spurious cut on the imaginary axis.
inline cplx edge_sqrt(cplx z, const Cut& c) {
  return std::sqrt(z - c.A) * std::sqrt(z - c.B);
}

inline cplx edge_sqrt_all(cplx z, const std::vector<Cut>& cuts) {
  cplx acc(1.0, 0.0);
  for (const Cut& c : cuts) acc *= edge_sqrt(z, c);
  return acc;
}

struct ContourSpec {
  double center = 0.0;       // real midpoint of the rectangle
  double half_width = 0.0;   // horizontal half extent
  double half_height = 0.0;  // vertical half extent
  int nodes = 1024;          // quadrature points around the full rectangle

  bool strictly_inside(cplx z, double margin = 0.0) const {
    return std::abs(z.real() - center) < half_width - margin &&
           std::abs(z.imag()) < half_height - margin;
  }
};

namespace detail {

// second-kind Chebyshev points on [A,B], endpoints included, ascending
inline std::vector<double> chebyshev_points(const Cut& c, std::size_t n) {
  std::vector<double> xs(n);
  const double mid = 0.5 * (c.A + c.B), half = 0.5 * (c.B - c.A);
  for (std::size_t m = 0; m < n; ++m)
    xs[m] = mid - half * std::cos(3.14159265358979323846 * double(m) /
                                  double(n - 1));
  return xs;
}

// barycentric interpolation on second-kind Chebyshev points
inline double chebyshev_interp(const Cut& c, const std::vector<double>& vals,
                               double x) {
  const std::size_t n = vals.size();
  const std::vector<double> xs = chebyshev_points(c, n);
  double num = 0.0, den = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double dx = x - xs[m];
    if (dx == 0.0) return vals[m];
    double wgt = (m % 2 == 0 ? 1.0 : -1.0);
    if (m == 0 || m + 1 == n) wgt *= 0.5;
    const double t = wgt / dx;
    num += t * vals[m];
    den += t;
  }
  return num / den;
}

}  // namespace detail

// Multi-cut equilibrium measure in square-root form: density
// rho(x) = (i/2pi) r(x) prod_j sqrt(x-A_j) sqrt(x-B_j) on the support,
// with r held as Chebyshev samples per cut for evaluation.
struct EquilibriumMeasure {
  std::vector<Cut> edges;
  std::vector<std::vector<double>> r_samples;  // per cut, Chebyshev values
  ContourSpec contour;
  std::vector<double> filling_fractions;
  DiscreteMeasure grid_fallback;

  std::size_t n_cuts() const { return edges.size(); }
  double support_lo() const { return edges.front().A; }
  double support_hi() const { return edges.back().B; }

  // index of the cut containing x, or npos
  std::size_t cut_index(double x) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (x >= edges[i].A && x <= edges[i].B) return i;
    return std::size_t(-1);
  }

  double r_at(std::size_t cut, double x) const {
    return detail::chebyshev_interp(edges[cut], r_samples[cut], x);
  }

  double density(double x) const {
    const std::size_t ci = cut_index(x);
    if (ci == std::size_t(-1)) return 0.0;
    const cplx val = cplx(0.0, 1.0 / (2.0 * 3.14159265358979323846)) *
                     r_at(ci, x) * edge_sqrt_all(cplx(x, 0.0), edges);
    return val.real();
  }

  // mass of cut i below x (x inside cut i), square-root edges absorbed
  double partial_cut_mass(std::size_t i, double x) const {
    const Cut& c = edges[i];
    if (x <= c.A) return 0.0;
    if (x >= c.B) return filling_fractions[i];
    const double th_x = std::asin(std::sqrt((x - c.A) / c.length()));
    auto f = [&](double th) {
      const double s = std::sin(th), co = std::cos(th);
      const double y = c.A + c.length() * s * s;
      return density(y) * c.length() * 2.0 * s * co;
    };
    return integrate(f, 0.0, th_x, 96);
  }

  double cdf(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (x >= edges[i].B)
        acc += filling_fractions[i];
      else if (x > edges[i].A)
        return acc + partial_cut_mass(i, x);
      else
        break;
    }
    return std::min(acc, 1.0);
  }

  // inf{x : cdf(x) >= p}; plateaus resolve to their left edge, p = 0 to A_1
  double quantile(double p) const {
    if (p < 0.0 || p > 1.0) throw ConfigError("quantile: p outside [0,1]");
    if (p <= 0.0) return support_lo();
    double below = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const double Ri = filling_fractions[i];
      // slack covers quadrature noise in the fractions so that p landing on a
      // plateau resolves to the cut on its left
      if (p <= below + Ri + 1e-9) {
        const double target = std::min(std::max(p - below, 0.0), Ri);
        return cut_quantile(i, target);
      }
      below += Ri;
    }
    return support_hi();
  }

  // x in cut i with mass(A_i, x) = target; bisection with Newton polish
  double cut_quantile(std::size_t i, double target) const {
    const Cut& c = edges[i];
    if (target <= 0.0) return c.A;
    if (target >= filling_fractions[i]) return c.B;
    double lo = c.A, hi = c.B;
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (partial_cut_mass(i, mid) < target)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-12 * std::max(1.0, std::abs(c.B))) break;
      if (k >= 20 && hi - lo < 1e-4 * c.length()) {
        // Newton from the bracket midpoint, fall back to bisection on escape
        double x = 0.5 * (lo + hi);
        for (int n = 0; n < 30; ++n) {
          const double f = partial_cut_mass(i, x) - target;
          const double d = density(x);
          if (d <= 0.0) break;
          const double step = f / d;
          const double xn = x - step;
          if (xn <= lo || xn >= hi) break;
          x = xn;
          if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) break;
        }
        return x;
      }
    }
    return 0.5 * (lo + hi);
  }

  std::vector<double> classical_locations(std::size_t N) const {
    std::vector<double> eta(N);
    for (std::size_t k = 1; k <= N; ++k)
      eta[k - 1] = quantile(double(k) / double(N));
    return eta;
  }

  // per-cut classical locations: mass (A_i, theta_k) = (k/n) R_i
  std::vector<double> cut_classical_locations(std::size_t i,
                                              std::size_t n) const {
    if (i >= edges.size()) throw ConfigError("cut_classical_locations: bad cut");
    std::vector<double> th(n);
    for (std::size_t k = 1; k <= n; ++k)
      th[k - 1] =
          cut_quantile(i, filling_fractions[i] * double(k) / double(n));
    return th;
  }

  void validate() const {
    if (edges.empty()) throw NumericError("EquilibriumMeasure: no cuts");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!(edges[i].A < edges[i].B))
        throw NumericError("EquilibriumMeasure: empty cut");
      if (i > 0 && !(edges[i - 1].B < edges[i].A))
        throw NumericError("EquilibriumMeasure: cuts out of order");
    }
    double mass = 0.0;
    for (double R : filling_fractions) mass += R;
    if (std::abs(mass - 1.0) > 1e-10)
      throw NumericError("EquilibriumMeasure: filling fractions sum to " +
                         fmt_double(mass));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Cut& c = edges[i];
      for (int k = 0; k <= 40; ++k) {
        const double x = c.A + (c.B - c.A) * double(k) / 40.0;
        if (density(x) < -1e-10)
          throw NumericError("EquilibriumMeasure: negative density at " +
                             fmt_double(x));
      }
      if (std::abs(density(c.A)) > 1e-6 || std::abs(density(c.B)) > 1e-6)
        throw NumericError("EquilibriumMeasure: density not vanishing at edges");
    }
  }
};

namespace detail {

// Laurent data of the edge condition system. With S(z) = prod_j s_j(z) and
// F(z) = -V'(z)/S(z) expanded at infinity in w = 1/z, the resolvent identity
// requires coefficient w^k of F to vanish for k = 1..q, to equal -2 at
// k = q+1, and the polynomial part of F is the density factor r(z).
struct EdgeSystem {
  std::vector<double> F;      // F[k] = coefficient of w^k, k = 0..order
  std::vector<double> r_poly;  // r(z) coefficients, ascending
};

inline EdgeSystem edge_system(const Potential& p, const std::vector<Cut>& cuts) {
  const std::vector<double> vprime = poly_derivative(p.coefficients);
  const std::size_t d1 = vprime.size() - 1;  // degree of V'
  const std::size_t q = cuts.size();
  const std::size_t order = d1 + q + 3;

  std::vector<double> U{1.0};
  for (const Cut& c : cuts) {
    // (1 - A w)(1 - B w) = 1 - (A+B) w + AB w^2
    const std::vector<double> quad{1.0, -(c.A + c.B), c.A * c.B};
    U = series::mul(U, series::sqrt1(quad, order), order);
  }
  const std::vector<double> T = series::inv1(U, order);

  EdgeSystem sys;
  sys.F.assign(order + 1, 0.0);
  // F(z) = -sum_m vprime[m] w^{q-m} T(w); coefficient of w^k picks T[k-q+m]
  for (std::size_t k = 0; k <= order; ++k) {
    double acc = 0.0;
    for (std::size_t m = 0; m <= d1; ++m) {
      const long long idx = (long long)k - (long long)q + (long long)m;
      if (idx >= 0 && idx <= (long long)order) acc -= vprime[m] * T[idx];
    }
    sys.F[k] = acc;
  }
  // polynomial part: coefficient of w^{-j} = z^j, j = 0..d1-q
  if (d1 >= q) {
    sys.r_poly.assign(d1 - q + 1, 0.0);
    for (std::size_t j = 0; j + q <= d1; ++j) {
      double acc = 0.0;
      for (std::size_t m = q + j; m <= d1; ++m) {
        const std::size_t idx = m - q - j;
        if (idx < T.size()) acc -= vprime[m] * T[idx];
      }
      sys.r_poly[j] = acc;
    }
  } else {
    sys.r_poly.assign(1, 0.0);
  }
  return sys;
}

// residual vector: q moment conditions, one normalization, q-1 gap conditions
inline Eigen::VectorXd edge_residual(const Potential& p,
                                     const std::vector<Cut>& cuts) {
  const std::size_t q = cuts.size();
  const EdgeSystem sys = edge_system(p, cuts);
  Eigen::VectorXd R(2 * (long)q);
  for (std::size_t k = 1; k <= q; ++k) R[(long)k - 1] = sys.F[k];
  R[(long)q - 1 + 1] = sys.F[q + 1] + 2.0;
  // equal effective-potential constants across consecutive cuts: the
  // derivative of the effective potential on a gap is -r(x) S(x), so its
  // integral over each gap must vanish
  for (std::size_t i = 0; i + 1 < q; ++i) {
    auto integrand = [&](double x) {
      const double r = poly_eval(sys.r_poly, x);
      const cplx S = edge_sqrt_all(cplx(x, 0.0), cuts);
      return r * S.real();
    };
    R[(long)(q + 1 + i)] =
        integrate_sqrt_edges(integrand, cuts[i].B, cuts[i + 1].A, 96);
  }
  return R;
}

inline std::vector<Cut> to_cuts(const Eigen::VectorXd& e) {
  std::vector<Cut> cuts(std::size_t(e.size()) / 2);
  for (std::size_t i = 0; i < cuts.size(); ++i)
    cuts[i] = Cut{e[(long)(2 * i)], e[(long)(2 * i + 1)]};
  return cuts;
}

inline bool edges_valid(const Eigen::VectorXd& e) {
  for (long i = 0; i + 1 < e.size(); ++i)
    if (!(e[i] < e[i + 1])) return false;
  for (long i = 0; i + 1 < e.size(); i += 2)
    if (e[i + 1] - e[i] < 1e-8) return false;
  return true;
}

}  // namespace detail

// Damped Newton iteration on the edge equations, seeded from bracketing
// intervals (typically grid-oracle support clusters).
inline std::vector<Cut> solve_edges(const Potential& p,
                                    const std::vector<Cut>& init,
                                    double tol = 1e-12, int max_iter = 200) {
  const std::size_t q = init.size();
  if (q == 0) throw ConfigError("solve_edges: empty init");
  Eigen::VectorXd e(2 * (long)q);
  for (std::size_t i = 0; i < q; ++i) {
    e[(long)(2 * i)] = init[i].A;
    e[(long)(2 * i + 1)] = init[i].B;
  }
  if (!detail::edges_valid(e)) throw ConfigError("solve_edges: invalid init");

  Eigen::VectorXd R = detail::edge_residual(p, detail::to_cuts(e));
  for (int it = 0; it < max_iter; ++it) {
    if (R.lpNorm<Eigen::Infinity>() <= tol) return detail::to_cuts(e);
    // finite-difference Jacobian
    const long n = e.size();
    Eigen::MatrixXd J(n, n);
    for (long j = 0; j < n; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(e[j]));
      Eigen::VectorXd ep = e, em = e;
      ep[j] += h;
      em[j] -= h;
      if (!detail::edges_valid(ep) || !detail::edges_valid(em)) {
        ep = e;
        em = e;
        ep[j] += h;  // one-sided fallback
        J.col(j) = (detail::edge_residual(p, detail::to_cuts(ep)) - R) / h;
        continue;
      }
      J.col(j) = (detail::edge_residual(p, detail::to_cuts(ep)) -
                  detail::edge_residual(p, detail::to_cuts(em))) /
                 (2.0 * h);
    }
    const Eigen::VectorXd step = J.partialPivLu().solve(-R);
    bool accepted = false;
    for (double lam = 1.0; lam >= 1e-4; lam *= 0.5) {
      const Eigen::VectorXd en = e + lam * step;
      if (!detail::edges_valid(en)) continue;
      const Eigen::VectorXd Rn = detail::edge_residual(p, detail::to_cuts(en));
      if (Rn.norm() < R.norm() * (1.0 - 1e-4 * lam) || Rn.norm() <= tol) {
        e = en;
        R = Rn;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw NumericError("solve_edges: stalled at residual " +
                         fmt_double(R.lpNorm<Eigen::Infinity>()));
  }
  throw NumericError("solve_edges: no convergence, residual " +
                     fmt_double(R.lpNorm<Eigen::Infinity>()));
}

// r(z) by trapezoidal quadrature of the contour representation
// (i/2pi) oint V'(xi) / (S(xi)(xi - z)) dxi over a positively oriented
// rectangle enclosing the support and z; spectrally accurate since the
// integrand is analytic in a neighborhood of the contour.
inline cplx r_value(const EquilibriumMeasure& eqm, const Potential& p, cplx z,
                    int nodes_override = 0) {
  const ContourSpec& C = eqm.contour;
  if (!C.strictly_inside(z, 1e-9))
    throw ConfigError("r_value: z outside the contour rectangle");
  const int n = nodes_override > 0 ? nodes_override : C.nodes;
  // corners, positively oriented
  const cplx c1(C.center - C.half_width, -C.half_height);
  const cplx c2(C.center + C.half_width, -C.half_height);
  const cplx c3(C.center + C.half_width, C.half_height);
  const cplx c4(C.center - C.half_width, C.half_height);
  const cplx corners[5] = {c1, c2, c3, c4, c1};
  // Gauss-Legendre on each side: the integrand is analytic along every side,
  // so the error decays exponentially in nodes-per-side (the corners would
  // ruin a single periodic trapezoid rule)
  const int m = std::max(16, n / 4);
  const QuadRule& rule = gauss_legendre(m);
  cplx acc(0.0, 0.0);
  for (int side = 0; side < 4; ++side) {
    const cplx a = corners[side], b = corners[side + 1];
    const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int k = 0; k < m; ++k) {
      const cplx xi = mid + half * rule.nodes[std::size_t(k)];
      acc += rule.weights[std::size_t(k)] * half * p.deriv_complex(xi) /
             edge_sqrt_all(xi, eqm.edges) / (xi - z);
    }
  }
  return cplx(0.0, 1.0) / (2.0 * 3.14159265358979323846) * acc;
}

// Stieltjes transform int rho(t)/(z-t) dt by per-cut quadrature with panels
// refined toward z when it sits close to the support
inline cplx stieltjes(const EquilibriumMeasure& eqm, cplx z) {
  double dist = 1e300;
  for (const Cut& c : eqm.edges) {
    const double dx =
        std::max({0.0, c.A - z.real(), z.real() - c.B});
    dist = std::min(dist, std::hypot(dx, z.imag()));
  }
  if (dist < 1e-12) throw NumericError("stieltjes: z on the support");

  cplx total(0.0, 0.0);
  for (const Cut& c : eqm.edges) {
    // integrate in the sin^2 angle; split panels until each is well separated
    // from z relative to its own width
    struct Panel {
      double a, b;
    };
    std::vector<Panel> stack{{0.0, 1.5707963267948966192313217}};
    int guard = 0;
    auto y_of = [&](double th) {
      const double s = std::sin(th);
      return c.A + c.length() * s * s;
    };
    while (!stack.empty()) {
      if (++guard > 100000)
        throw NumericError("stieltjes: panel subdivision runaway");
      const Panel pan = stack.back();
      stack.pop_back();
      const double ya = y_of(pan.a), yb = y_of(pan.b);
      const double dx = std::max({0.0, ya - z.real(), z.real() - yb});
      const double dz = std::hypot(dx, z.imag());
      if (dz > 0.6 * (yb - ya) || pan.b - pan.a < 1e-8) {
        auto f = [&](double th) {
          const double s = std::sin(th), co = std::cos(th);
          const double y = c.A + c.length() * s * s;
          return eqm.density(y) * c.length() * 2.0 * s * co / (z - y);
        };
        total += integrate(f, pan.a, pan.b, 24);
      } else {
        const double mid = 0.5 * (pan.a + pan.b);
        stack.push_back({pan.a, mid});
        stack.push_back({mid, pan.b});
      }
    }
  }
  return total;
}

// effective potential H(x) = V(x) - 2 int ln|x-y| rho(y) dy
inline double effective_potential(const EquilibriumMeasure& eqm,
                                  const Potential& p, double x) {
  double logint = 0.0;
  for (std::size_t i = 0; i < eqm.edges.size(); ++i) {
    const Cut& c = eqm.edges[i];
    logint += integrate_log_singular(
        [&](double y) { return eqm.density(y); }, c.A, c.B, x);
  }
  return p.eval(x) - 2.0 * logint;
}

// max |2 m(z) - V'(z) - r(z) S(z)| over the given points; r from the contour
// integral, m from density quadrature: the two sides are computed through
// independent routes
inline double check_rh_identity(const EquilibriumMeasure& eqm,
                                const Potential& p,
                                const std::vector<cplx>& test_points) {
  double worst = 0.0;
  for (cplx z : test_points) {
    const cplx lhs = 2.0 * stieltjes(eqm, z) - p.deriv_complex(z);
    const cplx rhs = r_value(eqm, p, z) * edge_sqrt_all(z, eqm.edges);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

struct EquilibriumOptions {
  double domain_lo = -3.5, domain_hi = 3.5;  // oracle scan window
  std::size_t grid_m = 400;
  double kkt_tol = 1e-4;
  std::size_t cheb_nodes = 64;
  int contour_nodes = 1024;
  double newton_tol = 1e-12;
};

// full pipeline: oracle minimization -> cluster detection -> Newton edges ->
// density factor samples and filling fractions
inline EquilibriumMeasure solve_equilibrium(const Potential& p,
                                            const EquilibriumOptions& opt = {}) {
  GridMinimizeResult oracle = minimize_energy_on_grid(
      p, opt.domain_lo, opt.domain_hi, opt.grid_m, opt.kkt_tol);
  const DiscreteMeasure& dm = oracle.measure;
  const std::vector<ClusterSpan> spans = support_clusters(dm);
  if (spans.empty())
    throw NumericError("solve_equilibrium: oracle support empty");

  std::vector<Cut> init;
  for (const ClusterSpan& s : spans)
    init.push_back(Cut{dm.grid[s.lo] - dm.cell_eps[s.lo],
                       dm.grid[s.hi] + dm.cell_eps[s.hi]});
  const std::vector<Cut> cuts = solve_edges(p, init, opt.newton_tol);

  EquilibriumMeasure eqm;
  eqm.edges = cuts;
  eqm.grid_fallback = dm;

  const detail::EdgeSystem sys = detail::edge_system(p, cuts);
  eqm.r_samples.resize(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const std::vector<double> xs =
        detail::chebyshev_points(cuts[i], opt.cheb_nodes);
    eqm.r_samples[i].resize(xs.size());
    for (std::size_t m = 0; m < xs.size(); ++m)
      eqm.r_samples[i][m] = detail::poly_eval(sys.r_poly, xs[m]);
  }

  const double span_lo = cuts.front().A, span_hi = cuts.back().B;
  const double span = span_hi - span_lo;
  eqm.contour.center = 0.5 * (span_lo + span_hi);
  eqm.contour.half_width = 0.5 * span + std::max(2.0, 0.75 * span);
  eqm.contour.half_height = std::max(2.5, 0.75 * span);
  eqm.contour.nodes = opt.contour_nodes;

  eqm.filling_fractions.assign(cuts.size(), 0.0);
  for (std::size_t i = 0; i < cuts.size(); ++i)
    eqm.filling_fractions[i] = integrate_sqrt_edges(
        [&](double x) { return eqm.density(x); }, cuts[i].A, cuts[i].B, 128);
  eqm.validate();
  return eqm;
}

// ---- serialization: versioned structured text, value-exact round trip ----

inline std::string serialize(const EquilibriumMeasure& eqm) {
  std::ostringstream os;
  os << "loggas-eqm 1\n";
  os << "q " << eqm.edges.size() << "\n";
  std::vector<double> ev;
  for (const Cut& c : eqm.edges) {
    ev.push_back(c.A);
    ev.push_back(c.B);
  }
  os << "edges " << fmt_doubles(ev) << "\n";
  os << "filling " << fmt_doubles(eqm.filling_fractions) << "\n";
  os << "contour " << fmt_double(eqm.contour.center) << ' '
     << fmt_double(eqm.contour.half_width) << ' '
     << fmt_double(eqm.contour.half_height) << ' ' << eqm.contour.nodes
     << "\n";
  for (std::size_t i = 0; i < eqm.r_samples.size(); ++i)
    os << "r_samples " << i << ' ' << fmt_doubles(eqm.r_samples[i]) << "\n";
  os << "grid_nodes " << fmt_doubles(eqm.grid_fallback.grid) << "\n";
  os << "grid_weights " << fmt_doubles(eqm.grid_fallback.weights) << "\n";
  os << "grid_eps " << fmt_doubles(eqm.grid_fallback.cell_eps) << "\n";
  return os.str();
}

inline EquilibriumMeasure deserialize_equilibrium(const std::string& body) {
  std::istringstream is(body);
  std::string line;
  if (!std::getline(is, line) || split_ws(line) !=
      std::vector<std::string>{"loggas-eqm", "1"})
    throw ConfigError("equilibrium file: bad header");
  EquilibriumMeasure eqm;
  std::size_t q = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> toks = split_ws(line);
    if (toks[0] == "q") {
      q = std::size_t(std::stoul(toks[1]));
    } else if (toks[0] == "edges") {
      const std::vector<double> v = parse_doubles(line, 1);
      if (v.size() != 2 * q) throw ConfigError("equilibrium file: edge count");
      for (std::size_t i = 0; i < q; ++i)
        eqm.edges.push_back(Cut{v[2 * i], v[2 * i + 1]});
    } else if (toks[0] == "filling") {
      eqm.filling_fractions = parse_doubles(line, 1);
    } else if (toks[0] == "contour") {
      const std::vector<double> v = parse_doubles(line, 1);
      if (v.size() != 4) throw ConfigError("equilibrium file: contour fields");
      eqm.contour = ContourSpec{v[0], v[1], v[2], int(v[3])};
    } else if (toks[0] == "r_samples") {
      eqm.r_samples.push_back(parse_doubles(line, 2));
    } else if (toks[0] == "grid_nodes") {
      eqm.grid_fallback.grid = parse_doubles(line, 1);
    } else if (toks[0] == "grid_weights") {
      eqm.grid_fallback.weights = parse_doubles(line, 1);
    } else if (toks[0] == "grid_eps") {
      eqm.grid_fallback.cell_eps = parse_doubles(line, 1);
    } else {
      throw ConfigError("equilibrium file: unknown record " + toks[0]);
    }
  }
  if (eqm.edges.size() != q || eqm.r_samples.size() != q)
    throw ConfigError("equilibrium file: incomplete");
  return eqm;
}

// the measure rho / R_i restricted to cut i as a standalone one-cut measure:
// the other cuts' square-root factors (real and sign-definite on cut i) are
// folded into the density factor samples
inline EquilibriumMeasure cut_equilibrium_view(const EquilibriumMeasure& parent,
                                               std::size_t i) {
  if (i >= parent.edges.size())
    throw ConfigError("cut_equilibrium_view: bad cut index");
  EquilibriumMeasure v;
  const Cut& c = parent.edges[i];
  v.edges = {c};
  v.filling_fractions = {1.0};
  const std::size_t n = parent.r_samples[i].size();
  const std::vector<double> xs = detail::chebyshev_points(c, n);
  std::vector<double> vals(n);
  for (std::size_t m = 0; m < n; ++m) {
    double prod = 1.0;
    for (std::size_t j = 0; j < parent.edges.size(); ++j) {
      if (j == i) continue;
      prod *= edge_sqrt(cplx(xs[m], 0.0), parent.edges[j]).real();
    }
    vals[m] = parent.r_at(i, xs[m]) * prod / parent.filling_fractions[i];
  }
  v.r_samples = {vals};
  v.contour.center = 0.5 * (c.A + c.B);
  v.contour.half_width = 0.5 * c.length() + 1.0;
  v.contour.half_height = 1.0;
  v.validate();
  return v;
}

}  // namespace loggas
