#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace loggas {

namespace detail {

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(double(k) * c[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

template <typename T>
T poly_eval(const std::vector<double>& c, T x) {
  T acc = T(0);
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + T(c[k]);
  return acc;
}

// all real roots of a polynomial via the companion matrix; leading zeros
// trimmed; complex-pair roots discarded
inline std::vector<double> poly_real_roots(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  const std::size_t d = c.size() - 1;
  std::vector<double> roots;
  if (d == 0) return roots;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(long(d), long(d));
  for (std::size_t i = 0; i + 1 < d; ++i) comp(long(i) + 1, long(i)) = 1.0;
  for (std::size_t i = 0; i < d; ++i) comp(long(i), long(d) - 1) = -c[i] / c[d];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    const auto ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) < 1e-9 * (1.0 + std::abs(ev.real())))
      roots.push_back(ev.real());
  }
  return roots;
}

}  // namespace detail

// Polynomial confining potential. The offset shifts values only; derivatives
// and the induced equilibrium problem are unaffected (it rescales the
// normalization constant and nothing else).
struct Potential {
  std::vector<double> coefficients;  // c0 + c1 x + ... + cd x^d
  double offset = 0.0;
  std::string label;

  double eval(double x) const {
    return detail::poly_eval(coefficients, x) + offset;
  }

  std::complex<double> eval_complex(std::complex<double> z) const {
    return detail::poly_eval(coefficients, z) + offset;
  }

  double deriv(double x, int order = 1) const {
    if (order != 1 && order != 2)
      throw std::invalid_argument("Potential::deriv: order must be 1 or 2");
    std::vector<double> d = detail::poly_derivative(coefficients);
    if (order == 2) d = detail::poly_derivative(d);
    return detail::poly_eval(d, x);
  }

  std::complex<double> deriv_complex(std::complex<double> z) const {
    return detail::poly_eval(detail::poly_derivative(coefficients), z);
  }

  int degree() const {
    int d = int(coefficients.size()) - 1;
    while (d > 0 && coefficients[std::size_t(d)] == 0.0) --d;
    return d;
  }

  // global minimum of the polynomial part over the real line (finite for
  // confining potentials); from the critical points
  double poly_min() const {
    const std::vector<double> dc = detail::poly_derivative(coefficients);
    double best = detail::poly_eval(coefficients, 0.0);
    for (double x : detail::poly_real_roots(dc))
      best = std::min(best, detail::poly_eval(coefficients, x));
    return best;
  }

  // lower curvature certificate: W0 = max(0, -inf V''/2)
  double curvature_certificate() const {
    std::vector<double> d2 =
        detail::poly_derivative(detail::poly_derivative(coefficients));
    double inf2 = detail::poly_eval(d2, 0.0);
    for (double x : detail::poly_real_roots(detail::poly_derivative(d2)))
      inf2 = std::min(inf2, detail::poly_eval(d2, x));
    return inf2 < 0.0 ? -0.5 * inf2 : 0.0;
  }
};

struct HypothesisReport {
  bool confining = false;      // even degree, positive leading coefficient
  bool growth_ok = false;      // beta V(x) dominates 2 ln|x| far out
  bool positivity_ok = false;  // V + offset > 1 on a wide grid
  double w0 = 0.0;             // curvature certificate
  std::string witness;         // first failing check, empty when all pass
  bool pass() const { return confining && growth_ok && positivity_ok; }
};

inline HypothesisReport check_hypothesis(const Potential& p, double beta) {
  HypothesisReport rep;
  const int d = p.degree();
  rep.confining = (d >= 2) && (d % 2 == 0) &&
                  (p.coefficients[std::size_t(d)] > 0.0);
  if (!rep.confining) rep.witness = "degree/leading-coefficient";
  rep.growth_ok = true;
  for (double x : {1e2, 1e4, 1e6}) {
    for (double s : {-1.0, 1.0}) {
      if (beta * p.eval(s * x) <= 2.0 * std::log(x)) {
        rep.growth_ok = false;
        if (rep.witness.empty()) rep.witness = "growth at |x|=" + std::to_string(x);
      }
    }
  }
  rep.positivity_ok = true;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -50.0 + 0.05 * i;
    if (p.eval(x) <= 1.0) {
      rep.positivity_ok = false;
      if (rep.witness.empty()) rep.witness = "V+offset<=1 at x=" + std::to_string(x);
      break;
    }
  }
  rep.w0 = rep.confining ? p.curvature_certificate() : 0.0;
  return rep;
}

// offset choice placing the global minimum of V at 1.5
inline double auto_offset(const Potential& p) { return 1.5 - p.poly_min(); }

// built-ins
inline Potential quadratic_potential(double offset = 0.0) {
  return Potential{{0.0, 0.0, 0.5}, offset, "quadratic"};
}

// x^4/4 - c x^2: one cut for c <= 1, two cuts for c > 1
inline Potential symmetric_quartic(double c, double offset = 0.0) {
  return Potential{{0.0, 0.0, -c, 0.0, 0.25}, offset,
                   "quartic_c" + std::to_string(c)};
}

// x^4/4 - c x^2 + t x: tilts the symmetric quartic
inline Potential asymmetric_quartic(double c, double t, double offset = 0.0) {
  return Potential{{0.0, t, -c, 0.0, 0.25}, offset,
                   "aquartic_c" + std::to_string(c) + "_t" + std::to_string(t)};
}

}  // namespace loggas
