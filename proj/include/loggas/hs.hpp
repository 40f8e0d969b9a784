#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/measures.hpp"
#include "loggas/quadrature.hpp"
#include "loggas/statistics.hpp"

namespace loggas {

// even cutoff: 1 on [-D/2, D/2], quintic smoothstep down to 0 at |y| = D
inline double cutoff_value(double D, double y) {
  const double a = std::abs(y);
  if (a <= 0.5 * D) return 1.0;
  if (a >= D) return 0.0;
  const double s = (a - 0.5 * D) / (0.5 * D);
  return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

inline double cutoff_deriv(double D, double y) {
  const double a = std::abs(y);
  if (a <= 0.5 * D || a >= D) return 0.0;
  const double s = (a - 0.5 * D) / (0.5 * D);
  const double ds = 30.0 * s * s * (1.0 + s * (-2.0 + s)) / (0.5 * D);
  return (y > 0.0 ? -1.0 : 1.0) * ds;
}

inline std::complex<double> stieltjes(const SignedGridMeasure& m,
                                      std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < m.grid.size(); ++i)
    acc += m.weights[i] / (z - m.grid[i]);
  return acc;
}

namespace detail {

// coefficients of P((u - delta)/h) in ascending powers of u
inline std::vector<double> poly_shift_scale(const std::vector<double>& p,
                                            double delta, double h) {
  // Horner in the variable (u - delta)/h, carried out on coefficient vectors
  std::vector<double> out{0.0};
  for (std::size_t j = p.size(); j-- > 0;) {
    // out = out * (u - delta)/h + p[j]
    std::vector<double> next(out.size() + 1, 0.0);
    for (std::size_t l = 0; l < out.size(); ++l) {
      next[l + 1] += out[l] / h;
      next[l] -= out[l] * delta / h;
    }
    next[0] += p[j];
    out = std::move(next);
  }
  return out;
}

// I_j = int_a^b u^j / (u^2 + y^2) du for j = 0..jmax
inline std::vector<double> poisson_moments(double a, double b, double y,
                                           std::size_t jmax) {
  std::vector<double> I(jmax + 1, 0.0);
  I[0] = (std::atan2(b, y) - std::atan2(a, y)) / y;
  if (jmax >= 1)
    I[1] = 0.5 * std::log((b * b + y * y) / (a * a + y * y));
  for (std::size_t j = 2; j <= jmax; ++j)
    I[j] = (std::pow(b, double(j - 1)) - std::pow(a, double(j - 1))) /
               double(j - 1) -
           y * y * I[j - 2];
  return I;
}

}  // namespace detail

struct HsBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double smoothing_term = 0.0;  // the y f'' chi contribution
  double boundary_term = 0.0;   // the chi' contribution
};

// bound |int f d(m)| by the half-plane representation of the integral in
// terms of the Stieltjes transform: the smoothing term integrates
// y f''(x) chi(y) Im m(x+iy) with the x-integral done in closed form per
// atom (f'' is polynomial on its support), the boundary term integrates
// (|f| + |y f'|) |chi'(y)| |m(x+iy)| by tensor quadrature on the cutoff
// shell. Returns lhs = |int f dm| and rhs = smoothing + boundary.
inline HsBound hs_bound_check(const CompactPoly& f, double D,
                              const SignedGridMeasure& m) {
  if (!(D > 0.0)) throw ConfigError("hs_bound_check: D <= 0");
  const double pi = 3.14159265358979323846;
  HsBound out;
  for (std::size_t i = 0; i < m.grid.size(); ++i)
    out.lhs += m.weights[i] * f.eval(m.grid[i]);
  out.lhs = std::abs(out.lhs);

  // second derivative of f as a t-polynomial, then per-atom u-coefficients
  const std::vector<double> p2 =
      detail::poly_derivative(detail::poly_derivative(f.tcoeffs));
  const double h = f.halfwidth;
  const double inv_h2 = 1.0 / (h * h);
  std::vector<std::vector<double>> ucoef(m.grid.size());
  for (std::size_t i = 0; i < m.grid.size(); ++i)
    ucoef[i] = detail::poly_shift_scale(p2, f.center - m.grid[i], h);

  auto x_integral = [&](double y) {
    // sum_i w_i int f''(x) Im(1/(x + iy - x_i)) dx over the support of f
    double acc = 0.0;
    for (std::size_t i = 0; i < m.grid.size(); ++i) {
      if (m.weights[i] == 0.0) continue;
      const double a = f.support_lo() - m.grid[i];
      const double b = f.support_hi() - m.grid[i];
      const std::vector<double> I =
          detail::poisson_moments(a, b, y, ucoef[i].size() - 1);
      double atom = 0.0;
      for (std::size_t l = 0; l < ucoef[i].size(); ++l)
        atom += ucoef[i][l] * I[l];
      acc += m.weights[i] * inv_h2 * (-y) * atom;
    }
    return acc;
  };

  auto g = [&](double y) { return y * cutoff_value(D, y) * x_integral(y); };
  double smoothing = detail::dyadic_panels(g, 0.0, 0.5 * D, 32);
  smoothing += integrate(g, 0.5 * D, D, 64);
  out.smoothing_term = std::abs(smoothing) / pi;

  auto shell = [&](double y) {
    const double cp = std::abs(cutoff_deriv(D, y));
    if (cp == 0.0) return 0.0;
    auto inner = [&](double x) {
      const double fv = std::abs(f.eval(x)) + y * std::abs(f.deriv1(x));
      return fv * std::abs(stieltjes(m, std::complex<double>(x, y)));
    };
    return cp * integrate(inner, f.support_lo(), f.support_hi(), 64);
  };
  out.boundary_term = integrate(shell, 0.5 * D, D, 64) / pi;

  out.rhs = out.smoothing_term + out.boundary_term;
  return out;
}

}  // namespace loggas
