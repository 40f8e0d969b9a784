#pragma once

#include <cmath>
#include <cstdlib>

namespace loggas {

namespace detail {

// sin(t)/t integrated over [a,b] by 16-point Gauss-Legendre; exact to machine
// precision for panels of length <= 2
inline double sinc_panel(double a, double b) {
  // nodes/weights for [-1,1], symmetric halves
  static const double xk[8] = {
      0.0950125098376374401853193, 0.2816035507792589132304605,
      0.4580167776572273863424194, 0.6178762444026437484466718,
      0.7554044083550030338951012, 0.8656312023878317438804679,
      0.9445750230732325760779884, 0.9894009349916499325961542};
  static const double wk[8] = {
      0.1894506104550684962853967, 0.1826034150449235888667637,
      0.1691565193950025381893121, 0.1495959888165767320815017,
      0.1246289712555338720524763, 0.0951585116824927848099251,
      0.0622535239386478928628438, 0.0271524594117540948517806};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto f = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
  double s = 0.0;
  for (int i = 0; i < 8; ++i)
    s += wk[i] * (f(mid - half * xk[i]) + f(mid + half * xk[i]));
  return s * half;
}

}  // namespace detail

// Sine integral Si(x) = int_0^x sin(t)/t dt.
// Maclaurin series for |x| <= 4, composite panel quadrature up to 400, and the
// divergent-series asymptotics (10 terms, error < 1e-33 at x = 400) beyond.
inline double sine_integral(double x) {
  if (x < 0.0) return -sine_integral(-x);
  if (x <= 4.0) {
    // sum (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    double term = x, sum = x;
    const double x2 = x * x;
    for (int k = 1; k <= 24; ++k) {
      term *= -x2 / double(2 * k * (2 * k + 1));
      sum += term / double(2 * k + 1);
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  if (x <= 400.0) {
    double s = sine_integral(4.0);
    double a = 4.0;
    while (a < x) {
      const double b = std::min(a + 2.0, x);
      s += detail::sinc_panel(a, b);
      a = b;
    }
    return s;
  }
  // Si(x) = pi/2 - cos(x)/x * P(1/x^2) - sin(x)/x^2 * Q(1/x^2)
  const double ix2 = 1.0 / (x * x);
  double p = 0.0, q = 0.0;
  for (int n = 9; n >= 0; --n) {
    // Horner on sum_n (-1)^n (2n)! u^n and sum_n (-1)^n (2n+1)! u^n, u = 1/x^2
    p = 1.0 - double(2 * n + 1) * double(2 * n + 2) * ix2 * p;
    q = 1.0 - double(2 * n + 2) * double(2 * n + 3) * ix2 * q;
  }
  return 1.5707963267948966192313217 - std::cos(x) / x * p -
         std::sin(x) / (x * x) * q;
}

// t ln|t| extended by 0 at t = 0
inline double xlogx(double t) {
  return t == 0.0 ? 0.0 : t * std::log(std::abs(t));
}

// Cell-averaged logarithm: (1/2eps) int_{x-eps}^{x+eps} ln|t-w| dt.
// Finite at x = w, equals ln|x-w| up to O(eps^2/(x-w)^2) far from w, and is
// symmetric in (x, w) for a common eps.
inline double smoothed_log_kernel(double x, double w, double eps) {
  const double a = x - w + eps, b = x - w - eps;
  return -1.0 + (xlogx(a) - xlogx(b)) / (2.0 * eps);
}

// Cosine-series coefficient of ln|t| on [-1,1]: r_0 = -1, r_k = -Si(pi k)/(pi k)
inline double fourier_log_coeff(long long k) {
  if (k == 0) return -1.0;
  const double a = 3.14159265358979323846264338 * double(k < 0 ? -k : k);
  return -sine_integral(a) / a;
}

}  // namespace loggas
