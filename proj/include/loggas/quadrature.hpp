#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <type_traits>
#include <mutex>
#include <vector>

namespace loggas {

struct QuadRule {
  std::vector<double> nodes;    // on [-1,1]
  std::vector<double> weights;  // sum to 2
};

namespace detail {

// Legendre P_n and P_n' at x via the three-term recurrence
inline void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace detail

// Gauss-Legendre rule of order n, cached; roots by Newton from the Chebyshev
// initial guess (converges in < 10 iterations for all practical n)
inline const QuadRule& gauss_legendre(int n) {
  static std::map<int, QuadRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it2 = 0; it2 < 60; ++it2) {
      detail::legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    detail::legendre_pair(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;  // ascending order, roots come out descending
    r.weights[i] = w;
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return cache.emplace(n, std::move(r)).first->second;
}

// int_a^b f, fixed-order Gauss-Legendre; works for real- and complex-valued f
template <typename F>
auto integrate(F&& f, double a, double b, int n = 64) {
  using R = std::invoke_result_t<F&, double>;
  const QuadRule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  R s{};
  for (int i = 0; i < n; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return s * half;
}

// int_a^b f over `panels` equal panels
template <typename F>
double integrate_panels(F&& f, double a, double b, int panels, int n = 16) {
  double s = 0.0;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k)
    s += integrate(f, a + k * h, a + (k + 1) * h, n);
  return s;
}

// int_A^B f(x) dx with square-root behavior of f at both endpoints, absorbed
// by x = A + (B-A) sin^2(theta); the transformed integrand is analytic
template <typename F>
double integrate_sqrt_edges(F&& f, double A, double B, int n = 96) {
  const double len = B - A;
  auto g = [&](double th) {
    const double s = std::sin(th), c = std::cos(th);
    const double x = A + len * s * s;
    return f(x) * len * 2.0 * s * c;
  };
  return integrate(g, 0.0, 1.5707963267948966192313217, n);
}

namespace detail {

// sum of GL integrals over panels [t0 +/- L, t0 +/- L/2, ...] shrinking
// geometrically toward t0 from one side; span is signed
template <typename F>
double dyadic_panels(F&& h, double t0, double span, int n) {
  double total = 0.0;
  double L = std::abs(span);
  const double sgn = span < 0.0 ? -1.0 : 1.0;
  while (L > 1e-14) {
    const double Lh = (L > 2e-14) ? 0.5 * L : 0.0;
    const double lo = sgn > 0.0 ? t0 + Lh : t0 - L;
    const double hi = sgn > 0.0 ? t0 + L : t0 - Lh;
    total += integrate(h, lo, hi, n);
    L = Lh;
  }
  return total;
}

}  // namespace detail

// int_A^B g(y) ln|x0 - y| dy for g with square-root endpoint behavior.
// The sin^2 substitution removes the edges; the log singularity (when x0
// touches [A,B]) is handled by dyadic panels shrinking geometrically toward
// the singular angle, each panel seeing a smooth integrand.
template <typename F>
double integrate_log_singular(F&& g, double A, double B, double x0,
                              int n = 16) {
  const double len = B - A;
  const double half_pi = 1.5707963267948966192313217;
  auto h = [&](double th) {
    const double s = std::sin(th), c = std::cos(th);
    const double y = A + len * s * s;
    const double d = x0 - y;
    return d == 0.0 ? 0.0 : g(y) * std::log(std::abs(d)) * len * 2.0 * s * c;
  };
  double th0;
  if (x0 <= A)
    th0 = 0.0;
  else if (x0 >= B)
    th0 = half_pi;
  else
    th0 = std::asin(std::sqrt((x0 - A) / len));
  // panels condense toward th0 (possible log) and toward both endpoints
  // (mild t*ln t behavior when x0 sits at an edge)
  double total = 0.0;
  if (th0 > 0.0) {
    const double m = 0.5 * th0;
    total += detail::dyadic_panels(h, 0.0, m, n);
    total += detail::dyadic_panels(h, th0, -(th0 - m), n);
  }
  if (th0 < half_pi) {
    const double m = 0.5 * (th0 + half_pi);
    total += detail::dyadic_panels(h, th0, m - th0, n);
    total += detail::dyadic_panels(h, half_pi, -(half_pi - m), n);
  }
  return total;
}

}  // namespace loggas
