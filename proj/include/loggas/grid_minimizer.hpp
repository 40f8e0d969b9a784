#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/measures.hpp"
#include "loggas/potential.hpp"
#include "loggas/special.hpp"

namespace loggas {

// Euclidean projection onto {w >= 0, sum w = 1}; O(M log M) by sorting
inline std::vector<double> simplex_project(std::vector<double> u) {
  std::vector<double> s = u;
  std::sort(s.begin(), s.end(), std::greater<double>());
  double cum = 0.0, tau = 0.0;
  std::size_t rho = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    cum += s[j];
    const double t = (cum - 1.0) / double(j + 1);
    if (s[j] - t > 0.0) {
      rho = j + 1;
      tau = t;
    }
  }
  (void)rho;
  for (double& x : u) x = std::max(0.0, x - tau);
  return u;
}

struct GridMinimizeResult {
  DiscreteMeasure measure;
  double energy = 0.0;
  double kkt_violation = 0.0;  // two-sided effective-potential residual
  double multiplier = 0.0;     // the constant the gradient equals on support
  int iterations = 0;
};

namespace detail {

// gradient of E(w) = v.w - w^T K w  is  v - 2 K w, which is exactly the
// discrete effective potential on the grid
inline void grid_gradient(const std::vector<double>& v,
                          const std::vector<double>& K,
                          const std::vector<double>& w, std::size_t M,
                          std::vector<double>& g) {
  for (std::size_t i = 0; i < M; ++i) {
    double acc = 0.0;
    const double* row = &K[i * M];
    for (std::size_t j = 0; j < M; ++j) acc += row[j] * w[j];
    g[i] = v[i] - 2.0 * acc;
  }
}

inline double grid_energy(const std::vector<double>& v,
                          const std::vector<double>& g,
                          const std::vector<double>& w, std::size_t M) {
  // E = v.w - w^T K w = w.(v + g)/2 given g = v - 2Kw
  double e = 0.0;
  for (std::size_t i = 0; i < M; ++i) e += w[i] * (v[i] + g[i]);
  return 0.5 * e;
}

// KKT residual: on the active set the gradient must equal a constant, off it
// the gradient must not dip below that constant
inline double kkt_violation(const std::vector<double>& g,
                            const std::vector<double>& w, std::size_t M,
                            double& multiplier) {
  double c = 0.0;
  for (std::size_t i = 0; i < M; ++i) c += w[i] * g[i];
  multiplier = c;
  double viol = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    if (w[i] > 1e-12) viol = std::max(viol, std::abs(g[i] - c));
    viol = std::max(viol, c - g[i]);
  }
  return viol;
}

}  // namespace detail

// Minimizes E(w) = sum_i V(x_i) w_i - sum_{ij} w_i w_j p(x_i, x_j; eps) over
// the probability simplex on a uniform grid, eps = half spacing. Accelerated
// projected gradient with backtracking and monotone restarts; convergence is
// declared on the first-order condition (discrete effective potential equal
// to a constant on the support, no smaller anywhere else) within tol.
inline GridMinimizeResult minimize_energy_on_grid(
    const Potential& p, double lo, double hi, std::size_t M, double tol,
    const std::vector<double>* init = nullptr, int max_iterations = 200000) {
  if (M < 50) throw ConfigError("minimize_energy_on_grid: M < 50");
  if (!(hi > lo)) throw ConfigError("minimize_energy_on_grid: empty domain");

  const double h = (hi - lo) / double(M - 1);
  const double eps = 0.5 * h;
  std::vector<double> x(M), v(M);
  for (std::size_t i = 0; i < M; ++i) {
    x[i] = lo + double(i) * h;
    v[i] = p.eval(x[i]);
  }
  std::vector<double> K(M * M);
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = i; j < M; ++j) {
      const double kij = smoothed_log_kernel(x[i], x[j], eps);
      K[i * M + j] = kij;
      K[j * M + i] = kij;
    }

  std::vector<double> w(M, 1.0 / double(M));
  if (init) {
    w = *init;
    if (w.size() != M)
      throw ConfigError("minimize_energy_on_grid: init size mismatch");
    w = simplex_project(std::move(w));
  }

  std::vector<double> g(M), gy(M), y = w, wn(M), diff(M);
  detail::grid_gradient(v, K, w, M, g);
  double Ew = detail::grid_energy(v, g, w, M);
  double L = 4.0;  // Lipschitz estimate, grown by backtracking
  double t_acc = 1.0;
  double mult = 0.0;
  GridMinimizeResult out;

  for (int it = 0; it < max_iterations; ++it) {
    detail::grid_gradient(v, K, y, M, gy);
    const double Ey = detail::grid_energy(v, gy, y, M);
    // backtracking on the quadratic upper model at y
    for (;;) {
      for (std::size_t i = 0; i < M; ++i) wn[i] = y[i] - gy[i] / L;
      wn = simplex_project(std::move(wn));
      double lin = 0.0, sq = 0.0;
      for (std::size_t i = 0; i < M; ++i) {
        const double d = wn[i] - y[i];
        lin += gy[i] * d;
        sq += d * d;
      }
      detail::grid_gradient(v, K, wn, M, g);
      const double En = detail::grid_energy(v, g, wn, M);
      if (En <= Ey + lin + 0.5 * L * sq + 1e-15 || L > 1e12) break;
      L *= 2.0;
    }
    const double En = detail::grid_energy(v, g, wn, M);
    // momentum with monotone restart
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
    if (En > Ew) {
      y = w;
      t_acc = 1.0;
      continue;
    }
    for (std::size_t i = 0; i < M; ++i)
      y[i] = wn[i] + (t_acc - 1.0) / t_next * (wn[i] - w[i]);
    y = simplex_project(std::move(y));
    w.swap(wn);
    Ew = En;
    t_acc = t_next;

    if (it % 25 == 0 || it + 1 == max_iterations) {
      detail::grid_gradient(v, K, w, M, g);
      const double viol = detail::kkt_violation(g, w, M, mult);
      if (viol <= tol) {
        out.iterations = it + 1;
        out.kkt_violation = viol;
        out.multiplier = mult;
        out.energy = detail::grid_energy(v, g, w, M);
        out.measure = DiscreteMeasure{x, w, std::vector<double>(M, eps)};
        // exact renormalization guard against projection drift
        double mass = std::accumulate(w.begin(), w.end(), 0.0);
        for (double& wi : out.measure.weights) wi /= mass;
        out.measure.validate();
        return out;
      }
      out.kkt_violation = viol;
    }
  }
  throw NumericError("minimize_energy_on_grid: no convergence, last KKT violation " +
                     std::to_string(out.kkt_violation));
}

}  // namespace loggas
