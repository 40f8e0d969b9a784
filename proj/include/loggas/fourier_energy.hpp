#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/measures.hpp"
#include "loggas/special.hpp"

namespace loggas {

enum class EnergyMethod { direct, fourier };

// -int int ln|x-y| dm1(x) dm2(y) on grid measures, the diagonal smoothed by
// the cell-averaged kernel; symmetric in (m1, m2) because the kernel depends
// only on |x - w| and the cell half-widths enter through their mean
inline double log_energy_bilinear(const SignedGridMeasure& m1,
                                  const SignedGridMeasure& m2) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m1.grid.size(); ++i) {
    if (m1.weights[i] == 0.0) continue;
    const double ei = m1.cell_eps(i);
    double row = 0.0;
    for (std::size_t j = 0; j < m2.grid.size(); ++j) {
      if (m2.weights[j] == 0.0) continue;
      const double eps = 0.5 * (ei + m2.cell_eps(j));
      row += m2.weights[j] * smoothed_log_kernel(m1.grid[i], m2.grid[j], eps);
    }
    acc += m1.weights[i] * row;
  }
  return -acc;
}

// quadratic log-energy of a signed measure. direct: double sum with the
// smoothed kernel. fourier: for zero-mass measures, 2 sum_{k>=1} |r_k| |g_k|^2
// with g_k = int exp(i pi k u) dm(u) after an affine map of the support into
// an interval of length < 1 (the map leaves the energy unchanged exactly
// because the total mass is zero). tail_bound, when requested, receives an
// estimate of the truncation remainder from the last computed octave.
inline double log_energy(const SignedGridMeasure& m, EnergyMethod method,
                         std::size_t K = 4096, double* tail_bound = nullptr) {
  if (tail_bound != nullptr) *tail_bound = 0.0;
  if (method == EnergyMethod::direct) return log_energy_bilinear(m, m);

  double tv = 0.0, mass = 0.0;
  for (double w : m.weights) {
    tv += std::abs(w);
    mass += w;
  }
  if (std::abs(mass) > 1e-12 * std::max(1.0, tv))
    throw ConfigError("log_energy: fourier route requires zero total mass");
  if (K < 16) throw ConfigError("log_energy: K too small");

  const double lo = m.grid.front(), hi = m.grid.back();
  const double diameter = hi - lo;
  const double scale = diameter < 0.98 ? 1.0 : diameter / 0.98;
  std::vector<double> u(m.grid.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (m.grid[i] - lo) / scale;

  double total = 0.0;
  std::vector<double> window;  // k^2 |g_k|^2 for k in (K/4, K/2]
  for (std::size_t k = 1; k <= K; ++k) {
    std::complex<double> g(0.0, 0.0);
    const double w = 3.14159265358979323846 * double(k);
    for (std::size_t i = 0; i < u.size(); ++i)
      g += m.weights[i] * std::polar(1.0, w * u[i]);
    const double gk2 = std::norm(g);
    total += 2.0 * std::abs(fourier_log_coeff(int(k))) * gk2;
    if (4 * k > K && 2 * k <= K)
      window.push_back(double(k) * double(k) * gk2);
  }
  if (tail_bound != nullptr && !window.empty()) {
    // decay model |g_k|^2 <= c / k^2 with c read off a mid-range window
    // (the top octave can carry an aliasing spike at the grid's Nyquist
    // frequency); |r_k| <= Si(pi)/(pi k) <= 0.59/k gives
    // sum_{k>K} 2 (0.59/k)(c/k^2) <= 0.59 c / K^2
    std::sort(window.begin(), window.end());
    const double c_est = window[std::size_t(0.9 * double(window.size() - 1))];
    *tail_bound = 0.59 * c_est / (double(K) * double(K));
  }
  return total;
}

}  // namespace loggas
