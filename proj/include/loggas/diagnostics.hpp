#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "loggas/equilibrium.hpp"
#include "loggas/errors.hpp"
#include "loggas/gibbs.hpp"
#include "loggas/mcmc.hpp"
#include "loggas/quadrature.hpp"
#include "loggas/statistics.hpp"

namespace loggas {

namespace detail {

inline double quantile_of(std::vector<double> v, double p) {
  if (v.empty()) throw ConfigError("quantile_of: empty sample");
  std::sort(v.begin(), v.end());
  const double idx = p * double(v.size() - 1);
  const std::size_t lo = std::size_t(idx);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (idx - double(lo)) * (v[hi] - v[lo]);
}

inline double median_of(std::vector<double> v) {
  return quantile_of(std::move(v), 0.5);
}

}  // namespace detail

struct RigidityResult {
  std::vector<double> per_sample;  // max bulk |l_k - eta_k| per sample
  double q99 = 0.0;
  std::vector<std::size_t> bulk_indices;  // 1-based k actually compared
};

// max over bulk indices of the deviation from the classical locations.
// The bulk of cut i is the index band [(R_1+..+R_{i-1}+alpha) N,
// (R_1+..+R_i-alpha) N]; when the margins exclude every index (tiny N) the
// full index range is used instead.
inline RigidityResult rigidity_stat(
    const std::vector<ParticleConfiguration>& samples,
    const EquilibriumMeasure& eqm, double alpha = -1.0) {
  if (samples.empty()) throw ConfigError("rigidity_stat: no samples");
  const std::size_t N = samples.front().positions.size();
  double min_R = 1.0;
  for (double R : eqm.filling_fractions) min_R = std::min(min_R, R);
  if (alpha <= 0.0) alpha = 0.1 * min_R;
  if (!(alpha < 0.5 * min_R))
    throw ConfigError("rigidity_stat: alpha must be below min R_i / 2");

  RigidityResult out;
  double cum = 0.0;
  for (double R : eqm.filling_fractions) {
    const std::size_t lo =
        std::size_t(std::ceil((cum + alpha) * double(N) - 1e-12));
    const std::size_t hi =
        std::size_t(std::floor((cum + R - alpha) * double(N) + 1e-12));
    for (std::size_t k = std::max<std::size_t>(lo, 1); k <= hi && k <= N; ++k)
      out.bulk_indices.push_back(k);
    cum += R;
  }
  if (out.bulk_indices.empty())
    for (std::size_t k = 1; k <= N; ++k) out.bulk_indices.push_back(k);

  const std::vector<double> eta = eqm.classical_locations(N);
  for (const ParticleConfiguration& s : samples) {
    if (s.positions.size() != N)
      throw ConfigError("rigidity_stat: inconsistent particle counts");
    double worst = 0.0;
    for (std::size_t k : out.bulk_indices)
      worst = std::max(worst, std::abs(s.positions[k - 1] - eta[k - 1]));
    out.per_sample.push_back(worst);
  }
  out.q99 = detail::quantile_of(out.per_sample, 0.99);
  return out;
}

// centered linear statistic sum_i h(l_i) - N int h rho per sample
inline std::vector<double> fluctuation_stat(
    const std::vector<ParticleConfiguration>& samples,
    const EquilibriumMeasure& eqm, const LinearStatistic& h) {
  double mean_h = 0.0;
  for (const Cut& c : eqm.edges)
    mean_h += integrate_sqrt_edges(
        [&](double x) { return h.h(x) * eqm.density(x); }, c.A, c.B, 128);
  std::vector<double> out;
  out.reserve(samples.size());
  for (const ParticleConfiguration& s : samples) {
    double acc = 0.0;
    for (double x : s.positions) acc += h.h(x);
    out.push_back(acc - double(s.positions.size()) * mean_h);
  }
  return out;
}

inline std::complex<double> empirical_stieltjes(
    const ParticleConfiguration& config, std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (double x : config.positions) {
    if (std::abs(z - x) < 1e-12)
      throw NumericError("empirical_stieltjes: z collides with a particle");
    acc += 1.0 / (z - x);
  }
  return acc / double(config.positions.size());
}

// max over the z grid of |sample mean of m_N(z) - m_eq(z)|
inline double stieltjes_gap(const std::vector<ParticleConfiguration>& samples,
                            const EquilibriumMeasure& eqm,
                            const std::vector<std::complex<double>>& zgrid) {
  if (samples.empty()) throw ConfigError("stieltjes_gap: no samples");
  double worst = 0.0;
  for (const std::complex<double>& z : zgrid) {
    std::complex<double> mean(0.0, 0.0);
    for (const ParticleConfiguration& s : samples)
      mean += empirical_stieltjes(s, z);
    mean /= double(samples.size());
    worst = std::max(worst, std::abs(mean - stieltjes(eqm, z)));
  }
  return worst;
}

struct LoopResidual {
  double mean = 0.0;
  double se = 0.0;
  double iat = 1.0;
  std::size_t n = 0;
};

// Monte-Carlo estimate of the integration-by-parts combination
//   -(N beta / 2) sum V'(y_i) phi(y_i)
//   + beta sum_{i<j} (phi(y_i) - phi(y_j)) / (y_i - y_j)
//   + sum phi'(y_i),
// which has expectation zero for the unrestricted law. The standard error
// accounts for sample autocorrelation.
inline LoopResidual loop_residual(
    const std::vector<ParticleConfiguration>& samples, const GibbsModel& model,
    const LinearStatistic& phi) {
  if (samples.empty()) throw ConfigError("loop_residual: no samples");
  std::vector<double> stat;
  stat.reserve(samples.size());
  for (const ParticleConfiguration& s : samples) {
    const std::vector<double>& y = s.positions;
    const std::size_t N = y.size();
    double t1 = 0.0, t3 = 0.0;
    for (double yi : y) {
      t1 += model.potential.deriv(yi, 1) * phi.h(yi);
      t3 += phi.dh(yi);
    }
    double t2 = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) {
        const double d = y[i] - y[j];
        t2 += std::abs(d) < 1e-13 ? phi.dh(y[i])
                                  : (phi.h(y[i]) - phi.h(y[j])) / d;
      }
    stat.push_back(-0.5 * double(N) * model.beta * t1 + model.beta * t2 + t3);
  }
  LoopResidual out;
  out.n = stat.size();
  for (double v : stat) out.mean += v;
  out.mean /= double(out.n);
  double var = 0.0;
  for (double v : stat) var += (v - out.mean) * (v - out.mean);
  var /= std::max<std::size_t>(1, out.n - 1);
  out.iat = integrated_autocorrelation(stat);
  out.se = std::sqrt(var * out.iat / double(out.n));
  return out;
}

// fraction of samples with at least one particle outside the delta-fattened
// support
inline double escape_fraction(const std::vector<ParticleConfiguration>& samples,
                              const EquilibriumMeasure& eqm, double delta) {
  if (!(delta > 0.0)) throw ConfigError("escape_fraction: delta <= 0");
  for (std::size_t i = 0; i + 1 < eqm.edges.size(); ++i) {
    const double gap = eqm.edges[i + 1].A - eqm.edges[i].B;
    if (!(delta < 0.5 * gap))
      throw ConfigError("escape_fraction: delta at least half the gap");
  }
  if (samples.empty()) throw ConfigError("escape_fraction: no samples");
  std::size_t escapes = 0;
  for (const ParticleConfiguration& s : samples) {
    bool outside = false;
    for (double x : s.positions) {
      bool in = false;
      for (const Cut& c : eqm.edges)
        if (x >= c.A - delta && x <= c.B + delta) {
          in = true;
          break;
        }
      if (!in) {
        outside = true;
        break;
      }
    }
    if (outside) ++escapes;
  }
  return double(escapes) / double(samples.size());
}

}  // namespace loggas
