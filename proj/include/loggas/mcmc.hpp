#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "loggas/equilibrium.hpp"
#include "loggas/errors.hpp"
#include "loggas/gibbs.hpp"
#include "loggas/rng.hpp"

namespace loggas {

struct ChainState {
  ParticleConfiguration config;
  CounterRng rng{0};
  std::vector<double> step_sizes;        // per rank while adapting, then per particle
  std::vector<std::uint64_t> accepted;   // per particle, lifetime
  std::uint64_t sweeps = 0;
  bool adapting = true;
  // adaptation window
  std::vector<std::uint64_t> window_accepted;
  std::uint64_t window_sweeps = 0;
};

namespace detail {

inline double domain_span(const GibbsModel& m) {
  if (m.domain.empty()) return 4.0;
  return m.domain.back().B - m.domain.front().A;
}

}  // namespace detail

// spread particles over the model's equilibrium-typical region: classical
// locations when an equilibrium measure is supplied, otherwise evenly over
// the domain blocks (or around the potential minimum on the full line)
inline ParticleConfiguration initial_configuration(
    const GibbsModel& model, const EquilibriumMeasure* eqm = nullptr) {
  const std::size_t N = model.n_particles;
  ParticleConfiguration cfg;
  if (eqm != nullptr && model.domain.size() == 1 && eqm->edges.size() > 1) {
    // single-cut law: place all particles on its own cut
    std::size_t cut = 0;
    for (std::size_t j = 0; j < eqm->edges.size(); ++j)
      if (eqm->edges[j].A >= model.domain[0].A &&
          eqm->edges[j].B <= model.domain[0].B)
        cut = j;
    cfg.positions = eqm->cut_classical_locations(cut, N);
  } else if (eqm != nullptr) {
    cfg.positions = eqm->classical_locations(N);
  } else if (!model.domain.empty()) {
    for (const Cut& c : model.domain) {
      const std::size_t total = model.domain.size();
      const std::size_t share = N / total + 1;
      for (std::size_t k = 0; k < share && cfg.positions.size() < N; ++k)
        cfg.positions.push_back(c.A + (c.B - c.A) * (k + 0.5) / share);
    }
  } else {
    const double center = model.potential.poly_min();
    for (std::size_t k = 0; k < N; ++k)
      cfg.positions.push_back(center - 1.5 + 3.0 * (k + 0.5) / N);
  }
  std::sort(cfg.positions.begin(), cfg.positions.end());
  if (cfg.positions.size() != N)
    throw NumericError("initial_configuration: wrong particle count");
  return cfg;
}

inline ChainState init_chain(const GibbsModel& model, std::uint64_t seed,
                             const EquilibriumMeasure* eqm = nullptr) {
  model.validate();
  ChainState st;
  st.config = initial_configuration(model, eqm);
  st.rng = CounterRng(seed);
  const double step = detail::domain_span(model) /
                      std::sqrt(double(model.n_particles) + 1.0);
  st.step_sizes.assign(model.n_particles, step);
  st.accepted.assign(model.n_particles, 0);
  st.window_accepted.assign(model.n_particles, 0);
  return st;
}

// one Metropolis sweep: a Gaussian move per particle, each accepted with the
// exact weight ratio computed in O(N).  While adapting, positions are
// re-sorted at sweep end so per-rank step sizes stay meaningful; once the
// steps are frozen the labels must be left alone, because re-sorting would
// tie each step size to a rank and the rank-dependent mobility distorts the
// stationary law (the bias shows up in pair statistics, not in the
// one-point density)
inline void mcmc_sweep(const GibbsModel& model, ChainState& st) {
  std::vector<double>& x = st.config.positions;
  const std::size_t N = x.size();
  const double Nb2 = 0.5 * double(N) * model.beta;
  const bool blockwise = model.interaction == Interaction::within_block;
  std::vector<std::size_t> blk;
  if (blockwise) {
    blk.resize(N);
    for (std::size_t i = 0; i < N; ++i) blk[i] = model.block_index(x[i]);
  }
  for (std::size_t i = 0; i < N; ++i) {
    const double xi = x[i];
    const double xp = xi + st.step_sizes[i] * st.rng.normal();
    if (!model.in_domain(xp)) continue;
    const std::size_t bp = blockwise ? model.block_index(xp) : 0;
    double dlog = -Nb2 * (model.site_energy(xp) - model.site_energy(xi));
    bool coincident = false;
    for (std::size_t j = 0; j < N && !coincident; ++j) {
      if (j == i) continue;
      if (!blockwise || blk[j] == bp) {
        const double d = xp - x[j];
        if (d == 0.0) coincident = true;
        else dlog += model.beta * std::log(std::abs(d));
      }
      if (!blockwise || blk[j] == blk[i])
        dlog -= model.beta * std::log(std::abs(xi - x[j]));
    }
    if (coincident) continue;
    if (dlog >= 0.0 || st.rng.uniform01_pos() < std::exp(dlog)) {
      x[i] = xp;
      if (blockwise) blk[i] = bp;
      ++st.accepted[i];
      ++st.window_accepted[i];
    }
  }
  if (st.adapting) std::sort(x.begin(), x.end());
  ++st.sweeps;
  ++st.window_sweeps;
  if (st.adapting && st.window_sweeps >= 40) {
    const double span = detail::domain_span(model);
    for (std::size_t i = 0; i < N; ++i) {
      const double rate = double(st.window_accepted[i]) / double(st.window_sweeps);
      if (rate < 0.3) st.step_sizes[i] *= 0.75;
      else if (rate > 0.5) st.step_sizes[i] *= 1.3;
      st.step_sizes[i] = std::clamp(st.step_sizes[i], 1e-7 * span, span);
      st.window_accepted[i] = 0;
    }
    st.window_sweeps = 0;
  }
}

// integrated autocorrelation time of a scalar series by the initial
// positive sequence rule; at least 1
inline double integrated_autocorrelation(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 4) return 1.0;
  const double mean =
      std::accumulate(series.begin(), series.end(), 0.0) / double(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = series[i] - mean;
  auto gamma = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i)
      s += centered[i] * centered[i + lag];
    return s / double(n);
  };
  const double g0 = gamma(0);
  if (g0 <= 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t lag = 1; lag + 1 < n / 2; lag += 2) {
    const double pair = gamma(lag) + gamma(lag + 1);
    if (pair <= 0.0) break;
    tau += 2.0 * pair / g0;
  }
  return std::max(1.0, tau);
}

struct SampleRun {
  std::vector<ParticleConfiguration> samples;
  double acceptance_rate = 0.0;
  double iat_sum = 0.0;  // autocorrelation time of sum(l_i) in thinned steps
  std::vector<std::size_t> block_occupancy_min;
  std::vector<std::size_t> block_occupancy_max;
};

inline std::vector<std::size_t> block_occupancy(const GibbsModel& model,
                                                const ParticleConfiguration& c) {
  std::vector<std::size_t> occ(model.domain.size(), 0);
  for (double xi : c.positions) {
    const std::size_t b = model.block_index(xi);
    if (b != std::size_t(-1)) ++occ[b];
  }
  return occ;
}

inline constexpr std::size_t kMaxParticles = 65536;

inline SampleRun sample(const GibbsModel& model, std::size_t n_samples,
                        std::size_t thinning, std::size_t burn_in,
                        std::uint64_t seed,
                        const EquilibriumMeasure* eqm = nullptr) {
  if (thinning < 1) throw ConfigError("sample: thinning must be >= 1");
  if (model.n_particles > kMaxParticles)
    throw ConfigError("sample: particle count exceeds the configured maximum");
  ChainState st = init_chain(model, seed, eqm);
  for (std::size_t s = 0; s < burn_in; ++s) mcmc_sweep(model, st);
  st.adapting = false;
  SampleRun run;
  run.samples.reserve(n_samples);
  std::vector<double> sums;
  sums.reserve(n_samples);
  const std::uint64_t base_accepted =
      std::accumulate(st.accepted.begin(), st.accepted.end(), std::uint64_t(0));
  if (!model.domain.empty()) {
    run.block_occupancy_min.assign(model.domain.size(), model.n_particles + 1);
    run.block_occupancy_max.assign(model.domain.size(), 0);
  }
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t t = 0; t < thinning; ++t) mcmc_sweep(model, st);
    ParticleConfiguration out = st.config;
    std::sort(out.positions.begin(), out.positions.end());
    run.samples.push_back(std::move(out));
    sums.push_back(std::accumulate(st.config.positions.begin(),
                                   st.config.positions.end(), 0.0));
    if (!model.domain.empty()) {
      const std::vector<std::size_t> occ = block_occupancy(model, st.config);
      for (std::size_t b = 0; b < occ.size(); ++b) {
        run.block_occupancy_min[b] = std::min(run.block_occupancy_min[b], occ[b]);
        run.block_occupancy_max[b] = std::max(run.block_occupancy_max[b], occ[b]);
      }
    }
  }
  const std::uint64_t accepted_after =
      std::accumulate(st.accepted.begin(), st.accepted.end(), std::uint64_t(0)) -
      base_accepted;
  const double proposals =
      double(n_samples) * double(thinning) * double(model.n_particles);
  run.acceptance_rate = proposals > 0.0 ? double(accepted_after) / proposals : 0.0;
  run.iat_sum = integrated_autocorrelation(sums);
  return run;
}

}  // namespace loggas
