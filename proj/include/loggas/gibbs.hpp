#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "loggas/equilibrium.hpp"
#include "loggas/errors.hpp"
#include "loggas/potential.hpp"
#include "loggas/quadrature.hpp"
#include "loggas/serialize.hpp"

namespace loggas {

enum class Interaction { full, within_block };

// per-block additive potential term, Chebyshev samples on the block interval
struct BlockTable {
  Cut block;
  std::vector<double> values;

  double eval(double x) const {
    return detail::chebyshev_interp(block, values, x);
  }
};

struct ParticleConfiguration {
  std::vector<double> positions;  // nondecreasing
};

// Gibbs law with density proportional to
//   exp( -(N beta / 2) sum_i [V(l_i) + e(l_i)]
//        + beta sum_{i<j interacting} ln|l_i - l_j|
//        - N beta * constant_term )
// on domain^N. Covers the plain ensemble (full interaction, whole line), the
// interval restrictions, the block-decomposed law (within-block interaction,
// per-block external extra, cross-block energy constant), and single-cut
// rescaled laws.
struct GibbsModel {
  Potential potential;
  double beta = 2.0;
  std::size_t n_particles = 0;
  std::vector<Cut> domain;  // empty = full line
  Interaction interaction = Interaction::full;
  std::vector<BlockTable> external_extra;  // one per domain block, or empty
  double constant_term = 0.0;
  std::string label;

  void validate() const {
    if (beta <= 0.0) throw ConfigError("GibbsModel: beta <= 0");
    if (n_particles < 1) throw ConfigError("GibbsModel: N < 1");
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (!(domain[i].A < domain[i].B))
        throw ConfigError("GibbsModel: empty domain interval");
      if (i > 0 && !(domain[i - 1].B < domain[i].A))
        throw ConfigError("GibbsModel: domain intervals out of order");
    }
    if (interaction == Interaction::within_block && domain.empty())
      throw ConfigError("GibbsModel: within-block interaction needs blocks");
    if (!external_extra.empty() && external_extra.size() != domain.size())
      throw ConfigError("GibbsModel: extra tables must match domain blocks");
  }

  bool in_domain(double x) const {
    if (domain.empty()) return std::isfinite(x);
    for (const Cut& c : domain)
      if (x >= c.A && x <= c.B) return true;
    return false;
  }

  std::size_t block_index(double x) const {
    for (std::size_t i = 0; i < domain.size(); ++i)
      if (x >= domain[i].A && x <= domain[i].B) return i;
    return std::size_t(-1);
  }

  double extra(double x) const {
    if (external_extra.empty()) return 0.0;
    const std::size_t b = block_index(x);
    return b == std::size_t(-1) ? 0.0 : external_extra[b].eval(x);
  }

  double site_energy(double x) const { return potential.eval(x) + extra(x); }

  // canonical text form; the hash ties sample archives to their model
  std::string canonical_text() const {
    std::ostringstream os;
    os << "model " << label << "\nbeta " << fmt_double(beta) << "\nN "
       << n_particles << "\ncoeff " << fmt_doubles(potential.coefficients)
       << "\noffset " << fmt_double(potential.offset) << "\ninteraction "
       << (interaction == Interaction::full ? "full" : "within_block")
       << "\nconstant " << fmt_double(constant_term) << "\n";
    for (const Cut& c : domain)
      os << "block " << fmt_double(c.A) << ' ' << fmt_double(c.B) << "\n";
    for (const BlockTable& t : external_extra)
      os << "extra " << fmt_doubles(t.values) << "\n";
    return os.str();
  }

  std::uint64_t hash() const { return fnv1a(canonical_text()); }
};

inline double log_weight(const GibbsModel& model,
                         const ParticleConfiguration& config) {
  const std::vector<double>& x = config.positions;
  const std::size_t N = x.size();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  if (N != model.n_particles)
    throw ConfigError("log_weight: particle count mismatch");
  double site = 0.0;
  for (double xi : x) {
    if (!model.in_domain(xi)) return neg_inf;
    site += model.site_energy(xi);
  }
  double inter = 0.0;
  const bool blockwise = model.interaction == Interaction::within_block;
  std::vector<std::size_t> blk;
  if (blockwise) {
    blk.resize(N);
    for (std::size_t i = 0; i < N; ++i) blk[i] = model.block_index(x[i]);
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      if (blockwise && blk[i] != blk[j]) continue;
      const double d = x[i] - x[j];
      if (d == 0.0) return neg_inf;
      inter += std::log(std::abs(d));
    }
  const double Nb = double(N) * model.beta;
  return -0.5 * Nb * site + model.beta * inter - Nb * model.constant_term;
}

namespace detail {

// -2 int_{union of other cuts} ln|x-y| rho(y) dy, tabulated on Chebyshev
// points of `block`; integrand smooth since the other cuts are disjoint
inline BlockTable cross_cut_extra(const EquilibriumMeasure& eqm,
                                  std::size_t own_cut, const Cut& block,
                                  double scale, std::size_t nodes = 64) {
  BlockTable t;
  t.block = block;
  const std::vector<double> xs = chebyshev_points(block, nodes);
  t.values.resize(nodes);
  for (std::size_t m = 0; m < nodes; ++m) {
    double acc = 0.0;
    for (std::size_t j = 0; j < eqm.edges.size(); ++j) {
      if (j == own_cut) continue;
      const Cut& c = eqm.edges[j];
      acc += integrate_sqrt_edges(
          [&](double y) {
            return eqm.density(y) * std::log(std::abs(xs[m] - y));
          },
          c.A, c.B, 96);
    }
    t.values[m] = -2.0 * scale * acc;
  }
  return t;
}

// sum over ordered pairs of distinct cuts of the cross interaction energy
// int int rho(x) rho(y) ln|x-y| dx dy
inline double cross_cut_energy(const EquilibriumMeasure& eqm, int n = 96) {
  double total = 0.0;
  const std::size_t q = eqm.edges.size();
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      if (i == j) continue;
      const Cut& ci = eqm.edges[i];
      const Cut& cj = eqm.edges[j];
      total += integrate_sqrt_edges(
          [&](double xx) {
            return eqm.density(xx) *
                   integrate_sqrt_edges(
                       [&](double yy) {
                         return eqm.density(yy) * std::log(std::abs(xx - yy));
                       },
                       cj.A, cj.B, n);
          },
          ci.A, ci.B, n);
    }
  return total;
}

}  // namespace detail

// default block margin: half of the tightest admissible bound, so the
// margin checks below pass whenever any positive margin would
inline double default_kappa(const EquilibriumMeasure& eqm) {
  double bound = 0.1;
  for (std::size_t i = 0; i + 1 < eqm.edges.size(); ++i)
    bound = std::min(bound, 0.01 * (eqm.edges[i + 1].A - eqm.edges[i].B));
  for (const Cut& c : eqm.edges) bound = std::min(bound, 1.0 - c.length());
  return 0.5 * bound;
}

// checks the block-margin requirements: margin positive and below 0.1, well
// under every gap, and block diameters below 1
inline void check_kappa(const EquilibriumMeasure& eqm, double kappa) {
  if (!(kappa > 0.0 && kappa < 0.1))
    throw ConfigError("kappa must lie in (0, 0.1)");
  for (std::size_t i = 0; i + 1 < eqm.edges.size(); ++i) {
    const double gap = eqm.edges[i + 1].A - eqm.edges[i].B;
    if (!(kappa < 0.01 * gap))
      throw ConfigError("kappa too large for the gap of width " +
                        fmt_double(gap));
  }
  for (const Cut& c : eqm.edges)
    if (!(c.B - c.A + kappa < 1.0))
      throw ConfigError(
          "block diameter must stay below 1 (rescale the potential): cut "
          "length " +
          fmt_double(c.B - c.A));
}

inline std::vector<Cut> blocks_of(const EquilibriumMeasure& eqm,
                                  double kappa) {
  std::vector<Cut> blocks;
  for (const Cut& c : eqm.edges)
    blocks.push_back(Cut{c.A - 0.5 * kappa, c.B + 0.5 * kappa});
  return blocks;
}

// the full law conditioned on staying inside the delta-fattened support
inline GibbsModel build_restricted_model(const EquilibriumMeasure& eqm,
                                         const Potential& p, double beta,
                                         std::size_t N, double delta) {
  if (!(delta > 0.0)) throw ConfigError("build_restricted_model: delta <= 0");
  for (std::size_t i = 0; i + 1 < eqm.edges.size(); ++i)
    if (!(delta < 0.5 * (eqm.edges[i + 1].A - eqm.edges[i].B)))
      throw ConfigError("build_restricted_model: delta merges the cuts");
  GibbsModel m;
  m.potential = p;
  m.beta = beta;
  m.n_particles = N;
  for (const Cut& c : eqm.edges) m.domain.push_back(Cut{c.A - delta, c.B + delta});
  m.interaction = Interaction::full;
  m.label = p.label + "_restricted";
  m.validate();
  return m;
}

// block-decomposed law: particles interact only inside their own enlarged
// cut, cross-cut attraction enters through the per-block external term and
// the constant (N/2) * cross energy
inline GibbsModel build_decomposed_model(const EquilibriumMeasure& eqm,
                                         const Potential& p, double beta,
                                         std::size_t N, double kappa) {
  check_kappa(eqm, kappa);
  GibbsModel m;
  m.potential = p;
  m.beta = beta;
  m.n_particles = N;
  m.domain = blocks_of(eqm, kappa);
  m.interaction = Interaction::within_block;
  for (std::size_t i = 0; i < eqm.edges.size(); ++i)
    m.external_extra.push_back(
        detail::cross_cut_extra(eqm, i, m.domain[i], 1.0));
  m.constant_term = 0.5 * double(N) * detail::cross_cut_energy(eqm);
  m.label = p.label + "_decomposed";
  m.validate();
  return m;
}

// single-cut law on block i with the potential rescaled by c / R_i and the
// other cuts folded into the external term
inline GibbsModel build_cut_model(const EquilibriumMeasure& eqm,
                                  const Potential& p, double beta,
                                  std::size_t cut, std::size_t n_particles,
                                  double c, double kappa = 0.0) {
  if (cut >= eqm.edges.size()) throw ConfigError("build_cut_model: bad cut");
  if (!(c > 0.0)) throw ConfigError("build_cut_model: c must be positive");
  if (kappa <= 0.0) kappa = default_kappa(eqm);
  const double scale = c / eqm.filling_fractions[cut];
  GibbsModel m;
  m.potential = p;
  for (double& coef : m.potential.coefficients) coef *= scale;
  m.potential.offset *= scale;
  m.potential.label = p.label + "_cut" + std::to_string(cut);
  m.beta = beta;
  m.n_particles = n_particles;
  m.domain = {Cut{eqm.edges[cut].A - 0.5 * kappa,
                  eqm.edges[cut].B + 0.5 * kappa}};
  m.interaction = Interaction::full;
  m.external_extra.push_back(
      detail::cross_cut_extra(eqm, cut, m.domain[0], scale));
  m.label = m.potential.label;
  m.validate();
  return m;
}

// H_r(l) - H(l) from the two log-weights: both Hamiltonians are -log w/(N b)
inline double delta_H(const GibbsModel& full_model,
                      const GibbsModel& decomposed_model,
                      const ParticleConfiguration& config) {
  if (full_model.n_particles != decomposed_model.n_particles)
    throw ConfigError("delta_H: particle count mismatch");
  const double lw_full = log_weight(full_model, config);
  const double lw_dec = log_weight(decomposed_model, config);
  if (!std::isfinite(lw_full) || !std::isfinite(lw_dec))
    throw ConfigError("delta_H: configuration outside the blocks");
  const double Nb = double(full_model.n_particles) * full_model.beta;
  return (lw_full - lw_dec) / Nb;
}

}  // namespace loggas
