#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "loggas/errors.hpp"

namespace loggas {

// nonnegative weights on an increasing grid, total mass 1; cell half-widths
// give each node a box extent used by the smoothed log kernel
struct DiscreteMeasure {
  std::vector<double> grid;
  std::vector<double> weights;
  std::vector<double> cell_eps;

  void validate() const {
    if (grid.size() != weights.size() || grid.size() != cell_eps.size())
      throw ConfigError("DiscreteMeasure: field length mismatch");
    double mass = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i > 0 && grid[i] <= grid[i - 1])
        throw ConfigError("DiscreteMeasure: grid not strictly increasing");
      if (weights[i] < 0.0)
        throw ConfigError("DiscreteMeasure: negative weight");
      mass += weights[i];
    }
    if (std::abs(mass - 1.0) > 1e-12)
      throw ConfigError("DiscreteMeasure: mass != 1");
  }

  // midpoint-convention CDF at node i: everything below plus half the cell
  double cdf_at_node(std::size_t i) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) acc += weights[j];
    return acc + 0.5 * weights[i];
  }
};

// signed weights on an increasing grid
struct SignedGridMeasure {
  std::vector<double> grid;
  std::vector<double> weights;
  double total_mass = 0.0;

  static SignedGridMeasure make(std::vector<double> grid,
                                std::vector<double> weights) {
    SignedGridMeasure m{std::move(grid), std::move(weights), 0.0};
    if (m.grid.size() != m.weights.size())
      throw ConfigError("SignedGridMeasure: field length mismatch");
    for (std::size_t i = 1; i < m.grid.size(); ++i)
      if (m.grid[i] <= m.grid[i - 1])
        throw ConfigError("SignedGridMeasure: grid not strictly increasing");
    for (double w : m.weights) m.total_mass += w;
    return m;
  }

  // box half-width of node i from midpoints to the neighbors
  double cell_eps(std::size_t i) const {
    const std::size_t n = grid.size();
    if (n == 1) return 0.5;
    if (i == 0) return 0.5 * (grid[1] - grid[0]);
    if (i + 1 == n) return 0.5 * (grid[n - 1] - grid[n - 2]);
    return 0.25 * (grid[i + 1] - grid[i - 1]);
  }
};

// maximal runs of weight > threshold, separated by >= min_gap_cells below it
struct ClusterSpan {
  std::size_t lo = 0, hi = 0;  // inclusive node indices
};

inline std::vector<ClusterSpan> support_clusters(const DiscreteMeasure& m,
                                                 double threshold = 1e-8,
                                                 std::size_t min_gap_cells = 3) {
  std::vector<ClusterSpan> spans;
  const std::size_t n = m.grid.size();
  std::size_t i = 0;
  while (i < n) {
    while (i < n && m.weights[i] <= threshold) ++i;
    if (i >= n) break;
    std::size_t lo = i, hi = i, j = i;
    while (j < n) {
      if (m.weights[j] > threshold) {
        hi = j;
        ++j;
      } else {
        std::size_t gap = 0, k = j;
        while (k < n && m.weights[k] <= threshold) ++gap, ++k;
        if (gap >= min_gap_cells || k >= n) break;
        j = k;
      }
    }
    spans.push_back({lo, hi});
    i = hi + 1;
  }
  return spans;
}

}  // namespace loggas
