#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/gibbs.hpp"
#include "loggas/rng.hpp"

namespace loggas {

// one exact draw from the quadratic-confinement ensemble
//   density ∝ prod |l_i - l_j|^beta * exp(-(N beta / 4) sum l_i^2),
// i.e. V(x) = x^2/2: eigenvalues of the symmetric tridiagonal matrix with
// diagonal N(0, 2/(N beta)) and off-diagonal chi_{beta (N-k)} / sqrt(N beta),
// k = 1..N-1. At beta = 2 this is diagonal N(0, 1/N), off-diagonal
// chi_{2(N-k)} / sqrt(2N). Exact second moment: E[sum l_i^2] = 2/beta + N - 1.
inline std::vector<double> tridiagonal_eigenvalues(std::size_t N, double beta,
                                                   CounterRng& rng) {
  if (N < 1) throw ConfigError("tridiagonal_eigenvalues: N < 1");
  if (!(beta > 0.0)) throw ConfigError("tridiagonal_eigenvalues: beta <= 0");
  const double s = 1.0 / std::sqrt(double(N) * beta);
  const Eigen::Index n = Eigen::Index(N);
  Eigen::VectorXd main_diag(n), sub_diag(n > 1 ? n - 1 : 0);
  for (Eigen::Index i = 0; i < n; ++i)
    main_diag[i] = std::sqrt(2.0) * s * rng.normal();
  for (Eigen::Index k = 1; k < n; ++k)
    sub_diag[k - 1] = s * rng.chi(beta * double(n - k));
  if (N == 1) return {main_diag[0]};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(main_diag, sub_diag, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("tridiagonal_eigenvalues: eigensolver failed");
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + N);
  std::sort(out.begin(), out.end());
  return out;
}

inline ParticleConfiguration tridiagonal_sample(double beta, std::size_t N,
                                                std::uint64_t seed) {
  CounterRng rng(seed);
  ParticleConfiguration cfg;
  cfg.positions = tridiagonal_eigenvalues(N, beta, rng);
  return cfg;
}

}  // namespace loggas
