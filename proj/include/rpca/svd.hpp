#pragma once

#include "rpca/core.hpp"

#include <Eigen/Dense>

namespace rpca {

// Leading singular triplets of a matrix: U (m x k) and V (n x k) have
// orthonormal columns, singular values sorted nonincreasing.
struct SvdResult {
  Matrix U;
  Eigen::VectorXd singular_values;
  Matrix V;

  Index rank() const { return singular_values.size(); }
  Matrix reconstruct() const {
    return U * singular_values.asDiagonal() * V.transpose();
  }
};

class PartialSvdError : public std::runtime_error {
public:
  PartialSvdError(const std::string& msg, SvdResult best)
      : std::runtime_error(msg), best_iterate(std::move(best)) {}
  SvdResult best_iterate;
};

// All singular triplets via dense SVD.
SvdResult full_svd(const Matrix& z);

// Top-k singular triplets via Golub-Kahan-Lanczos bidiagonalization with
// full reorthogonalization. Deterministic given `seed` (drives the start
// vector). Each of the k values is accurate to `tol` relative, verified by
// the Lanczos residual bound. Falls back to the dense path for small
// matrices or k close to min(m,n). Throws PartialSvdError (carrying the
// best iterate) if the step cap is exhausted first.
SvdResult partial_svd(const Matrix& z, Index k, double tol = 1e-10,
                      std::uint64_t seed = 0x7c0fefadULL);

// Largest singular value with unit singular vectors. Throws
// std::invalid_argument for the zero matrix.
struct TopSingularPair {
  double sigma1 = 0.0;
  Matrix u; // m x 1
  Matrix v; // n x 1
};
TopSingularPair top_singular_pair(const Matrix& z,
                                  std::uint64_t seed = 0x7c0fefadULL);

// Singular value soft-threshold for solver hot loops: dense SVD when
// min(m,n) <= 64, otherwise partial SVD grown until sigma_k <= nu so no
// surviving value is missed. `rank_hint` seeds the bracketing. `work` is a
// deterministic flop estimate of what was computed, used as the reproducible
// time base of solver traces.
struct ShrinkResult {
  Matrix X;
  Index rank = 0;
  double work = 0.0;
};
ShrinkResult mat_shrink_tracked(const Matrix& z, double nu, Index rank_hint,
                                std::uint64_t seed = 0x7c0fefadULL);

// Flop-count model shared by the trace time base.
double svd_work(Index m, Index n, Index k); // k = min(m,n) means dense
inline double elem_work(Index m, Index n, double passes) {
  return passes * static_cast<double>(m) * static_cast<double>(n);
}

inline constexpr Index kDenseSvdCutoff = 64;

} // namespace rpca
