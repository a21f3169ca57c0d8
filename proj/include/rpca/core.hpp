#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpca {

// Dense real matrix, the universal value type for data, low-rank, sparse and
// noise components as well as factors and multipliers.
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Thrown when a matrix read from outside the library contains NaN/Inf or has
// inconsistent dimensions.
class InvalidMatrixError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative method detects divergence (e.g. a step size
// violating its descent condition).
class DivergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Verifies every entry is finite; `what` names the matrix in the error.
void ensure_finite(const Matrix& m, const std::string& what);

// Builds a matrix from row-major data, validating shape and finiteness.
Matrix matrix_from_rows(Index rows, Index cols, const std::vector<double>& data,
                        const std::string& what = "matrix");

// l1 norm and squared Frobenius norm accumulated by pairwise summation, so
// residuals are reproducible independent of vectorization width.
double norm_l1(const Matrix& m);
double norm_fro_sq(const Matrix& m);
inline double norm_fro(const Matrix& m) { return std::sqrt(norm_fro_sq(m)); }

// Sum of singular values, always via a full dense SVD.
double nuclear_norm(const Matrix& m);

// Sorted, duplicate-free set of observed entries.
class ObservationMask {
public:
  ObservationMask() = default;

  // Pairs are (row, col), zero-based. Sorted and deduplicated on
  // construction; throws InvalidMatrixError on out-of-range indices.
  ObservationMask(std::vector<std::pair<Index, Index>> indices, Index rows,
                  Index cols);

  static ObservationMask full(Index rows, Index cols);

  const std::vector<std::pair<Index, Index>>& indices() const {
    return indices_;
  }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::size_t size() const { return indices_.size(); }

private:
  std::vector<std::pair<Index, Index>> indices_;
  Index rows_ = 0;
  Index cols_ = 0;
};

// Entries on the mask are kept, everything else is zeroed.
Matrix proj_omega(const Matrix& z, const ObservationMask& mask);

// Which objective a Decomposition is scored against.
//
//   RPCP          ||L||_* + rho ||S||_1            (exact split L+S=M)
//   SPCP          ||L||_* + rho ||S||_1            (||L+S-M||_F <= sigma)
//   PenaltySPCP   ||L||_* + rho ||S||_1 + (mu/2) ||L+S-M||_F^2
//   PenaltySPCP3  ||L||_* + rho ||S||_1 + mu ||N||_F^2   (L+S+N=M)
//   Factored      ||L+S-M||_F^2 under rank/sparsity caps
//   FW            (1/2) ||L+S-M||_F^2 + lambda_L ||L||_* + lambda_S ||S||_1
//                 with lambda_L = 1/mu, lambda_S = rho/mu
enum class Formulation { RPCP, SPCP, PenaltySPCP, PenaltySPCP3, Factored, FW };

// Data matrix plus the model parameters shared by all formulations.
struct RpcaProblem {
  Matrix M;
  double rho = 0.0;   // sparsity tradeoff; 0 means 1/sqrt(max(m,n))
  double sigma = 0.0; // noise-ball radius
  double mu = 1.0;    // quadratic/noise penalty weight
  Index rank_cap = 0;
  Index sparsity_cap = 0;
  std::optional<ObservationMask> mask;

  Index rows() const { return M.rows(); }
  Index cols() const { return M.cols(); }

  // rho, falling back to the 1/sqrt(max(m,n)) default when unset.
  double effective_rho() const;

  // Throws std::invalid_argument if parameters violate their ranges.
  void validate() const;
};

// Candidate solution with cached score and constraint residual.
struct Decomposition {
  Matrix L;
  Matrix S;
  std::optional<Matrix> N;
  double objective = 0.0;
  double primal_residual = 0.0; // ||L + S (+ N) - M||_F

  Matrix residual(const Matrix& m) const;
};

double objective(const RpcaProblem& problem, const Decomposition& d,
                 Formulation formulation);

// ||L-L0||_F/||L0||_F + ||S-S0||_F/||S0||_F; throws on zero-norm truth.
double relative_error(const Decomposition& d, const Matrix& L0,
                      const Matrix& S0);

// One telemetry sample of a solver run.
struct TraceRecord {
  std::int64_t iter = 0;
  double elapsed_seconds = 0.0;
  double objective = 0.0;
  double primal_residual = 0.0;
  std::optional<double> rel_error;
  std::optional<double> stationarity;
};

} // namespace rpca
