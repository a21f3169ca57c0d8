#include "rpca/core.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace rpca {

void ensure_finite(const Matrix& m, const std::string& what) {
  if (!m.allFinite())
    throw InvalidMatrixError(what + ": non-finite entry");
}

Matrix matrix_from_rows(Index rows, Index cols, const std::vector<double>& data,
                        const std::string& what) {
  if (rows <= 0 || cols <= 0)
    throw InvalidMatrixError(what + ": dimensions must be positive");
  if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) !=
      data.size())
    throw InvalidMatrixError(what + ": entry count does not match dimensions");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = data[static_cast<std::size_t>(i) * cols + j];
  ensure_finite(m, what);
  return m;
}

namespace {

// Pairwise reduction over a strided view; deterministic for a fixed shape.
template <class Fn>
double pairwise_accumulate(const double* data, std::ptrdiff_t n, Fn term) {
  if (n <= 32) {
    double acc = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) acc += term(data[i]);
    return acc;
  }
  const std::ptrdiff_t half = n / 2;
  return pairwise_accumulate(data, half, term) +
         pairwise_accumulate(data + half, n - half, term);
}

} // namespace

double norm_l1(const Matrix& m) {
  return pairwise_accumulate(m.data(), m.size(),
                             [](double x) { return std::abs(x); });
}

double norm_fro_sq(const Matrix& m) {
  return pairwise_accumulate(m.data(), m.size(),
                             [](double x) { return x * x; });
}

double nuclear_norm(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return pairwise_accumulate(sv.data(), sv.size(),
                             [](double x) { return x; });
}

ObservationMask::ObservationMask(std::vector<std::pair<Index, Index>> indices,
                                 Index rows, Index cols)
    : indices_(std::move(indices)), rows_(rows), cols_(cols) {
  for (const auto& [i, j] : indices_) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw InvalidMatrixError("ObservationMask: index out of range");
  }
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()),
                 indices_.end());
}

ObservationMask ObservationMask::full(Index rows, Index cols) {
  std::vector<std::pair<Index, Index>> idx;
  idx.reserve(static_cast<std::size_t>(rows) * cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) idx.emplace_back(i, j);
  return ObservationMask(std::move(idx), rows, cols);
}

Matrix proj_omega(const Matrix& z, const ObservationMask& mask) {
  if (mask.rows() > z.rows() || mask.cols() > z.cols())
    throw InvalidMatrixError("proj_omega: mask exceeds matrix bounds");
  Matrix out = Matrix::Zero(z.rows(), z.cols());
  for (const auto& [i, j] : mask.indices()) out(i, j) = z(i, j);
  return out;
}

double RpcaProblem::effective_rho() const {
  if (rho > 0.0) return rho;
  return 1.0 / std::sqrt(static_cast<double>(std::max(rows(), cols())));
}

void RpcaProblem::validate() const {
  if (M.size() == 0) throw std::invalid_argument("RpcaProblem: empty matrix");
  ensure_finite(M, "RpcaProblem.M");
  if (rho < 0.0) throw std::invalid_argument("RpcaProblem: rho must be > 0");
  if (sigma < 0.0)
    throw std::invalid_argument("RpcaProblem: sigma must be >= 0");
  if (mu <= 0.0) throw std::invalid_argument("RpcaProblem: mu must be > 0");
  if (rank_cap < 0 || rank_cap > std::min(rows(), cols()))
    throw std::invalid_argument("RpcaProblem: rank_cap out of range");
  if (sparsity_cap < 0 || sparsity_cap > rows() * cols())
    throw std::invalid_argument("RpcaProblem: sparsity_cap out of range");
}

Matrix Decomposition::residual(const Matrix& m) const {
  Matrix r = L + S - m;
  if (N) r += *N;
  return r;
}

double objective(const RpcaProblem& problem, const Decomposition& d,
                 Formulation formulation) {
  const double rho = problem.effective_rho();
  switch (formulation) {
    case Formulation::RPCP:
    case Formulation::SPCP:
      return nuclear_norm(d.L) + rho * norm_l1(d.S);
    case Formulation::PenaltySPCP:
      return nuclear_norm(d.L) + rho * norm_l1(d.S) +
             0.5 * problem.mu * norm_fro_sq(d.L + d.S - problem.M);
    case Formulation::PenaltySPCP3: {
      if (!d.N)
        throw std::invalid_argument("objective: PenaltySPCP3 requires N");
      return nuclear_norm(d.L) + rho * norm_l1(d.S) +
             problem.mu * norm_fro_sq(*d.N);
    }
    case Formulation::Factored:
      return norm_fro_sq(d.L + d.S - problem.M);
    case Formulation::FW: {
      const double lambda_l = 1.0 / problem.mu;
      const double lambda_s = rho / problem.mu;
      return 0.5 * norm_fro_sq(d.L + d.S - problem.M) +
             lambda_l * nuclear_norm(d.L) + lambda_s * norm_l1(d.S);
    }
  }
  throw std::invalid_argument("objective: unknown formulation");
}

double relative_error(const Decomposition& d, const Matrix& L0,
                      const Matrix& S0) {
  if (d.L.rows() != L0.rows() || d.L.cols() != L0.cols() ||
      d.S.rows() != S0.rows() || d.S.cols() != S0.cols())
    throw std::invalid_argument("relative_error: shape mismatch");
  const double nl = norm_fro(L0);
  const double ns = norm_fro(S0);
  if (nl == 0.0 || ns == 0.0)
    throw std::invalid_argument("relative_error: zero-norm ground truth");
  return norm_fro(d.L - L0) / nl + norm_fro(d.S - S0) / ns;
}

} // namespace rpca
