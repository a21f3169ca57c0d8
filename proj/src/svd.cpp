#include "rpca/svd.hpp"

#include "rpca/rng.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace rpca {

namespace {

SvdResult from_eigen_svd(const Eigen::BDCSVD<Matrix>& svd, Index k) {
  SvdResult r;
  r.U = svd.matrixU().leftCols(k);
  r.singular_values = svd.singularValues().head(k);
  r.V = svd.matrixV().leftCols(k);
  return r;
}

// Twice-iterated classical Gram-Schmidt against the first `count` columns.
void reorthogonalize(Eigen::VectorXd& w, const Matrix& basis, Index count) {
  if (count == 0) return;
  auto q = basis.leftCols(count);
  for (int pass = 0; pass < 2; ++pass) w.noalias() -= q * (q.transpose() * w);
}

// Deterministic unit start vector.
Eigen::VectorXd seeded_unit(Index n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.normal();
  double nrm = v.norm();
  if (nrm == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / nrm;
}

// Completes `basis` (first `count` columns filled) with one more unit column
// orthogonal to them; returns false if the space is exhausted numerically.
bool fresh_orthogonal_column(Matrix& basis, Index count, Rng& rng,
                             Eigen::VectorXd& out) {
  const Index n = basis.rows();
  for (int attempt = 0; attempt < 8; ++attempt) {
    for (Index i = 0; i < n; ++i) out(i) = rng.normal();
    reorthogonalize(out, basis, count);
    double nrm = out.norm();
    if (nrm > 1e-8) {
      out /= nrm;
      return true;
    }
  }
  return false;
}

} // namespace

SvdResult full_svd(const Matrix& z) {
  Eigen::BDCSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return from_eigen_svd(svd, std::min(z.rows(), z.cols()));
}

SvdResult partial_svd(const Matrix& z, Index k, double tol,
                      std::uint64_t seed) {
  const Index m = z.rows();
  const Index n = z.cols();
  const Index minmn = std::min(m, n);
  if (k < 1 || k > minmn)
    throw std::invalid_argument("partial_svd: k out of range");

  if (minmn <= kDenseSvdCutoff || 2 * k >= minmn) {
    Eigen::BDCSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return from_eigen_svd(svd, k);
  }

  // Golub-Kahan-Lanczos: Z V_j = U_j B_j with B_j lower bidiagonal
  // (alphas on the diagonal, betas below). Full reorthogonalization keeps
  // the bases orthonormal at desk scale.
  Rng rng(seed);
  const Index max_steps = minmn;
  Matrix us(m, max_steps);
  Matrix vs(n, max_steps);
  Eigen::VectorXd alphas(max_steps);
  Eigen::VectorXd betas(max_steps); // betas(j) couples step j to j+1

  Eigen::VectorXd v = seeded_unit(n, rng.next_u64());
  Eigen::VectorXd u(m), w(n);
  Index steps = 0;
  double beta_last = 0.0;
  bool exhausted = false;

  auto ritz = [&](Index j) -> std::pair<SvdResult, Eigen::VectorXd> {
    Matrix b = Matrix::Zero(j, j);
    for (Index i = 0; i < j; ++i) {
      b(i, i) = alphas(i);
      if (i + 1 < j) b(i + 1, i) = betas(i);
    }
    Eigen::JacobiSVD<Matrix> small(b,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult r;
    const Index kk = std::min(k, j);
    r.U = us.leftCols(j) * small.matrixU().leftCols(kk);
    r.V = vs.leftCols(j) * small.matrixV().leftCols(kk);
    r.singular_values = small.singularValues().head(kk);
    // Residual bound per triplet: |beta_j * U_small(last,i)|.
    Eigen::VectorXd resid =
        (beta_last * small.matrixU().row(j - 1).head(kk)).cwiseAbs();
    return {std::move(r), std::move(resid)};
  };

  while (steps < max_steps) {
    const Index j = steps;
    vs.col(j) = v;
    u.noalias() = z * v;
    if (j > 0) u -= beta_last * us.col(j - 1);
    reorthogonalize(u, us, j);
    double alpha = u.norm();
    if (alpha <= 1e-14 * std::max(1.0, z.norm())) {
      // Invariant subspace hit on the left; restart or stop.
      if (!fresh_orthogonal_column(us, j, rng, u)) {
        exhausted = true;
        break;
      }
      alpha = 0.0;
      u.normalize();
    } else {
      u /= alpha;
    }
    us.col(j) = u;
    alphas(j) = alpha;
    ++steps;

    w.noalias() = z.transpose() * u;
    w -= alpha * vs.col(j);
    reorthogonalize(w, vs, j + 1);
    double beta = w.norm();
    if (beta <= 1e-14 * std::max(1.0, z.norm())) {
      if (steps >= minmn || !fresh_orthogonal_column(vs, j + 1, rng, w)) {
        beta_last = 0.0;
        break;
      }
      beta = 0.0;
      w.normalize();
    } else {
      w /= beta;
    }
    betas(j) = beta;
    beta_last = beta;
    v = w;

    if (steps >= k) {
      auto [result, resid] = ritz(steps);
      bool done = true;
      for (Index i = 0; i < result.rank(); ++i) {
        double scale = std::max(result.singular_values(i),
                                1e-300 + result.singular_values(0) * 1e-14);
        if (resid(i) > tol * scale) {
          done = false;
          break;
        }
      }
      if (done || steps == max_steps) return std::move(result);
    }
  }

  // Breakdown before k steps: the captured subspace is exact; pad the
  // remaining triplets with zero singular values on fresh directions.
  auto [result, resid] = steps > 0
                             ? ritz(steps)
                             : std::pair<SvdResult, Eigen::VectorXd>{
                                   SvdResult{Matrix(m, 0), Eigen::VectorXd(0),
                                             Matrix(n, 0)},
                                   Eigen::VectorXd(0)};
  (void)resid;
  if (result.rank() < k) {
    Index have = result.rank();
    Matrix u_ext(m, k), v_ext(n, k);
    Eigen::VectorXd s_ext = Eigen::VectorXd::Zero(k);
    u_ext.leftCols(have) = result.U;
    v_ext.leftCols(have) = result.V;
    s_ext.head(have) = result.singular_values;
    Eigen::VectorXd cu(m), cv(n);
    for (Index i = have; i < k; ++i) {
      if (!fresh_orthogonal_column(u_ext, i, rng, cu) ||
          !fresh_orthogonal_column(v_ext, i, rng, cv))
        throw PartialSvdError("partial_svd: could not complete basis",
                              std::move(result));
      u_ext.col(i) = cu;
      v_ext.col(i) = cv;
    }
    return {std::move(u_ext), std::move(s_ext), std::move(v_ext)};
  }
  if (exhausted)
    throw PartialSvdError("partial_svd: iteration cap without convergence",
                          std::move(result));
  return std::move(result);
}

TopSingularPair top_singular_pair(const Matrix& z, std::uint64_t seed) {
  if (z.size() == 0 || z.lpNorm<Eigen::Infinity>() == 0.0)
    throw std::invalid_argument("top_singular_pair: zero matrix");
  SvdResult r = partial_svd(z, 1, 1e-10, seed);
  TopSingularPair p;
  p.sigma1 = r.singular_values(0);
  p.u = r.U;
  p.v = r.V;
  return p;
}

double svd_work(Index m, Index n, Index k) {
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  const double dmin = static_cast<double>(std::min(m, n));
  if (k >= std::min(m, n)) return 14.0 * dm * dn * dmin; // dense estimate
  // Lanczos: ~2k+10 steps of two matvecs plus reorthogonalization.
  const double steps = std::min(dmin, 2.0 * static_cast<double>(k) + 10.0);
  return steps * (4.0 * dm * dn + 4.0 * steps * (dm + dn));
}

ShrinkResult mat_shrink_tracked(const Matrix& z, double nu, Index rank_hint,
                                std::uint64_t seed) {
  const Index minmn = std::min(z.rows(), z.cols());
  ShrinkResult out;
  if (minmn <= kDenseSvdCutoff) {
    SvdResult svd = full_svd(z);
    out.work = svd_work(z.rows(), z.cols(), minmn);
    Eigen::VectorXd kept =
        (svd.singular_values.array() - nu).max(0.0).matrix();
    Index r = 0;
    while (r < kept.size() && kept(r) > 0.0) ++r;
    out.rank = r;
    out.X = r == 0 ? Matrix::Zero(z.rows(), z.cols())
                   : Matrix(svd.U.leftCols(r) *
                            kept.head(r).asDiagonal() *
                            svd.V.leftCols(r).transpose());
    return out;
  }

  Index k = std::clamp<Index>(rank_hint + 4, 1, minmn);
  for (;;) {
    if (2 * k >= minmn) {
      SvdResult svd = full_svd(z);
      out.work += svd_work(z.rows(), z.cols(), minmn);
      Eigen::VectorXd kept =
          (svd.singular_values.array() - nu).max(0.0).matrix();
      Index r = 0;
      while (r < kept.size() && kept(r) > 0.0) ++r;
      out.rank = r;
      out.X = r == 0 ? Matrix::Zero(z.rows(), z.cols())
                     : Matrix(svd.U.leftCols(r) *
                              kept.head(r).asDiagonal() *
                              svd.V.leftCols(r).transpose());
      return out;
    }
    SvdResult svd = partial_svd(z, k, 1e-10, seed);
    out.work += svd_work(z.rows(), z.cols(), k);
    if (svd.singular_values(k - 1) > nu) {
      k = std::min(minmn, 2 * k); // might be missing values above nu
      continue;
    }
    Index r = 0;
    while (r < k && svd.singular_values(r) > nu) ++r;
    out.rank = r;
    out.X = r == 0 ? Matrix::Zero(z.rows(), z.cols())
                   : Matrix(svd.U.leftCols(r) *
                            (svd.singular_values.head(r).array() - nu)
                                .matrix()
                                .asDiagonal() *
                            svd.V.leftCols(r).transpose());
    return out;
  }
}

} // namespace rpca
