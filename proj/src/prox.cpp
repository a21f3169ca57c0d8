#include "rpca/prox.hpp"

#include "rpca/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace rpca {

Matrix vec_shrink(const Matrix& z, double nu) {
  if (nu < 0.0) throw std::invalid_argument("vec_shrink: nu must be >= 0");
  return z.unaryExpr([nu](double x) {
    double mag = std::abs(x) - nu;
    return mag > 0.0 ? (x > 0.0 ? mag : -mag) : 0.0;
  });
}

Matrix mat_shrink(const Matrix& z, double nu) {
  if (nu < 0.0) throw std::invalid_argument("mat_shrink: nu must be >= 0");
  SvdResult svd = full_svd(z);
  Index r = 0;
  while (r < svd.rank() && svd.singular_values(r) > nu) ++r;
  if (r == 0) return Matrix::Zero(z.rows(), z.cols());
  return svd.U.leftCols(r) *
         (svd.singular_values.head(r).array() - nu).matrix().asDiagonal() *
         svd.V.leftCols(r).transpose();
}

namespace {

double huber_value(double s, double nu, double rho) {
  const double a = std::abs(s);
  return a <= nu * rho ? s * s / (2.0 * nu) : rho * a - nu * rho * rho / 2.0;
}

} // namespace

SmoothedValue smoothed_l1(const Matrix& s, double nu, double rho) {
  if (nu <= 0.0 || rho <= 0.0)
    throw std::invalid_argument("smoothed_l1: nu, rho must be > 0");
  SmoothedValue out;
  out.gradient.resize(s.rows(), s.cols());
  double value = 0.0;
  for (Index j = 0; j < s.cols(); ++j) {
    for (Index i = 0; i < s.rows(); ++i) {
      const double x = s(i, j);
      value += huber_value(x, nu, rho);
      const double g = std::min(std::abs(x) / nu, rho);
      out.gradient(i, j) = x >= 0.0 ? g : -g;
    }
  }
  out.value = value;
  return out;
}

SmoothedValue smoothed_nuclear(const Matrix& l, double mu) {
  if (mu <= 0.0)
    throw std::invalid_argument("smoothed_nuclear: mu must be > 0");
  SvdResult svd = full_svd(l);
  SmoothedValue out;
  double value = 0.0;
  Eigen::VectorXd w(svd.rank());
  for (Index i = 0; i < svd.rank(); ++i) {
    const double sigma = svd.singular_values(i);
    value += huber_value(sigma, mu, 1.0);
    w(i) = std::min(sigma / mu, 1.0);
  }
  out.value = value;
  out.gradient = svd.U * w.asDiagonal() * svd.V.transpose();
  return out;
}

Matrix proj_fro_ball(const Matrix& z, const Matrix& center, double radius) {
  if (radius < 0.0)
    throw std::invalid_argument("proj_fro_ball: radius must be >= 0");
  if (z.rows() != center.rows() || z.cols() != center.cols())
    throw std::invalid_argument("proj_fro_ball: shape mismatch");
  if (radius == 0.0) return center;
  Matrix diff = z - center;
  const double dist = norm_fro(diff);
  if (dist <= radius) return z;
  return center + diff * (radius / dist);
}

Matrix huber_prox(const Matrix& z, double nu, double rho, double t) {
  if (nu <= 0.0 || rho <= 0.0 || t <= 0.0)
    throw std::invalid_argument("huber_prox: parameters must be > 0");
  const double knee = rho * (nu + t);
  const double scale = nu / (nu + t);
  return z.unaryExpr([=](double x) {
    if (std::abs(x) <= knee) return scale * x;
    return x > 0.0 ? x - t * rho : x + t * rho;
  });
}

std::pair<Matrix, Matrix> joint_prox_chi(const Matrix& l_tilde,
                                         const Matrix& m, double sigma,
                                         double xi) {
  if (xi <= 0.0) throw std::invalid_argument("joint_prox_chi: xi must be > 0");
  if (sigma < 0.0)
    throw std::invalid_argument("joint_prox_chi: sigma must be >= 0");
  if (l_tilde.rows() != m.rows() || l_tilde.cols() != m.cols())
    throw std::invalid_argument("joint_prox_chi: shape mismatch");

  const Matrix d = m - l_tilde;
  const double dist = norm_fro(l_tilde - m);
  if (dist <= sigma) return {l_tilde, Matrix::Zero(m.rows(), m.cols())};

  if (sigma == 0.0) {
    Matrix s = vec_shrink(d, xi);
    return {m - s, std::move(s)};
  }

  // Multiplier theta >= 0 of the ball constraint enters only through the
  // soft threshold c = xi + 1/theta applied to D = M - L_tilde:
  //   S(c) = vec_shrink(D, c),  residual norm = ((c - xi)/c) * r(c),
  //   r(c)^2 = sum min(|D_ij|, c)^2.
  // g(c) = ((c - xi)/c) r(c) is strictly increasing on (xi, inf) with
  // g(xi+) = 0 and g(inf) = ||D||_F > sigma, so the equation g(c) = sigma
  // has a unique root. r(c)^2 is piecewise quadratic with breakpoints at
  // the sorted |D_ij|; prefix sums make each evaluation O(log mn).
  const Index count = d.size();
  std::vector<double> mags(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) mags[static_cast<std::size_t>(i)] =
      std::abs(d.data()[i]);
  std::sort(mags.begin(), mags.end());
  std::vector<double> prefix_sq(mags.size() + 1, 0.0);
  for (std::size_t i = 0; i < mags.size(); ++i)
    prefix_sq[i + 1] = prefix_sq[i] + mags[i] * mags[i];

  auto g = [&](double c) {
    const auto it = std::upper_bound(mags.begin(), mags.end(), c);
    const std::size_t t = static_cast<std::size_t>(it - mags.begin());
    const double below = prefix_sq[t];
    const double n_above = static_cast<double>(mags.size() - t);
    const double r = std::sqrt(below + n_above * c * c);
    return (c - xi) / c * r;
  };

  double lo = xi;
  double hi = std::max(2.0 * xi, mags.back());
  while (g(hi) < sigma) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < sigma ? lo : hi) = mid;
  }
  const double c = 0.5 * (lo + hi);

  Matrix s = vec_shrink(d, c);
  Matrix l = ((c - xi) * l_tilde + xi * (m - s)) / c;
  return {std::move(l), std::move(s)};
}

} // namespace rpca
