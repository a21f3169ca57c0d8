#pragma once

#include "rpca/core.hpp"

#include <utility>

namespace rpca {

// Entrywise soft threshold: sign(z) * max(|z| - nu, 0). Exact prox of
// nu ||.||_1.
Matrix vec_shrink(const Matrix& z, double nu);

// Singular value soft threshold U diag((sigma - nu)_+) V^T via full SVD.
// Exact prox of nu ||.||_*.
Matrix mat_shrink(const Matrix& z, double nu);

// Value and gradient pair of a smoothed norm.
struct SmoothedValue {
  double value = 0.0;
  Matrix gradient;
};

// Huber smoothing of rho ||S||_1: max over ||Z||_inf <= rho of
// <S,Z> - (nu/2) ||Z||_F^2. Entrywise value s^2/(2 nu) for |s| <= nu rho,
// else rho |s| - nu rho^2 / 2; gradient sign(s) min(|s|/nu, rho).
SmoothedValue smoothed_l1(const Matrix& s, double nu, double rho);

// Smoothing of the nuclear norm: max over ||W||_2 <= 1 of
// <L,W> - (mu/2) ||W||_F^2. Value sums the same Huber function of the
// singular values; gradient U diag(min(sigma/mu, 1)) V^T.
SmoothedValue smoothed_nuclear(const Matrix& l, double mu);

// Euclidean projection onto { X : ||X - center||_F <= radius }.
Matrix proj_fro_ball(const Matrix& z, const Matrix& center, double radius);

// Entrywise prox of t * h_{nu,rho} where h is the Huber function of
// smoothed_l1: x = nu z / (nu + t) in the quadratic regime
// (|z| <= rho (nu + t)), else a soft threshold by t rho.
Matrix huber_prox(const Matrix& z, double nu, double rho, double t);

// Exact minimizer of ||S||_1 + (1/(2 xi)) ||L - L_tilde||_F^2 subject to
// ||L + S - M||_F <= sigma. If (L_tilde, 0) is feasible it is returned
// directly; otherwise the KKT multiplier of the ball constraint is pinned
// down by sorting the entrywise breakpoints of |L_tilde - M| and solving the
// scalar equation on the active segment (O(mn log mn) total).
std::pair<Matrix, Matrix> joint_prox_chi(const Matrix& l_tilde,
                                         const Matrix& m, double sigma,
                                         double xi);

} // namespace rpca
