#pragma once

#include "rpca/solve.hpp"

namespace rpca {

// Proximal gradient on the quadratic-penalty objective
// ||L||_* + rho ||S||_1 + (mu/2) ||L+S-M||_F^2. Monotone; throws
// DivergenceError if the objective rises two iterations in a row.
SolveResult solve_pgm(const RpcaProblem& problem, const SolverOptions& options,
                      const TraceHooks& hooks = {});

// Same objective with Nesterov extrapolation (non-monotone).
SolveResult solve_apgm(const RpcaProblem& problem,
                       const SolverOptions& options,
                       const TraceHooks& hooks = {});

// Inexact augmented Lagrangian for the exact split L+S=M: each outer step
// approximately minimizes the augmented Lagrangian by alternating prox
// sweeps, then updates the multiplier.
SolveResult solve_ialm(const RpcaProblem& problem,
                       const SolverOptions& options,
                       const TraceHooks& hooks = {});

// Two-block ADMM for the exact split L+S=M.
SolveResult solve_admm2(const RpcaProblem& problem,
                        const SolverOptions& options,
                        const TraceHooks& hooks = {});

// Symmetric ADMM (two multiplier updates per sweep) on the split problem
// with the l1 term replaced by its Huber smoothing g_nu.
SolveResult solve_alt_linearization(const RpcaProblem& problem,
                                    const SolverOptions& options,
                                    const TraceHooks& hooks = {});

// Three-block ADMM for L+S+N=M with ||N||_F <= sigma. No convergence
// guarantee; returns IterationCap with the residual history when the
// tolerance is not met.
SolveResult solve_admm3_constrained(const RpcaProblem& problem,
                                    const SolverOptions& options,
                                    const TraceHooks& hooks = {});

// Three-block ADMM for the penalty form
// ||L||_* + rho ||S||_1 + mu ||N||_F^2 with L+S+N=M.
SolveResult solve_admm3_penalty(const RpcaProblem& problem,
                                const SolverOptions& options,
                                const TraceHooks& hooks = {});

// Variable-penalty ADMM on the splitting Lhat = L, (L,S) in the noise
// ball; the penalty grows linearly, beta_k = beta0 (1 + c k), so
// sum 1/beta_k diverges as its convergence condition requires.
SolveResult solve_admip(const RpcaProblem& problem,
                        const SolverOptions& options,
                        const TraceHooks& hooks = {});

// Accelerated proximal gradient on the partially smoothed objective
// f_mu(L) + rho ||S||_1 over the noise ball, using the sorted joint prox.
SolveResult solve_pspg(const RpcaProblem& problem,
                       const SolverOptions& options,
                       const TraceHooks& hooks = {});

// Frank-Wolfe on the bounded epigraph reformulation of the quadratic
// penalty model, with one extra proximal gradient step on S per iteration.
SolveResult solve_frank_wolfe_hybrid(const RpcaProblem& problem,
                                     const SolverOptions& options,
                                     const TraceHooks& hooks = {});

} // namespace rpca
