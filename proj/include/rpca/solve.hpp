#pragma once

#include "rpca/core.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rpca {

// Per-algorithm hyperparameters. A value of 0 on the fields marked
// "derived" selects the documented data-dependent default at solve time;
// everything else is taken literally.
struct SolverOptions {
  int max_iter = 1000;
  double tol = 1e-7;
  double tau = 0.0;         // gradient step; derived: 1/(2 mu)
  double beta0 = 0.0;       // penalty; derived: mn / (4 ||M||_1)
  double beta_growth = 0.0; // ADMIP linear growth rate c
  double beta_max = 1e12;
  int inner_iter = 10;      // IALM alternating sweeps per outer step
  double nu = 1e-3;         // l1 smoothing width
  double mu_smooth = 1e-3;  // nuclear smoothing width
  double lambda_L = 0.0;    // FW nuclear weight; derived: 1/mu
  double lambda_S = 0.0;    // FW l1 weight; derived: rho/mu
  double rho1 = 0.0;        // factored ridge weight; derived: 1/mu
  double rho2 = 0.0;        // factored l1 weight; derived: rho/mu
  double rho3 = 1.0;        // factored noise weight
  double alpha = 0.1;       // corruption fraction kept by the sparse estimator
  double eta = 0.0;         // explicit gradient step; derived per solver
  double prox_weight = 1.0; // h in the proximal metric H = h I
  std::uint64_t seed = 0;
  int trace_every = 1;
};

enum class SolveStatus { Converged, IterationCap };

// Optional per-record sink and relative-error evaluator; when `rel_error`
// is set the solver fills TraceRecord::rel_error with its value at the
// current iterate.
struct TraceHooks {
  std::function<void(const TraceRecord&)> sink;
  std::function<double(const Matrix& l, const Matrix& s)> rel_error;
};

// Factorization-based iterate (L = U V^T) plus the sparse/noise parts and
// the multiplier, exposed so stationarity measures can be evaluated on it.
struct FactoredState {
  Matrix U;
  Matrix V;
  Matrix S;
  std::optional<Matrix> N;
  std::optional<Matrix> Lambda;
};

struct SolveResult {
  Decomposition decomposition;
  SolveStatus status = SolveStatus::IterationCap;
  std::vector<TraceRecord> traces;
  std::optional<FactoredState> factored;
  int iterations = 0;
  int regularized_solves = 0; // LMafit normal equations that needed Tikhonov
};

using SolverFn = std::function<SolveResult(
    const RpcaProblem&, const SolverOptions&, const TraceHooks&)>;

// id -> solver for the CLI and the benchmark harness.
const std::map<std::string, SolverFn>& solver_registry();

// Accumulates trace records on the deterministic work-model time base
// (flop estimate / 1e9). Always records the first and last sample,
// intermediate ones every `trace_every` iterations.
class Tracer {
public:
  Tracer(const SolverOptions& options, const TraceHooks& hooks)
      : every_(std::max(options.trace_every, 1)), hooks_(hooks) {}

  void add_work(double flops) { work_ += flops; }

  void record(std::int64_t iter, double objective, double primal_residual,
              const Matrix& l, const Matrix& s,
              std::optional<double> stationarity = std::nullopt,
              bool force = false) {
    if (!force && iter % every_ != 0) return;
    TraceRecord rec;
    rec.iter = iter;
    rec.elapsed_seconds = work_ / 1e9;
    rec.objective = objective;
    rec.primal_residual = primal_residual;
    if (hooks_.rel_error) rec.rel_error = hooks_.rel_error(l, s);
    rec.stationarity = stationarity;
    if (!records_.empty() && records_.back().iter == iter) records_.pop_back();
    records_.push_back(rec);
    if (hooks_.sink) hooks_.sink(records_.back());
  }

  std::vector<TraceRecord> take() { return std::move(records_); }

private:
  std::int64_t every_;
  const TraceHooks& hooks_;
  double work_ = 0.0;
  std::vector<TraceRecord> records_;
};

} // namespace rpca
