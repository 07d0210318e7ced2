// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/lla.hpp"

#include "dsppa/errors.hpp"
#include "dsppa/verify.hpp"

namespace dsppa {

void LLAConfig::validate() const {
  if (outer_iters < 1) throw ArgumentError("LLA needs at least one outer pass");
  if (penalty.kind == PenaltyKind::L1) throw ArgumentError("LLA needs a SCAD or MCP penalty");
  penalty.validate();
}

WeightSpec compute_weights(const Vector& beta_current, const PenaltySpec& penalty, Index n) {
  if (penalty.kind == PenaltyKind::L1) throw ArgumentError("weights need a SCAD or MCP penalty");
  penalty.validate();
  const Index p = beta_current.size();
  WeightSpec w{Vector(p), Vector(p)};
  const double nn = static_cast<double>(n);
  for (Index j = 0; j < p; ++j) {
    const double d = penalty_derivative_scalar(penalty, std::abs(beta_current[j]));
    w.weight[j] = d / penalty.lambda;
    w.bound[j] = nn * d;
  }
  return w;
}

double nonconvex_objective(const Vector& beta, const PenaltySpec& penalty) {
  double s = 0.0;
  for (Index j = 0; j < beta.size(); ++j) s += penalty_value_scalar(penalty, std::abs(beta[j]));
  return s / penalty.lambda;
}

namespace {

SolverConfig inner_config(const LLAConfig& config) {
  SolverConfig inner = config.inner;
  inner.lambda = config.penalty.lambda;
  inner.weights.reset();
  inner.warm_start.reset();
  return inner;
}

}  // namespace

LLAReport lla_solve(const ProblemData& data, const LLAConfig& config) {
  config.validate();
  const PreparedProblem P = prepare(data, inner_config(config));
  return lla_solve(P, config);
}

LLAReport lla_solve(const PreparedProblem& P, const LLAConfig& config) {
  config.validate();
  if (P.data == nullptr) throw ArgumentError("prepared problem has no data");
  const ProblemData& data = *P.data;
  const SolverConfig inner = inner_config(config);

  LLAReport out;
  SolveReport& all = out.combined;
  auto absorb = [&all](const SolveReport& r) {
    all.trace.insert(all.trace.end(), r.trace.begin(), r.trace.end());
    all.iterations += r.iterations;
    all.wall_time_s += r.wall_time_s;
    all.converged = r.converged;
    all.termination = r.termination;
    all.eta = r.eta;
    all.etas = r.etas;
    all.slack_dual_reals = r.slack_dual_reals;
  };
  all.algorithm = inner.algorithm;
  all.lambda = inner.lambda;
  all.mu = P.mu;
  all.K = static_cast<int>(P.partition.count());
  all.precompute_time_s = P.precompute_time_s;

  SolverState state;
  if (config.initial) {
    state = *config.initial;
    if (state.beta.size() != data.p()) throw DimensionError("initial state has wrong dimension");
  } else {
    SolveReport first = solve(P, inner);
    absorb(first);
    state = first.final_state;
    out.initial_fit = std::move(first);
  }

  Vector beta = state.beta;
  for (int l = 0; l < config.outer_iters; ++l) {
    SolverConfig c = inner;
    c.weights = compute_weights(beta, config.penalty, data.n());
    if (config.warm_start) c.warm_start = state;
    LLAPass pass;
    pass.weights = *c.weights;
    pass.objective_before = nonconvex_objective(beta, config.penalty);
    SolveReport rep = solve(P, c);
    pass.inner_iterations = rep.iterations;
    pass.inner_converged = rep.converged;
    pass.weighted_violation = kkt_feasibility(data, rep.beta_hat, inner.lambda, &pass.weights)
                                  .linf_violation;
    pass.objective_after = nonconvex_objective(rep.beta_hat, config.penalty);
    const StopCheck chk = stopping_check(rep.beta_hat, beta, inner.tol);
    pass.rel_change = chk.value;
    if (pass.objective_after > pass.objective_before) out.objective_increased = true;
    absorb(rep);
    beta = rep.beta_hat;
    state = std::move(rep.final_state);
    out.passes.push_back(std::move(pass));
    if (chk.stop) break;
  }
  all.beta_hat = beta;
  all.final_state = std::move(state);
  return out;
}

}  // namespace dsppa
