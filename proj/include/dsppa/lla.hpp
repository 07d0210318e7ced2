// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/prox.hpp"
#include "dsppa/solvers.hpp"

#include <optional>
#include <vector>

namespace dsppa {

struct LLAConfig {
  PenaltySpec penalty = PenaltySpec::scad(1.0);
  int outer_iters = 2;
  /// Inner solver; its lambda is overwritten by penalty.lambda.
  SolverConfig inner;
  bool warm_start = true;
  /// Skip the initial l1 solve and start the passes from this state.
  std::optional<SolverState> initial;

  void validate() const;
};

/// weight_j = P'(|beta_j|) / lambda and bound_j = n P'(|beta_j|).
WeightSpec compute_weights(const Vector& beta_current, const PenaltySpec& penalty, Index n);

struct LLAPass {
  WeightSpec weights;
  int inner_iterations = 0;
  bool inner_converged = false;
  /// Weighted constraint violation of the inner solution, per-sample scale.
  double weighted_violation = 0.0;
  /// sum_j P(|beta_j|) / lambda before and after the pass.
  double objective_before = 0.0;
  double objective_after = 0.0;
  double rel_change = 0.0;
};

struct LLAReport {
  /// Final beta with the trace of every inner solve concatenated.
  SolveReport combined;
  /// The initial l1 fit (absent when LLAConfig::initial was supplied).
  std::optional<SolveReport> initial_fit;
  std::vector<LLAPass> passes;
  /// Set when some pass failed to decrease the nonconvex objective.
  bool objective_increased = false;
};

LLAReport lla_solve(const ProblemData& data, const LLAConfig& config);
/// Reuses Gram blocks and step constants prepared for config.inner.
LLAReport lla_solve(const PreparedProblem& prepared, const LLAConfig& config);

/// sum_j P(|beta_j|) / lambda.
double nonconvex_objective(const Vector& beta, const PenaltySpec& penalty);

}  // namespace dsppa
