// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/solvers.hpp"

namespace dsppa {

/// Linearised ADMM on the constrained form A beta - z = X^T y.
SolveReport ladmm_solve(const ProblemData& data, const SolverConfig& config);
SolveReport ladmm_solve(const PreparedProblem& prepared, const SolverConfig& config);

/// Parallel three-block ADMM with K - 1 slack blocks and K duals.
/// K = 1 falls back to ladmm_solve.
SolveReport tadmm_solve(const ProblemData& data, const SolverConfig& config);
SolveReport tadmm_solve(const PreparedProblem& prepared, const SolverConfig& config);

}  // namespace dsppa
