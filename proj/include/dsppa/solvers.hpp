// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/linalg.hpp"
#include "dsppa/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dsppa {

enum class Algorithm { PPA, PPPA, IPPPA, LADMM, TADMM };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

/// Objective weights w and constraint bounds b for a weighted solve:
/// min sum_j w_j |beta_j|  s.t.  |(A beta - X^T y)_j| <= b_j.
struct WeightSpec {
  Vector weight;
  Vector bound;
};

struct SolverState {
  Vector beta;
  Vector z;
  Vector u;
  Vector r;  // A beta - z - X^T y
  long iter = 0;
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::PPA;
  /// Augmentation parameter; <= 0 selects 1 / n^2.
  double mu = 0.0;
  double lambda = 0.0;
  double tol = 1e-4;
  int max_iter = 500;
  int K = 1;
  /// Explicit (possibly uneven) block sizes; overrides K when non-empty.
  std::vector<Index> block_sizes;
  std::optional<WeightSpec> weights;
  double init_value = 1e-3;
  /// Start from this state instead of init_value.
  std::optional<SolverState> warm_start;
  /// Record (beta, z, u) after every iteration.
  bool diagnostics = false;
  /// When set, stopping also requires ||r||_inf / n <= feas_tol.
  std::optional<double> feas_tol;
  int workers = 1;
  double power_tol = 1e-10;
  int power_max_iter = 1000;

  double resolved_mu(Index n) const;
  Partition partition(Index p) const;
  void validate(Index n, Index p) const;
};

struct TraceEntry {
  double rel_change = 0.0;
  double feas_inf = 0.0;  // ||r||_inf
};

struct Snapshot {
  Vector beta;
  Vector z;
  Vector u;
};

enum class Termination { TolReached, MaxIter };
std::string to_string(Termination t);

struct SolveReport {
  Algorithm algorithm = Algorithm::PPA;
  double lambda = 0.0;
  double mu = 0.0;
  int K = 1;
  Vector beta_hat;
  int iterations = 0;
  bool converged = false;
  Termination termination = Termination::MaxIter;
  std::vector<TraceEntry> trace;
  /// g^0 .. g^T when diagnostics are on.
  std::vector<Snapshot> snapshots;
  SolverState final_state;
  double eta = 0.0;           // global step constant (0 when per block)
  std::vector<double> etas;   // per-block constants
  /// Reals held in slack and dual variables.
  std::size_t slack_dual_reals = 0;
  double wall_time_s = 0.0;
  double precompute_time_s = 0.0;
};

/// Gram blocks and step constants that depend only on (data, partition, mu).
struct PreparedProblem {
  const ProblemData* data = nullptr;
  Algorithm algorithm = Algorithm::PPA;
  Partition partition;
  GramBlocks gram;
  double mu = 0.0;
  double eta = 0.0;
  std::vector<double> etas;
  double precompute_time_s = 0.0;
};

/// `data` must outlive the result.
PreparedProblem prepare(const ProblemData& data, const SolverConfig& config);

/// Dispatches on config.algorithm.
SolveReport solve(const PreparedProblem& prepared, const SolverConfig& config);
SolveReport solve(const ProblemData& data, const SolverConfig& config);

SolveReport ppa_solve(const ProblemData& data, const SolverConfig& config);
SolveReport pppa_solve(const ProblemData& data, const SolverConfig& config);
SolveReport ippa_solve(const ProblemData& data, const SolverConfig& config);

/// soft_threshold(beta + A_i^T u / eta, tau), tau = 1/eta or w/eta.
/// `gram_block` is A_i (p x p_i).
Vector beta_block_update(const Vector& beta_block, const RowMatrix& gram_block, const Vector& u,
                         double eta, const Vector* weight = nullptr);

/// Clamp of z_prev - u/mu to [-bound, bound].
Vector z_update(const Vector& z_prev, const Vector& u, double mu, const Vector& bound);

/// u - (mu / divisor) (2 r_new - r_old).
Vector dual_update(const Vector& u, const Vector& r_new, const Vector& r_old, double mu,
                   double divisor);

struct StopCheck {
  double value = 0.0;
  bool stop = false;
};

/// ||b_new - b_old||_2 / max(||b_new||_2, 1) against tol.
StopCheck stopping_check(const Vector& beta_new, const Vector& beta_old, double tol);

namespace detail {

/// Shared validation of weights/bounds against dimension.
void check_weights(const WeightSpec& w, Index p);
/// Box bounds for a solve: weighted bounds or n * lambda.
Vector box_bounds(const SolverConfig& config, Index n, Index p);
/// Throws DivergedError past the 1e12 guard or on non-finite values.
void divergence_guard(const Vector& beta, const Vector& z, const Vector& u, long iter);
// True when beta = 0 violates the box |X^T y|_j <= bound_j, so an all-zero
// iterate can never be the answer.
bool zero_is_infeasible(const Vector& xty, const Vector& bound);
// beta-change rule, except that an all-zero beta never stops the run when
// zero is infeasible (the first steps can threshold everything to zero).
bool stop_rule(const StopCheck& chk, const Vector& beta, bool zero_infeasible);

}  // namespace detail

}  // namespace dsppa
