// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/datagen.hpp"
#include "dsppa/solvers.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dsppa {

struct BenchOptions {
  ScenarioSpec scenario;
  std::vector<Algorithm> algorithms{Algorithm::PPPA};
  std::vector<int> ks{1};
  int replicates = 1;
  /// Template for every solve; algorithm, K and lambda are filled per cell.
  SolverConfig base;
  /// Defaults to sqrt(2 log p / n) when unset.
  std::optional<double> lambda;
  double zero_tol = 1e-4;
};

/// One entry per (algorithm, K): aggregate statistics plus the per-run
/// reports they were computed from, so the aggregation can be redone from
/// the stored JSON.
struct BenchResult {
  nlohmann::json cells = nlohmann::json::array();

  /// Columns algorithm,K,mean_time,mean_AE,mean_time_per_iter.
  std::string plot_csv() const;
};

BenchResult run_bench(const BenchOptions& opt);

/// Mean and sample standard deviation of AE, FP, FN, iterations, wall time and
/// time per iteration over the successful runs of one cell.
nlohmann::json aggregate_runs(const nlohmann::json& runs);

}  // namespace dsppa
