// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dsppa {

/// A desk-scale experiment with pass bands.
///
///   sparse-l2     sparse design, l1 fit tuned by HBIC: mean squared l2 error
///                 <= max_l2_sq and no false negatives.
///   dense-k       dense design, parallel fits for every K in ks: AE equal
///                 across K within ae_spread.
///   nonconvex-fp  sparse design, l1 vs SCAD and MCP fits at one lambda:
///                 SCAD false positives <= l1 false positives on at least
///                 min_wins replicates.
struct ReproScenario {
  std::string id;
  std::string description;
  Index n = 0;
  Index p = 0;
  double rho = 0.5;
  int s = 1;
  int replicates = 10;
  std::uint64_t seed = 1;
  std::vector<int> ks;
  int workers = 1;
  // bands
  double max_l2_sq = 0.5;
  double ae_spread = 1e-8;
  int min_wins = 8;
  /// Feasibility demanded of every nonconvex inner solve.
  double feas_tol = 5e-7;
};

std::vector<ReproScenario> registered_scenarios();
/// Throws ArgumentError for an unknown id.
ReproScenario find_scenario(const std::string& id);

struct ReproResult {
  bool pass = false;
  std::vector<std::string> failures;
  nlohmann::json report;
};

/// Runs the scenario, writes summary.json and replicates.csv under
/// results_dir / id, and checks its bands.
ReproResult run_repro(const ReproScenario& scenario, const std::filesystem::path& results_dir);

struct OperationDoc {
  std::string name;
  std::string module;
  std::string computes;
};

/// Every public operation with the formula it implements.
const std::vector<OperationDoc>& operation_index();

}  // namespace dsppa
