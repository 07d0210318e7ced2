// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/linalg.hpp"
#include "dsppa/problem.hpp"
#include "dsppa/solvers.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dsppa {

enum class MetricKind {
  Global,    // single step constant, dual weight 2 / mu
  PerBlock,  // per-block constants, dual weight (K + 1) / mu
};

/// Step constants the metric is built from.
struct EtaSpec {
  std::optional<double> global;
  std::vector<double> per_block;

  static EtaSpec make_global(double eta) { return {eta, {}}; }
  static EtaSpec make_per_block(std::vector<double> etas) { return {std::nullopt, std::move(etas)}; }
};

/// Weighting matrix under which the proximal point iterates contract.
///
/// For a single step constant eta:
///   H = [[eta I, 0, A^T], [0, mu I, -I], [A, -I, (2/mu) I]].
/// With per-block constants the top-left block is diag(eta_1 I, ..., eta_K I),
/// the dual corner is (K + 1)/mu I, and the coupling row is (A_1, ..., A_K, -I).
struct ContractionMetric {
  Eigen::MatrixXd H;
  MetricKind kind = MetricKind::Global;
  std::vector<double> etas;
  double mu = 0.0;
  Index p = 0;
  Index K = 1;
};

ContractionMetric build_contraction_metric(const GramBlocks& G, double mu, const EtaSpec& eta);

/// Same layout with mu A_i^T A_i in place of eta_i I; positive semidefinite.
Eigen::MatrixXd build_companion_metric(const GramBlocks& G, double mu, MetricKind kind);

/// Stacks (beta, z, u) into one vector.
Vector stack_state(const Snapshot& g);
double h_norm_sq(const ContractionMetric& metric, const Vector& g);

struct ContractionReport {
  bool successive_ok = true;  // ||g^t - g^{t+1}||_H^2 non-increasing
  bool optimum_ok = true;     // ||g^t - g*||_H^2 non-increasing
  bool rate_ok = true;        // ||g^T - g^{T+1}||_H^2 <= ||g^0 - g*||_H^2 / (T + 1)
  double worst_successive = 0.0;
  double worst_optimum = 0.0;
  double worst_rate = 0.0;
  std::vector<double> successive;
  std::vector<double> to_optimum;

  bool ok() const { return successive_ok && optimum_ok && rate_ok; }
};

/// `trace` holds g^0 .. g^T. Increases larger than slack * (1 + magnitude)
/// count as violations; worst_* record the largest excess (<= 0 when fine).
ContractionReport check_contraction(const std::vector<Snapshot>& trace,
                                    const ContractionMetric& metric, const Snapshot& g_star,
                                    double slack = 1e-10);

struct Feasibility {
  double linf_violation = 0.0;
  double l1_objective = 0.0;
};

/// Violation of ||X^T (X beta - y) / n||_inf <= lambda, evaluated from X.
/// With weights, coordinate j is checked against bound_j / n and the objective
/// is sum_j w_j |beta_j|.
Feasibility kkt_feasibility(const ProblemData& data, const Vector& beta, double lambda,
                            const WeightSpec* weights = nullptr);

/// Exact solution of the linear program behind the selector, by dual simplex
/// on a dense tableau. Meant for tiny instances (at most 200 variables).
Vector lp_oracle_solve(const ProblemData& data, double lambda);

struct PartitionReport {
  bool ok = true;
  double bound = 1e-8;
  std::vector<Partition> partitions;
  /// Max over t of the relative l_inf gap of (beta, z, u) against the K = 1 run.
  std::vector<double> discrepancy;
  double max_discrepancy = 0.0;
};

/// Runs the parallel proximal point method once per partition and compares
/// every iterate with the single-block run.
PartitionReport partition_insensitivity_check(const ProblemData& data, const SolverConfig& config,
                                              const std::vector<Partition>& partitions,
                                              double bound = 1e-8);

nlohmann::json to_json(const ContractionReport& r);
nlohmann::json to_json(const PartitionReport& r);
nlohmann::json to_json(const Feasibility& f);

}  // namespace dsppa
