// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/datagen.hpp"
#include "dsppa/prox.hpp"
#include "dsppa/solvers.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace dsppa {

struct EstimationErrors {
  double l1 = 0.0;     // ||b - b*||_1
  double l2_sq = 0.0;  // ||b - b*||_2^2
  double model = 0.0;  // (b - b*)' Sigma (b - b*)
};

/// v' Sigma v for Sigma_jk = rho^|j-k|, in O(p).
double ar1_quadratic_form(const Vector& v, double rho);

EstimationErrors estimation_errors(const Vector& beta_hat, const Vector& beta_star,
                                   const Ar1Covariance& sigma);

struct SelectionCounts {
  int fp = 0;
  int fn = 0;
  double ae = 0.0;  // ||b - b*||_1 / p
};

SelectionCounts selection_counts(const Vector& beta_hat, const Vector& beta_star,
                                 double zero_tol = 1e-4);

struct MetricReport {
  double l1_error = 0.0;
  double l2_error_sq = 0.0;
  double model_error = 0.0;
  int fp = 0;
  int fn = 0;
  double ae = 0.0;
  int iterations = 0;
  double wall_time = 0.0;
};

MetricReport make_metric_report(const SolveReport& rep, const Vector& beta_star,
                                const Ar1Covariance& sigma, double zero_tol = 1e-4);
nlohmann::json to_json(const MetricReport& m);

struct HbicOptions {
  double zero_tol = 1e-4;
  /// Multiplier on the complexity term.
  double coefficient = 1.0;
};

/// log(RSS / n) + C |A| log(log n) log(p) / n, with |A| the count of
/// coordinates above zero_tol. A zero residual gives -infinity.
double hbic_score(const ProblemData& data, const Vector& beta_hat, const HbicOptions& opt = {});

/// `points` log-spaced values from lambda_max down to ratio * lambda_max.
std::vector<double> default_lambda_grid(const ProblemData& data, int points = 50,
                                        double ratio = 0.01);

struct GridSearchOptions {
  HbicOptions hbic;
  bool warm_start = true;
  /// SCAD or MCP switches each grid point to a local linear approximation fit.
  std::optional<PenaltySpec> penalty;
  int outer_iters = 2;
};

struct GridPoint {
  double lambda = 0.0;
  double hbic = 0.0;
  bool failed = false;
  std::string error;
  SolveReport report;
};

struct GridSearchResult {
  double best_lambda = 0.0;
  std::size_t best_index = 0;
  /// In descending lambda order.
  std::vector<GridPoint> points;
  long total_iterations = 0;
};

/// Fits every grid value (largest first) and returns the HBIC minimiser; ties
/// go to the larger lambda.
GridSearchResult lambda_grid_search(const ProblemData& data, const SolverConfig& config,
                                    std::vector<double> grid, const GridSearchOptions& opt = {});

}  // namespace dsppa
