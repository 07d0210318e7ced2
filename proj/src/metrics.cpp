// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/metrics.hpp"

#include "dsppa/errors.hpp"
#include "dsppa/lla.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace dsppa {

double ar1_quadratic_form(const Vector& v, double rho) {
  // s_k = sum_{j<k} rho^{k-j} v_j, so v'Sv = sum v_k^2 + 2 sum v_k s_k.
  double total = 0.0;
  double s = 0.0;
  for (Index k = 0; k < v.size(); ++k) {
    if (k > 0) s = rho * (s + v[k - 1]);
    total += v[k] * v[k] + 2.0 * v[k] * s;
  }
  return total;
}

EstimationErrors estimation_errors(const Vector& beta_hat, const Vector& beta_star,
                                   const Ar1Covariance& sigma) {
  if (beta_hat.size() != beta_star.size()) throw DimensionError("coefficient lengths differ");
  const Vector d = beta_hat - beta_star;
  return {d.lpNorm<1>(), d.squaredNorm(), ar1_quadratic_form(d, sigma.rho)};
}

SelectionCounts selection_counts(const Vector& beta_hat, const Vector& beta_star,
                                 double zero_tol) {
  if (!(zero_tol > 0.0)) throw ArgumentError("zero_tol must be positive");
  if (beta_hat.size() != beta_star.size()) throw DimensionError("coefficient lengths differ");
  SelectionCounts c;
  for (Index j = 0; j < beta_hat.size(); ++j) {
    const bool picked = std::abs(beta_hat[j]) > zero_tol;
    if (picked && beta_star[j] == 0.0) ++c.fp;
    if (!picked && beta_star[j] != 0.0) ++c.fn;
  }
  c.ae = (beta_hat - beta_star).lpNorm<1>() / static_cast<double>(beta_hat.size());
  return c;
}

MetricReport make_metric_report(const SolveReport& rep, const Vector& beta_star,
                                const Ar1Covariance& sigma, double zero_tol) {
  const auto e = estimation_errors(rep.beta_hat, beta_star, sigma);
  const auto s = selection_counts(rep.beta_hat, beta_star, zero_tol);
  return {e.l1, e.l2_sq, e.model, s.fp, s.fn, s.ae, rep.iterations, rep.wall_time_s};
}

nlohmann::json to_json(const MetricReport& m) {
  return {{"l1_error", m.l1_error},       {"l2_error_sq", m.l2_error_sq},
          {"model_error", m.model_error}, {"FP", m.fp},
          {"FN", m.fn},                   {"AE", m.ae},
          {"iterations", m.iterations},   {"wall_time", m.wall_time}};
}

double hbic_score(const ProblemData& data, const Vector& beta_hat, const HbicOptions& opt) {
  if (beta_hat.size() != data.p()) throw DimensionError("beta length does not match X");
  const double n = static_cast<double>(data.n());
  const double p = static_cast<double>(data.p());
  const double rss = (data.y - data.X.values() * beta_hat).squaredNorm();
  if (rss == 0.0) return -std::numeric_limits<double>::infinity();
  Index support = 0;
  for (Index j = 0; j < beta_hat.size(); ++j)
    if (std::abs(beta_hat[j]) > opt.zero_tol) ++support;
  return std::log(rss / n) +
         opt.coefficient * static_cast<double>(support) * std::log(std::log(n)) * std::log(p) / n;
}

std::vector<double> default_lambda_grid(const ProblemData& data, int points, double ratio) {
  if (points < 1) throw ArgumentError("grid needs at least one point");
  if (!(ratio > 0.0 && ratio <= 1.0)) throw ArgumentError("grid ratio must lie in (0, 1]");
  const double top = lambda_max(data);
  std::vector<double> grid;
  for (int k = 0; k < points; ++k) {
    const double f = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
    grid.push_back(top * std::pow(ratio, f));
  }
  return grid;
}

GridSearchResult lambda_grid_search(const ProblemData& data, const SolverConfig& config,
                                    std::vector<double> grid, const GridSearchOptions& opt) {
  if (grid.empty()) throw ArgumentError("lambda grid is empty");
  for (double l : grid)
    if (!(l >= 0.0) || !std::isfinite(l)) throw ArgumentError("grid values must be finite and >= 0");
  std::sort(grid.begin(), grid.end(), std::greater<>());

  SolverConfig base = config;
  base.weights.reset();
  base.warm_start.reset();
  const PreparedProblem P = prepare(data, base);
  const bool nonconvex = opt.penalty && opt.penalty->kind != PenaltyKind::L1;

  GridSearchResult out;
  std::optional<SolverState> warm;
  bool any = false;
  for (double lambda : grid) {
    GridPoint pt;
    pt.lambda = lambda;
    try {
      SolverConfig c = base;
      c.lambda = lambda;
      if (opt.warm_start && warm) c.warm_start = *warm;
      if (nonconvex) {
        // The initial l1 fit shares the prepared problem; the passes reuse it too.
        SolveReport first = solve(P, c);
        LLAConfig lc;
        lc.penalty = *opt.penalty;
        lc.penalty.lambda = lambda;
        lc.outer_iters = opt.outer_iters;
        lc.inner = base;
        lc.initial = first.final_state;
        LLAReport lr = lla_solve(P, lc);
        warm = first.final_state;
        pt.report = std::move(lr.combined);
        pt.report.iterations += first.iterations;
      } else {
        pt.report = solve(P, c);
        warm = pt.report.final_state;
      }
      pt.hbic = hbic_score(data, pt.report.beta_hat, opt.hbic);
      out.total_iterations += pt.report.iterations;
      any = true;
    } catch (const DivergedError& e) {
      pt.failed = true;
      pt.error = e.what();
      pt.hbic = std::numeric_limits<double>::infinity();
    }
    out.points.push_back(std::move(pt));
  }
  if (!any) throw TuningError("every solve on the lambda grid diverged");
  std::size_t best = out.points.size();
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (out.points[i].failed) continue;
    if (best == out.points.size() || out.points[i].hbic < out.points[best].hbic) best = i;
  }
  out.best_index = best;
  out.best_lambda = out.points[best].lambda;
  return out;
}

}  // namespace dsppa
