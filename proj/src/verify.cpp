// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/verify.hpp"

#include "dsppa/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dsppa {

namespace {

double max_eig_normal(const RowMatrix& M) {
  const Eigen::MatrixXd N = M.transpose() * M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(N, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

void fill_coupling(Eigen::MatrixXd& H, const RowMatrix& A, Index p, double corner) {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(p, p);
  H.block(0, 2 * p, p, p) = A.transpose();
  H.block(2 * p, 0, p, p) = A;
  H.block(p, 2 * p, p, p) = -I;
  H.block(2 * p, p, p, p) = -I;
  H.block(2 * p, 2 * p, p, p) = corner * I;
}

}  // namespace

ContractionMetric build_contraction_metric(const GramBlocks& G, double mu, const EtaSpec& eta) {
  if (!(mu > 0.0)) throw ArgumentError("mu must be positive");
  const Index p = G.dim();
  const Index K = G.count();
  const auto& part = G.partition();
  ContractionMetric m;
  m.mu = mu;
  m.p = p;
  m.K = K;
  m.H = Eigen::MatrixXd::Zero(3 * p, 3 * p);
  const RowMatrix A = G.assemble();
  if (eta.global) {
    m.kind = MetricKind::Global;
    const double lmax = mu * max_eig_normal(A);
    if (!(*eta.global > lmax))
      throw PreconditionError("eta " + std::to_string(*eta.global) +
                              " does not exceed mu * lambda_max = " + std::to_string(lmax));
    m.etas = {*eta.global};
    m.H.block(0, 0, p, p).diagonal().setConstant(*eta.global);
    fill_coupling(m.H, A, p, 2.0 / mu);
  } else {
    m.kind = MetricKind::PerBlock;
    if (static_cast<Index>(eta.per_block.size()) != K)
      throw DimensionError("need one step constant per block");
    for (Index i = 0; i < K; ++i) {
      const double e = eta.per_block[static_cast<std::size_t>(i)];
      const double lmax = mu * max_eig_normal(G.block(i));
      if (!(e > lmax))
        throw PreconditionError("eta_" + std::to_string(i) + " = " + std::to_string(e) +
                                " does not exceed mu * lambda_max = " + std::to_string(lmax));
      m.H.block(part.offset(i), part.offset(i), part.size(i), part.size(i)).diagonal().setConstant(e);
    }
    m.etas = eta.per_block;
    fill_coupling(m.H, A, p, static_cast<double>(K + 1) / mu);
  }
  m.H.block(p, p, p, p).diagonal().setConstant(mu);
  return m;
}

Eigen::MatrixXd build_companion_metric(const GramBlocks& G, double mu, MetricKind kind) {
  const Index p = G.dim();
  const Index K = G.count();
  const auto& part = G.partition();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(3 * p, 3 * p);
  const RowMatrix A = G.assemble();
  if (kind == MetricKind::Global) {
    M.block(0, 0, p, p) = mu * (A.transpose() * A);
    fill_coupling(M, A, p, 2.0 / mu);
  } else {
    for (Index i = 0; i < K; ++i) {
      const RowMatrix Ai = G.block(i);
      M.block(part.offset(i), part.offset(i), part.size(i), part.size(i)) =
          mu * (Ai.transpose() * Ai);
    }
    fill_coupling(M, A, p, static_cast<double>(K + 1) / mu);
  }
  M.block(p, p, p, p).diagonal().setConstant(mu);
  return M;
}

Vector stack_state(const Snapshot& g) {
  const Index p = g.beta.size();
  Vector out(3 * p);
  out << g.beta, g.z, g.u;
  return out;
}

double h_norm_sq(const ContractionMetric& metric, const Vector& g) {
  if (g.size() != metric.H.rows())
    throw DimensionError("state has length " + std::to_string(g.size()) + ", metric expects " +
                         std::to_string(metric.H.rows()));
  return g.dot(metric.H * g);
}

ContractionReport check_contraction(const std::vector<Snapshot>& trace,
                                    const ContractionMetric& metric, const Snapshot& g_star,
                                    double slack) {
  ContractionReport rep;
  rep.worst_successive = rep.worst_optimum = rep.worst_rate =
      -std::numeric_limits<double>::infinity();
  if (trace.size() < 2) return rep;
  const Vector star = stack_state(g_star);
  std::vector<Vector> g;
  g.reserve(trace.size());
  for (const auto& s : trace) g.push_back(stack_state(s));
  for (std::size_t t = 0; t + 1 < g.size(); ++t)
    rep.successive.push_back(h_norm_sq(metric, g[t] - g[t + 1]));
  for (const auto& v : g) rep.to_optimum.push_back(h_norm_sq(metric, v - star));

  auto excess = [slack](double next, double prev) {
    return next - prev - slack * (1.0 + std::max(std::abs(prev), std::abs(next)));
  };
  for (std::size_t t = 0; t + 1 < rep.successive.size(); ++t) {
    const double e = excess(rep.successive[t + 1], rep.successive[t]);
    rep.worst_successive = std::max(rep.worst_successive, e);
    if (e > 0.0) rep.successive_ok = false;
  }
  for (std::size_t t = 0; t + 1 < rep.to_optimum.size(); ++t) {
    const double e = excess(rep.to_optimum[t + 1], rep.to_optimum[t]);
    rep.worst_optimum = std::max(rep.worst_optimum, e);
    if (e > 0.0) rep.optimum_ok = false;
  }
  const double d0 = rep.to_optimum.front();
  for (std::size_t t = 0; t < rep.successive.size(); ++t) {
    const double e = excess(rep.successive[t], d0 / static_cast<double>(t + 1));
    rep.worst_rate = std::max(rep.worst_rate, e);
    if (e > 0.0) rep.rate_ok = false;
  }
  return rep;
}

Feasibility kkt_feasibility(const ProblemData& data, const Vector& beta, double lambda,
                            const WeightSpec* weights) {
  if (beta.size() != data.p()) throw DimensionError("beta length does not match X");
  if (weights) detail::check_weights(*weights, data.p());
  const double n = static_cast<double>(data.n());
  const Vector resid = data.X.values() * beta - data.y;
  const Vector grad = data.X.values().transpose() * resid / n;
  Feasibility f;
  for (Index j = 0; j < grad.size(); ++j) {
    const double b = weights ? weights->bound[j] / n : lambda;
    f.linf_violation = std::max(f.linf_violation, std::abs(grad[j]) - b);
  }
  f.l1_objective = weights ? weights->weight.dot(beta.cwiseAbs()) : beta.lpNorm<1>();
  return f;
}

PartitionReport partition_insensitivity_check(const ProblemData& data, const SolverConfig& config,
                                              const std::vector<Partition>& partitions,
                                              double bound) {
  PartitionReport rep;
  rep.bound = bound;
  rep.partitions = partitions;
  SolverConfig base = config;
  base.algorithm = Algorithm::PPPA;
  base.diagnostics = true;
  base.warm_start.reset();
  auto run = [&](const Partition& part) {
    SolverConfig c = base;
    c.block_sizes = part.sizes();
    c.K = static_cast<int>(part.count());
    return solve(data, c).snapshots;
  };
  const auto ref = run(Partition::even(data.p(), 1));
  auto rel_gap = [](const Vector& a, const Vector& b) {
    const double scale = b.lpNorm<Eigen::Infinity>();
    const double diff = (a - b).lpNorm<Eigen::Infinity>();
    if (diff == 0.0) return 0.0;
    return diff / std::max(scale, std::numeric_limits<double>::min());
  };
  for (const auto& part : partitions) {
    const auto snaps = run(part);
    double worst = 0.0;
    if (snaps.size() != ref.size()) {
      worst = std::numeric_limits<double>::infinity();
    } else {
      for (std::size_t t = 0; t < ref.size(); ++t)
        worst = std::max({worst, rel_gap(snaps[t].beta, ref[t].beta),
                          rel_gap(snaps[t].z, ref[t].z), rel_gap(snaps[t].u, ref[t].u)});
    }
    rep.discrepancy.push_back(worst);
    rep.max_discrepancy = std::max(rep.max_discrepancy, worst);
  }
  rep.ok = rep.max_discrepancy <= bound;
  return rep;
}

nlohmann::json to_json(const ContractionReport& r) {
  return {{"ok", r.ok()},
          {"successive_nonincreasing", r.successive_ok},
          {"optimum_distance_nonincreasing", r.optimum_ok},
          {"rate_bound", r.rate_ok},
          {"worst_successive_excess", r.worst_successive},
          {"worst_optimum_excess", r.worst_optimum},
          {"worst_rate_excess", r.worst_rate},
          {"steps", r.successive.size()}};
}

nlohmann::json to_json(const PartitionReport& r) {
  nlohmann::json parts = nlohmann::json::array();
  for (std::size_t i = 0; i < r.partitions.size(); ++i)
    parts.push_back({{"block_sizes", r.partitions[i].sizes()},
                     {"discrepancy", r.discrepancy[i]}});
  return {{"ok", r.ok}, {"bound", r.bound}, {"max_discrepancy", r.max_discrepancy},
          {"partitions", parts}};
}

nlohmann::json to_json(const Feasibility& f) {
  return {{"linf_violation", f.linf_violation}, {"l1_objective", f.l1_objective}};
}

}  // namespace dsppa
