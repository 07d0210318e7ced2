// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/baselines.hpp"

#include "dsppa/errors.hpp"
#include "dsppa/prox.hpp"
#include "parallel.hpp"

#include <chrono>

namespace dsppa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Start {
  Vector beta, z, u;
};

Start start_point(const SolverConfig& c, Index p) {
  if (c.warm_start) return {c.warm_start->beta, c.warm_start->z, c.warm_start->u};
  const Vector v = Vector::Constant(p, c.init_value);
  return {v, v, v};
}

SolveReport base_report(const PreparedProblem& P, const SolverConfig& c) {
  SolveReport rep;
  rep.algorithm = c.algorithm;
  rep.lambda = c.lambda;
  rep.mu = P.mu;
  rep.K = static_cast<int>(P.partition.count());
  rep.eta = P.eta;
  rep.etas = P.etas;
  rep.precompute_time_s = P.precompute_time_s;
  rep.trace.reserve(static_cast<std::size_t>(c.max_iter));
  return rep;
}

bool record(SolveReport& rep, const SolverConfig& c, int t, const Vector& beta,
            const Vector& beta_old, const Vector& z, const Vector& u, const Vector& r, Index n,
            bool zero_bad) {
  const StopCheck chk = stopping_check(beta, beta_old, c.tol);
  const double feas = r.lpNorm<Eigen::Infinity>();
  detail::divergence_guard(beta, z, u, t);
  rep.trace.push_back({chk.value, feas});
  if (c.diagnostics) rep.snapshots.push_back({beta, z, u});
  rep.iterations = t;
  return detail::stop_rule(chk, beta, zero_bad) &&
         (!c.feas_tol || feas / static_cast<double>(n) <= *c.feas_tol);
}

SolveReport run_ladmm(const PreparedProblem& P, const SolverConfig& c) {
  const ProblemData& d = *P.data;
  const Index n = d.n();
  const Index p = d.p();
  const GramBlocks& G = P.gram;
  const Partition& part = P.partition;
  const Index K = part.count();
  const double mu = P.mu;
  const double eta = P.eta;
  const int workers = resolve_workers(c.workers);
  const Vector bound = detail::box_bounds(c, n, p);
  const bool zero_bad = detail::zero_is_infeasible(d.xty, bound);
  Vector tau(p);
  for (Index j = 0; j < p; ++j) tau[j] = (c.weights ? c.weights->weight[j] : 1.0) / eta;

  SolveReport rep = base_report(P, c);
  Start s = start_point(c, p);
  std::vector<Vector> partials;
  Vector Ab;
  blocked_matvec_into(G, s.beta, partials, Ab, workers);
  Vector r = Ab - s.z - d.xty;
  rep.slack_dual_reals = static_cast<std::size_t>(s.u.size());
  if (c.diagnostics) rep.snapshots.push_back({s.beta, s.z, s.u});

  std::vector<Vector> grad(static_cast<std::size_t>(K));
  Vector beta_old(p), res(p);
  const auto t0 = Clock::now();
  for (int t = 1; t <= c.max_iter; ++t) {
    beta_old = s.beta;
    res = Ab - s.z - d.xty + s.u / mu;
    detail::for_each_block(K, workers, [&](Index i) {
      const Index off = part.offset(i);
      Vector& g = grad[static_cast<std::size_t>(i)];
      g.noalias() = G.transposed(i) * res;
      for (Index k = 0; k < part.size(i); ++k)
        s.beta[off + k] = soft_threshold_scalar(s.beta[off + k] - (mu / eta) * g[k], tau[off + k]);
    });
    blocked_matvec_into(G, s.beta, partials, Ab, workers);
    for (Index j = 0; j < p; ++j) s.z[j] = clamp_scalar(Ab[j] - d.xty[j] + s.u[j] / mu, bound[j]);
    r = Ab - s.z - d.xty;
    s.u += mu * r;
    if (record(rep, c, t, s.beta, beta_old, s.z, s.u, r, n, zero_bad)) {
      rep.converged = true;
      break;
    }
  }
  rep.wall_time_s = seconds_since(t0);
  rep.termination = rep.converged ? Termination::TolReached : Termination::MaxIter;
  rep.beta_hat = s.beta;
  rep.final_state = {s.beta, s.z, s.u, r, rep.iterations};
  return rep;
}

SolveReport run_tadmm(const PreparedProblem& P, const SolverConfig& c) {
  const ProblemData& d = *P.data;
  const Index n = d.n();
  const Index p = d.p();
  const GramBlocks& G = P.gram;
  const Partition& part = P.partition;
  const Index K = part.count();
  const double Kd = static_cast<double>(K);
  const double mu = P.mu;
  const int workers = resolve_workers(c.workers);
  const Vector bound = detail::box_bounds(c, n, p);
  const bool zero_bad = detail::zero_is_infeasible(d.xty, bound);
  Vector tau(p);
  for (Index i = 0; i < K; ++i)
    for (Index j = part.offset(i); j < part.offset(i) + part.size(i); ++j)
      tau[j] = (c.weights ? c.weights->weight[j] : 1.0) / P.etas[static_cast<std::size_t>(i)];

  SolveReport rep = base_report(P, c);
  Start s = start_point(c, p);
  // Slack omega_i and dual u_i for blocks 2..K live at index i - 1.
  std::vector<Vector> omega(static_cast<std::size_t>(K - 1), Vector::Constant(p, c.init_value));
  std::vector<Vector> duals(static_cast<std::size_t>(K - 1), Vector::Constant(p, c.init_value));
  Vector& u1 = s.u;
  rep.slack_dual_reals = static_cast<std::size_t>(u1.size());
  for (const auto& v : omega) rep.slack_dual_reals += static_cast<std::size_t>(v.size());
  for (const auto& v : duals) rep.slack_dual_reals += static_cast<std::size_t>(v.size());

  std::vector<Vector> Abi;  // A_i beta_i
  Vector Ab;
  blocked_matvec_into(G, s.beta, Abi, Ab, workers);
  if (c.diagnostics) rep.snapshots.push_back({s.beta, s.z, u1});

  auto sum_omega = [&](const std::vector<Vector>& w) {
    Vector out = w[0];
    for (std::size_t i = 1; i < w.size(); ++i) out += w[i];
    return out;
  };

  std::vector<Vector> grad(static_cast<std::size_t>(K));
  std::vector<Vector> res(static_cast<std::size_t>(K));
  Vector beta_old(p), r(p);
  const auto t0 = Clock::now();
  for (int t = 1; t <= c.max_iter; ++t) {
    beta_old = s.beta;
    res[0] = Abi[0] + sum_omega(omega) - s.z - d.xty + u1 / mu;
    for (Index i = 1; i < K; ++i) {
      const auto k = static_cast<std::size_t>(i);
      res[k] = Abi[k] - omega[k - 1] + duals[k - 1] / mu;
    }
    detail::for_each_block(K, workers, [&](Index i) {
      const auto k = static_cast<std::size_t>(i);
      const Index off = part.offset(i);
      const double step = mu / P.etas[k];
      grad[k].noalias() = G.transposed(i) * res[k];
      for (Index q = 0; q < part.size(i); ++q)
        s.beta[off + q] = soft_threshold_scalar(s.beta[off + q] - step * grad[k][q], tau[off + q]);
    });
    blocked_matvec_into(G, s.beta, Abi, Ab, workers);

    for (Index i = 1; i < K; ++i) {
      const auto k = static_cast<std::size_t>(i);
      omega[k - 1] = (d.xty + s.z + Kd * Abi[k] - Ab) / Kd;
    }
    const Vector zarg = Abi[0] + sum_omega(omega) - d.xty + u1 / mu;
    for (Index j = 0; j < p; ++j) s.z[j] = clamp_scalar(zarg[j], bound[j]);
    for (Index i = 1; i < K; ++i) {
      const auto k = static_cast<std::size_t>(i);
      omega[k - 1] = (d.xty + s.z + Kd * Abi[k] - Ab) / Kd;
    }
    u1 += mu * (Abi[0] + sum_omega(omega) - s.z - d.xty);
    for (Index i = 1; i < K; ++i) {
      const auto k = static_cast<std::size_t>(i);
      duals[k - 1] += mu * (Abi[k] - omega[k - 1]);
    }
    r = Ab - s.z - d.xty;
    if (record(rep, c, t, s.beta, beta_old, s.z, u1, r, n, zero_bad)) {
      rep.converged = true;
      break;
    }
  }
  rep.wall_time_s = seconds_since(t0);
  rep.termination = rep.converged ? Termination::TolReached : Termination::MaxIter;
  rep.beta_hat = s.beta;
  rep.final_state = {s.beta, s.z, u1, r, rep.iterations};
  return rep;
}

void check(const PreparedProblem& P, const SolverConfig& c, Algorithm expected) {
  if (P.data == nullptr) throw ArgumentError("prepared problem has no data");
  if (c.algorithm != expected || P.algorithm != expected)
    throw ArgumentError("configuration is not for " + to_string(expected));
  c.validate(P.data->n(), P.data->p());
  if (P.mu != c.resolved_mu(P.data->n())) throw ArgumentError("prepared problem uses another mu");
  if (!(P.partition == c.partition(P.data->p())))
    throw ArgumentError("prepared problem uses another partition");
}

}  // namespace

SolveReport ladmm_solve(const PreparedProblem& prepared, const SolverConfig& config) {
  check(prepared, config, Algorithm::LADMM);
  return run_ladmm(prepared, config);
}

SolveReport ladmm_solve(const ProblemData& data, const SolverConfig& config) {
  SolverConfig c = config;
  c.algorithm = Algorithm::LADMM;
  const PreparedProblem P = prepare(data, c);
  return run_ladmm(P, c);
}

SolveReport tadmm_solve(const PreparedProblem& prepared, const SolverConfig& config) {
  check(prepared, config, Algorithm::TADMM);
  if (prepared.partition.count() == 1) return run_ladmm(prepared, config);
  return run_tadmm(prepared, config);
}

SolveReport tadmm_solve(const ProblemData& data, const SolverConfig& config) {
  SolverConfig c = config;
  c.algorithm = Algorithm::TADMM;
  const PreparedProblem P = prepare(data, c);
  return tadmm_solve(P, c);
}

}  // namespace dsppa
