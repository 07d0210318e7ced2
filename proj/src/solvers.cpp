// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/solvers.hpp"

#include "dsppa/baselines.hpp"
#include "dsppa/errors.hpp"
#include "dsppa/prox.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace dsppa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool per_block_eta(Algorithm a) { return a == Algorithm::IPPPA || a == Algorithm::TADMM; }

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::PPA: return "ppa";
    case Algorithm::PPPA: return "pppa";
    case Algorithm::IPPPA: return "ippa";
    case Algorithm::LADMM: return "ladmm";
    case Algorithm::TADMM: return "tadmm";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "ppa") return Algorithm::PPA;
  if (name == "pppa") return Algorithm::PPPA;
  if (name == "ippa" || name == "ipppa") return Algorithm::IPPPA;
  if (name == "ladmm") return Algorithm::LADMM;
  if (name == "tadmm") return Algorithm::TADMM;
  throw ArgumentError("unknown algorithm '" + name + "'");
}

std::string to_string(Termination t) {
  return t == Termination::TolReached ? "tol-reached" : "max-iter";
}

double SolverConfig::resolved_mu(Index n) const {
  if (mu > 0.0) return mu;
  const double nn = static_cast<double>(n);
  return 1.0 / (nn * nn);
}

Partition SolverConfig::partition(Index p) const {
  if (!block_sizes.empty()) {
    Partition part = Partition::from_sizes(block_sizes);
    if (part.total() != p)
      throw DimensionError("block sizes sum to " + std::to_string(part.total()) + ", expected " +
                           std::to_string(p));
    return part;
  }
  if (algorithm == Algorithm::PPA || algorithm == Algorithm::LADMM) return Partition::even(p, 1);
  return Partition::even(p, K);
}

void SolverConfig::validate(Index n, Index p) const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ArgumentError("lambda must be finite and non-negative");
  if (!std::isfinite(mu)) throw ArgumentError("mu must be finite");
  if (!(tol > 0.0)) throw ArgumentError("tol must be positive");
  if (max_iter < 1) throw ArgumentError("max_iter must be at least 1");
  if (K < 1) throw ArgumentError("K must be at least 1");
  if (!std::isfinite(init_value)) throw ArgumentError("init_value must be finite");
  if (feas_tol && !(*feas_tol > 0.0)) throw ArgumentError("feas_tol must be positive");
  if (weights) detail::check_weights(*weights, p);
  if (warm_start) {
    const auto& s = *warm_start;
    if (s.beta.size() != p || s.z.size() != p || s.u.size() != p)
      throw DimensionError("warm-start state has wrong dimension");
  }
  (void)n;
}

namespace detail {

void check_weights(const WeightSpec& w, Index p) {
  if (w.weight.size() != p || w.bound.size() != p)
    throw DimensionError("weight and bound vectors must have length p");
  if ((w.weight.array() < 0.0).any() || (w.bound.array() < 0.0).any() || !w.weight.allFinite() ||
      !w.bound.allFinite())
    throw ArgumentError("weights and bounds must be finite and non-negative");
}

Vector box_bounds(const SolverConfig& config, Index n, Index p) {
  if (config.weights) return config.weights->bound;
  return Vector::Constant(p, static_cast<double>(n) * config.lambda);
}

bool zero_is_infeasible(const Vector& xty, const Vector& bound) {
  return (xty.cwiseAbs().array() > bound.array()).any();
}

bool stop_rule(const StopCheck& chk, const Vector& beta, bool zero_infeasible) {
  if (!chk.stop) return false;
  return !(zero_infeasible && (beta.array() == 0.0).all());
}

void divergence_guard(const Vector& beta, const Vector& z, const Vector& u, long iter) {
  constexpr double kLimit = 1e12;
  auto bad = [](const Vector& v) { return !v.allFinite() || v.cwiseAbs().maxCoeff() > kLimit; };
  if (bad(beta) || bad(z) || bad(u))
    throw DivergedError("iterates diverged at iteration " + std::to_string(iter));
}

}  // namespace detail

PreparedProblem prepare(const ProblemData& data, const SolverConfig& config) {
  config.validate(data.n(), data.p());
  const auto t0 = Clock::now();
  PreparedProblem P;
  P.data = &data;
  P.algorithm = config.algorithm;
  P.partition = config.partition(data.p());
  P.mu = config.resolved_mu(data.n());
  const int workers = resolve_workers(config.workers);
  P.gram = gram_blocks(data.X, P.partition, workers);
  if (per_block_eta(config.algorithm) && !(config.algorithm == Algorithm::TADMM &&
                                           P.partition.count() == 1)) {
    P.etas.resize(static_cast<std::size_t>(P.partition.count()));
    for (Index i = 0; i < P.partition.count(); ++i)
      P.etas[static_cast<std::size_t>(i)] =
          power_method_max_eigen(block_normal_operator(P.gram, i, P.mu), P.partition.size(i),
                                 config.power_tol, config.power_max_iter) +
          1.0;
  } else {
    P.eta = power_method_max_eigen(gram_normal_operator(P.gram, P.mu, workers), data.p(),
                                   config.power_tol, config.power_max_iter) +
            1.0;
  }
  P.precompute_time_s = seconds_since(t0);
  return P;
}

namespace {

void check_prepared(const PreparedProblem& P, const SolverConfig& c) {
  if (P.data == nullptr) throw ArgumentError("prepared problem has no data");
  c.validate(P.data->n(), P.data->p());
  if (P.algorithm != c.algorithm) throw ArgumentError("prepared problem is for another algorithm");
  if (P.mu != c.resolved_mu(P.data->n())) throw ArgumentError("prepared problem uses another mu");
  if (!(P.partition == c.partition(P.data->p())))
    throw ArgumentError("prepared problem uses another partition");
}

SolverState initial_state(const SolverConfig& c, Index p) {
  if (c.warm_start) {
    SolverState s = *c.warm_start;
    s.iter = 0;
    return s;
  }
  SolverState s;
  s.beta = Vector::Constant(p, c.init_value);
  s.z = Vector::Constant(p, c.init_value);
  s.u = Vector::Constant(p, c.init_value);
  return s;
}

// Shared loop of the three proximal point variants. They differ only in the
// step constant per block and the dual divisor.
SolveReport run_proximal_point(const PreparedProblem& P, const SolverConfig& c) {
  const ProblemData& d = *P.data;
  const Index n = d.n();
  const Index p = d.p();
  const Partition& part = P.partition;
  const GramBlocks& G = P.gram;
  const Index K = part.count();
  const bool improved = c.algorithm == Algorithm::IPPPA;
  const double mu = P.mu;
  const double divisor = improved ? static_cast<double>(K + 1) : 2.0;
  const double coef = mu / divisor;
  const int workers = resolve_workers(c.workers);

  std::vector<double> eta(static_cast<std::size_t>(K));
  for (Index i = 0; i < K; ++i)
    eta[static_cast<std::size_t>(i)] = improved ? P.etas[static_cast<std::size_t>(i)] : P.eta;
  Vector tau(p);
  for (Index i = 0; i < K; ++i)
    for (Index j = part.offset(i); j < part.offset(i) + part.size(i); ++j)
      tau[j] = (c.weights ? c.weights->weight[j] : 1.0) / eta[static_cast<std::size_t>(i)];
  const Vector bound = detail::box_bounds(c, n, p);
  const bool zero_bad = detail::zero_is_infeasible(d.xty, bound);

  SolveReport rep;
  rep.algorithm = c.algorithm;
  rep.lambda = c.lambda;
  rep.mu = mu;
  rep.K = static_cast<int>(K);
  rep.eta = improved ? 0.0 : P.eta;
  if (improved) rep.etas = P.etas;
  rep.precompute_time_s = P.precompute_time_s;

  SolverState s = initial_state(c, p);
  std::vector<Vector> partials;
  Vector Ab;
  blocked_matvec_into(G, s.beta, partials, Ab, workers);
  s.r = Ab - s.z - d.xty;
  rep.slack_dual_reals = static_cast<std::size_t>(s.u.size());
  if (c.diagnostics) rep.snapshots.push_back({s.beta, s.z, s.u});
  rep.trace.reserve(static_cast<std::size_t>(c.max_iter));

  std::vector<Vector> grad(static_cast<std::size_t>(K));
  Vector beta_old(p), r_new(p);
  const auto t0 = Clock::now();
  for (int t = 1; t <= c.max_iter; ++t) {
    beta_old = s.beta;
    detail::for_each_block(K, workers, [&](Index i) {
      const Index off = part.offset(i);
      const Index len = part.size(i);
      const double e = eta[static_cast<std::size_t>(i)];
      Vector& g = grad[static_cast<std::size_t>(i)];
      g.noalias() = G.transposed(i) * s.u;
      for (Index k = 0; k < len; ++k)
        s.beta[off + k] = soft_threshold_scalar(s.beta[off + k] + g[k] / e, tau[off + k]);
    });
    for (Index j = 0; j < p; ++j) s.z[j] = clamp_scalar(s.z[j] - s.u[j] / mu, bound[j]);
    blocked_matvec_into(G, s.beta, partials, Ab, workers);
    r_new = Ab - s.z - d.xty;
    for (Index j = 0; j < p; ++j) s.u[j] -= coef * (2.0 * r_new[j] - s.r[j]);
    s.r.swap(r_new);
    s.iter = t;

    const StopCheck chk = stopping_check(s.beta, beta_old, c.tol);
    const double feas = s.r.lpNorm<Eigen::Infinity>();
    detail::divergence_guard(s.beta, s.z, s.u, t);
    rep.trace.push_back({chk.value, feas});
    if (c.diagnostics) rep.snapshots.push_back({s.beta, s.z, s.u});
    rep.iterations = t;
    if (detail::stop_rule(chk, s.beta, zero_bad) && (!c.feas_tol || feas / static_cast<double>(n) <= *c.feas_tol)) {
      rep.converged = true;
      break;
    }
  }
  rep.wall_time_s = seconds_since(t0);
  rep.termination = rep.converged ? Termination::TolReached : Termination::MaxIter;
  rep.beta_hat = s.beta;
  rep.final_state = std::move(s);
  return rep;
}

}  // namespace

SolveReport solve(const PreparedProblem& prepared, const SolverConfig& config) {
  check_prepared(prepared, config);
  switch (config.algorithm) {
    case Algorithm::PPA:
    case Algorithm::PPPA:
    case Algorithm::IPPPA: return run_proximal_point(prepared, config);
    case Algorithm::LADMM: return ladmm_solve(prepared, config);
    case Algorithm::TADMM: return tadmm_solve(prepared, config);
  }
  throw ArgumentError("unknown algorithm");
}

SolveReport solve(const ProblemData& data, const SolverConfig& config) {
  const PreparedProblem P = prepare(data, config);
  return solve(P, config);
}

namespace {

SolveReport solve_as(const ProblemData& data, SolverConfig config, Algorithm a) {
  config.algorithm = a;
  return solve(data, config);
}

}  // namespace

SolveReport ppa_solve(const ProblemData& data, const SolverConfig& config) {
  return solve_as(data, config, Algorithm::PPA);
}
SolveReport pppa_solve(const ProblemData& data, const SolverConfig& config) {
  return solve_as(data, config, Algorithm::PPPA);
}
SolveReport ippa_solve(const ProblemData& data, const SolverConfig& config) {
  return solve_as(data, config, Algorithm::IPPPA);
}

Vector beta_block_update(const Vector& beta_block, const RowMatrix& gram_block, const Vector& u,
                         double eta, const Vector* weight) {
  if (!(eta > 0.0)) throw ArgumentError("eta must be positive");
  if (gram_block.cols() != beta_block.size() || gram_block.rows() != u.size())
    throw DimensionError("gram block shape does not match beta block and dual");
  if (weight && weight->size() != beta_block.size())
    throw DimensionError("weight length does not match beta block");
  const Vector g = gram_block.transpose() * u;
  Vector out(beta_block.size());
  for (Index k = 0; k < beta_block.size(); ++k) {
    const double tau = (weight ? (*weight)[k] : 1.0) / eta;
    out[k] = soft_threshold_scalar(beta_block[k] + g[k] / eta, tau);
  }
  return out;
}

Vector z_update(const Vector& z_prev, const Vector& u, double mu, const Vector& bound) {
  if (!(mu > 0.0)) throw ArgumentError("mu must be positive");
  if (z_prev.size() != u.size() || z_prev.size() != bound.size())
    throw DimensionError("z, u and bound lengths differ");
  if (!z_prev.allFinite() || !u.allFinite()) throw NumericError("non-finite z or u");
  return project_linf_box(z_prev - u / mu, bound);
}

Vector dual_update(const Vector& u, const Vector& r_new, const Vector& r_old, double mu,
                   double divisor) {
  if (u.size() != r_new.size() || u.size() != r_old.size())
    throw DimensionError("dual and residual lengths differ");
  if (!(divisor > 0.0)) throw ArgumentError("dual divisor must be positive");
  const double coef = mu / divisor;
  Vector out(u.size());
  for (Index j = 0; j < u.size(); ++j) out[j] = u[j] - coef * (2.0 * r_new[j] - r_old[j]);
  return out;
}

StopCheck stopping_check(const Vector& beta_new, const Vector& beta_old, double tol) {
  if (beta_new.size() != beta_old.size()) throw DimensionError("beta lengths differ");
  const double value = (beta_new - beta_old).norm() / std::max(beta_new.norm(), 1.0);
  return {value, value <= tol};
}

}  // namespace dsppa
