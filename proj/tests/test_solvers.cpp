// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/errors.hpp"
#include "dsppa/solvers.hpp"
#include "dsppa/verify.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace dsppa;
using dsppa::testing::random_problem;

namespace {

SolverConfig tight(Algorithm alg, double lambda, int K = 1) {
  SolverConfig c;
  c.algorithm = alg;
  c.lambda = lambda;
  c.K = K;
  c.tol = 1e-10;
  c.feas_tol = 1e-8;
  c.max_iter = 200000;
  c.mu = 1.0;
  return c;
}

bool same_bits(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

Vector one(double x) { return Vector::Constant(1, x); }

}  // namespace

TEST(BetaBlockUpdate, OriginIsFixed) {
  const Vector out = beta_block_update(Vector::Zero(3), RowMatrix::Identity(3, 3), Vector::Zero(3), 2.0);
  EXPECT_EQ(out, Vector::Zero(3));
}

TEST(BetaBlockUpdate, FormulaSubstitution) {
  // beta = 1, A^T u / eta = 0.5, 1 / eta = 0.3 -> ST(1.5, 0.3) = 1.2
  const double eta = 1.0 / 0.3;
  const Vector out = beta_block_update(one(1.0), RowMatrix::Identity(1, 1), one(0.5 * eta), eta);
  EXPECT_NEAR(out[0], 1.2, 1e-15);
}

TEST(BetaBlockUpdate, MatchesGridMinimizer) {
  dsppa::testing::Rng rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const RowMatrix Ai = rng.normal_matrix(4, 2);
    const Vector b = rng.normal_vector(2), u = rng.normal_vector(4);
    const double eta = rng.uniform(1.0, 4.0);
    const Vector got = beta_block_update(b, Ai, u, eta);
    const Vector c = b + Ai.transpose() * u / eta;
    // Separable, so each coordinate minimizes |x| + (eta/2)(x - c)^2 on its own.
    for (Index k = 0; k < 2; ++k) {
      double best = 0, bf = 1e300;
      for (double x = c[k] - 2.0; x <= c[k] + 2.0; x += 1e-6) {
        const double f = std::abs(x) + 0.5 * eta * (x - c[k]) * (x - c[k]);
        if (f < bf) bf = f, best = x;
      }
      EXPECT_NEAR(got[k], best, 1e-5);
    }
  }
}

TEST(ZUpdate, InsideBoxWithZeroDualUnchanged) {
  Vector z(2);
  z << 0.3, -0.2;
  EXPECT_EQ(z_update(z, Vector::Zero(2), 1.0, Vector::Ones(2)), z);
}

TEST(ZUpdate, ClampArithmetic) {
  Vector u(2), expect(2);
  u << 2, -2;
  expect << -1, 1;
  EXPECT_EQ(z_update(Vector::Zero(2), u, 1.0, Vector::Ones(2)), expect);
}

TEST(ZUpdate, MatchesGridArgmin) {
  dsppa::testing::Rng rng(32);
  for (int rep = 0; rep < 20; ++rep) {
    const double zp = rng.uniform(-2, 2), u = rng.uniform(-2, 2), mu = rng.uniform(0.5, 2),
                 b = rng.uniform(0, 1.5);
    double best = 0, bf = 1e300;
    for (double z = -b; z <= b; z += 1e-6) {
      const double f = (z - zp + u / mu) * (z - zp + u / mu);
      if (f < bf) bf = f, best = z;
    }
    EXPECT_NEAR(z_update(one(zp), one(u), mu, one(b))[0], best, 1e-6);
  }
}

TEST(DualUpdate, Examples) {
  const Vector u = one(0.25);
  EXPECT_EQ(dual_update(u, one(0), one(0), 1.0, 2.0), u);
  EXPECT_DOUBLE_EQ(dual_update(u, one(1), one(3), 2.0, 2.0)[0], 1.25);
  EXPECT_EQ(dual_update(u, one(0.7), one(-0.1), 0.3, 1 + 1), dual_update(u, one(0.7), one(-0.1), 0.3, 2));
  EXPECT_THROW(dual_update(u, one(0), one(0), 1.0, 0.0), ArgumentError);
}

TEST(StoppingCheck, Examples) {
  Vector a(2), b(2);
  a << 3, 4;
  b << 3, 3;
  EXPECT_DOUBLE_EQ(stopping_check(a, b, 1e-4).value, 0.2);
  EXPECT_TRUE(stopping_check(a, a, 0.0).stop);
  Vector s(1), t(1);
  s << 0.5;
  t << 0.4;
  EXPECT_DOUBLE_EQ(stopping_check(s, t, 1e-4).value, 0.1);  // denominator clamps to 1
}

TEST(Solvers, LargeLambdaGivesZero) {
  const ProblemData d = random_problem(12, 5, 41);
  for (Algorithm alg : {Algorithm::PPA, Algorithm::PPPA, Algorithm::IPPPA}) {
    SolverConfig c = tight(alg, lambda_max(d) * 1.01, alg == Algorithm::PPA ? 1 : 2);
    const SolveReport r = solve(d, c);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.beta_hat.lpNorm<Eigen::Infinity>(), 1e-8) << to_string(alg);
  }
}

TEST(Solvers, MatchLpOracleOnTinyInstance) {
  const ProblemData d = random_problem(5, 3, 42);
  const double lam = 0.3 * lambda_max(d);
  const Vector lp = lp_oracle_solve(d, lam);
  const double opt = lp.lpNorm<1>();
  for (Algorithm alg : {Algorithm::PPA, Algorithm::PPPA, Algorithm::IPPPA}) {
    const SolveReport r = solve(d, tight(alg, lam, alg == Algorithm::PPA ? 1 : 2));
    EXPECT_NEAR(r.beta_hat.lpNorm<1>(), opt, 1e-3) << to_string(alg);
    EXPECT_LE(kkt_feasibility(d, r.beta_hat, lam).linf_violation, 1e-6) << to_string(alg);
  }
}

TEST(Solvers, ParallelWithOneBlockIsPpaBitwise) {
  const ProblemData d = random_problem(30, 12, 43);
  SolverConfig c;
  c.lambda = 0.2 * lambda_max(d);
  c.max_iter = 300;
  c.diagnostics = true;
  const SolveReport base = ppa_solve(d, c);
  for (Algorithm alg : {Algorithm::PPPA, Algorithm::IPPPA}) {
    SolverConfig k1 = c;
    k1.algorithm = alg;
    const SolveReport r = solve(d, k1);
    ASSERT_EQ(r.snapshots.size(), base.snapshots.size());
    for (std::size_t t = 0; t < r.snapshots.size(); ++t) {
      ASSERT_TRUE(same_bits(r.snapshots[t].beta, base.snapshots[t].beta)) << t;
      ASSERT_TRUE(same_bits(r.snapshots[t].u, base.snapshots[t].u)) << t;
    }
  }
}

TEST(Solvers, PartitionsGiveSameTrajectory) {
  const ProblemData d = random_problem(40, 24, 44);
  SolverConfig c;
  c.lambda = 0.15 * lambda_max(d);
  c.max_iter = 300;
  c.diagnostics = true;
  const SolveReport k1 = pppa_solve(d, c);
  c.K = 4;
  const SolveReport k4 = pppa_solve(d, c);
  ASSERT_EQ(k1.snapshots.size(), k4.snapshots.size());
  for (std::size_t t = 0; t < k1.snapshots.size(); ++t) {
    const double scale = std::max(1e-300, k1.snapshots[t].beta.lpNorm<Eigen::Infinity>());
    EXPECT_LE((k1.snapshots[t].beta - k4.snapshots[t].beta).lpNorm<Eigen::Infinity>() / scale, 1e-8);
  }
}

TEST(Solvers, ImprovedParallelAgreesWithParallel) {
  const ProblemData d = random_problem(60, 40, 45);
  const double lam = 0.2 * lambda_max(d);
  SolverConfig c = tight(Algorithm::PPPA, lam, 4);
  c.tol = 1e-9;
  c.feas_tol = 1e-7;
  const SolveReport a = solve(d, c);
  c.algorithm = Algorithm::IPPPA;
  const SolveReport b = solve(d, c);
  EXPECT_LE((a.beta_hat - b.beta_hat).lpNorm<Eigen::Infinity>(), 1e-3);
}

TEST(Solvers, ImprovedParallelNeedsAtLeastAsManyIterations) {
  const ProblemData d = random_problem(60, 40, 46);
  SolverConfig c;
  c.algorithm = Algorithm::PPPA;
  c.lambda = 0.2 * lambda_max(d);
  c.K = 10;
  c.max_iter = 100000;
  c.mu = 1.0;
  const SolveReport a = solve(d, c);
  c.algorithm = Algorithm::IPPPA;
  const SolveReport b = solve(d, c);
  EXPECT_GE(b.iterations, a.iterations);
}

TEST(Solvers, SlackStaysInBoxEveryIteration) {
  const ProblemData d = random_problem(25, 15, 47);
  for (Algorithm alg : {Algorithm::PPA, Algorithm::PPPA, Algorithm::IPPPA, Algorithm::LADMM,
                        Algorithm::TADMM}) {
    SolverConfig c;
    c.algorithm = alg;
    c.lambda = 0.1 * lambda_max(d);
    c.K = alg == Algorithm::PPA || alg == Algorithm::LADMM ? 1 : 3;
    c.max_iter = 200;
    c.diagnostics = true;
    const SolveReport r = solve(d, c);
    const double bound = static_cast<double>(d.n()) * c.lambda;
    for (std::size_t t = 1; t < r.snapshots.size(); ++t)
      ASSERT_LE(r.snapshots[t].z.lpNorm<Eigen::Infinity>(), bound) << to_string(alg) << " " << t;
  }
}

TEST(Solvers, WarmStartAtSolutionStopsQuickly) {
  const ProblemData d = random_problem(30, 10, 48);
  SolverConfig c = tight(Algorithm::PPA, 0.2 * lambda_max(d));
  const SolveReport cold = solve(d, c);
  c.warm_start = cold.final_state;
  const SolveReport warm = solve(d, c);
  EXPECT_LT(warm.iterations * 10, cold.iterations);
}

TEST(Solvers, ReportsTraceAndTermination) {
  const ProblemData d = random_problem(20, 8, 49);
  SolverConfig c;
  c.lambda = 0.2 * lambda_max(d);
  c.max_iter = 3;
  c.tol = 1e-300;
  const SolveReport r = solve(d, c);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_EQ(r.termination, Termination::MaxIter);
  EXPECT_EQ(r.trace.size(), 3u);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(r.snapshots.empty());
  EXPECT_GT(r.eta, r.mu * 0.0);
}

TEST(Solvers, ConfigValidation) {
  const ProblemData d = random_problem(10, 4, 50);
  SolverConfig c;
  c.lambda = 0.1;
  c.K = 5;
  c.algorithm = Algorithm::PPPA;
  EXPECT_THROW(solve(d, c), ArgumentError);
  c.K = 2;
  c.tol = -1;
  EXPECT_THROW(solve(d, c), ArgumentError);
  c.tol = 1e-4;
  c.lambda = -0.5;
  EXPECT_THROW(solve(d, c), ArgumentError);
  c.lambda = 0.1;
  SolverState bad;
  bad.beta = Vector::Zero(3);
  bad.z = bad.u = Vector::Zero(4);
  c.warm_start = bad;
  EXPECT_THROW(solve(d, c), DimensionError);
}

TEST(Solvers, DefaultMuIsInverseSquaredSampleCount) {
  SolverConfig c;
  EXPECT_DOUBLE_EQ(c.resolved_mu(20), 1.0 / 400.0);
  c.mu = 0.7;
  EXPECT_DOUBLE_EQ(c.resolved_mu(20), 0.7);
}

TEST(Solvers, AlgorithmNames) {
  EXPECT_EQ(parse_algorithm("ippa"), Algorithm::IPPPA);
  EXPECT_EQ(parse_algorithm("ipppa"), Algorithm::IPPPA);
  EXPECT_EQ(to_string(Algorithm::TADMM), "tadmm");
  EXPECT_THROW(parse_algorithm("sgd"), ArgumentError);
}
