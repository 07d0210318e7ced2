// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/errors.hpp"
#include "dsppa/solvers.hpp"
#include "dsppa/verify.hpp"
#include "test_util.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

using namespace dsppa;
using dsppa::testing::random_problem;
using dsppa::testing::Rng;

namespace {

double min_eig(const Eigen::MatrixXd& H) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues().minCoeff();
}

bool feasible(const ProblemData& d, const Vector& b, double lam) {
  const Vector g = (d.X.values().transpose() * (d.X.values() * b - d.y)) / static_cast<double>(d.n());
  return g.lpNorm<Eigen::Infinity>() <= lam;
}

// Coarse-to-fine lattice search over the feasible set, independent of the simplex.
double lattice_minimum(const ProblemData& d, double lam, double radius) {
  Vector center = Vector::Zero(3);
  double step = radius / 20.0, best = 1e300;
  Vector arg = center;
  for (int level = 0; level < 9; ++level) {
    const int half = level == 0 ? 20 : 6;
    for (int i = -half; i <= half; ++i)
      for (int j = -half; j <= half; ++j)
        for (int k = -half; k <= half; ++k) {
          Vector b = center;
          b[0] += i * step, b[1] += j * step, b[2] += k * step;
          const double f = b.lpNorm<1>();
          if (f < best && feasible(d, b, lam)) best = f, arg = b;
        }
    center = arg;
    step /= 4.0;
  }
  return best;
}

SolverConfig run_config(Algorithm alg, int K, double mu, double lam) {
  SolverConfig c;
  c.algorithm = alg;
  c.K = K;
  c.mu = mu;
  c.lambda = lam;
  return c;
}

}  // namespace

TEST(ContractionMetric, ZeroCouplingCase) {
  const GramBlocks G = gram_blocks(DesignMatrix(RowMatrix::Zero(3, 2)), Partition::even(2, 1));
  const ContractionMetric m = build_contraction_metric(G, 1.0, EtaSpec::make_global(1.0));
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(6, 6);
  expect.topLeftCorner(2, 2).setIdentity();
  expect.block(2, 2, 2, 2).setIdentity();
  expect.block(2, 4, 2, 2) = -Eigen::MatrixXd::Identity(2, 2);
  expect.block(4, 2, 2, 2) = -Eigen::MatrixXd::Identity(2, 2);
  expect.block(4, 4, 2, 2) = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  EXPECT_EQ(m.H, expect);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m.H).eigenvalues();
  EXPECT_NEAR(ev.minCoeff(), (3.0 - std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_NEAR(ev.maxCoeff(), (3.0 + std::sqrt(5.0)) / 2.0, 1e-12);
}

TEST(ContractionMetric, PositiveDefiniteAndExactlySymmetric) {
  Rng rng(81);
  for (int rep = 0; rep < 10; ++rep) {
    const DesignMatrix X(rng.normal_matrix(6, 4));
    const double mu = rng.uniform(0.2, 2.0);
    const GramBlocks G1 = gram_blocks(X, Partition::even(4, 1));
    const double lmax = power_method_max_eigen(gram_normal_operator(G1, mu), 4, 1e-12, 10000);
    const ContractionMetric m = build_contraction_metric(G1, mu, EtaSpec::make_global(lmax + 1.0));
    EXPECT_GT(min_eig(m.H), 0.0);
    EXPECT_TRUE(m.H == m.H.transpose());
    const GramBlocks G2 = gram_blocks(X, Partition::even(4, 2));
    std::vector<double> etas;
    for (Index i = 0; i < 2; ++i)
      etas.push_back(power_method_max_eigen(block_normal_operator(G2, i, mu), 2, 1e-12, 10000) + 1.0);
    const ContractionMetric mk = build_contraction_metric(G2, mu, EtaSpec::make_per_block(etas));
    EXPECT_GT(min_eig(mk.H), 0.0);
    EXPECT_TRUE(mk.H == mk.H.transpose());
    EXPECT_GE(min_eig(build_companion_metric(G1, mu, MetricKind::Global)), -1e-9 * m.H.norm());
    EXPECT_GE(min_eig(build_companion_metric(G2, mu, MetricKind::PerBlock)), -1e-9 * mk.H.norm());
  }
}

TEST(ContractionMetric, SingleBlockPerBlockEqualsGlobal) {
  Rng rng(82);
  const GramBlocks G = gram_blocks(DesignMatrix(rng.normal_matrix(7, 3)), Partition::even(3, 1));
  const double eta = power_method_max_eigen(gram_normal_operator(G, 1.0), 3, 1e-12, 10000) + 1.0;
  const auto a = build_contraction_metric(G, 1.0, EtaSpec::make_global(eta));
  const auto b = build_contraction_metric(G, 1.0, EtaSpec::make_per_block({eta}));
  EXPECT_EQ(a.H, b.H);
}

TEST(ContractionMetric, RejectsTooSmallEta) {
  Rng rng(83);
  const GramBlocks G = gram_blocks(DesignMatrix(rng.normal_matrix(7, 3)), Partition::even(3, 1));
  EXPECT_THROW(build_contraction_metric(G, 1.0, EtaSpec::make_global(1e-3)), PreconditionError);
}

TEST(HNorm, BasicCases) {
  const GramBlocks G = gram_blocks(DesignMatrix(RowMatrix::Zero(2, 2)), Partition::even(2, 1));
  ContractionMetric m = build_contraction_metric(G, 1.0, EtaSpec::make_global(1.0));
  EXPECT_EQ(h_norm_sq(m, Vector::Zero(6)), 0.0);
  m.H = Eigen::MatrixXd::Identity(6, 6);
  Rng rng(84);
  const Vector g = rng.normal_vector(6);
  EXPECT_NEAR(h_norm_sq(m, g), g.squaredNorm(), 1e-14);
}

TEST(HNorm, MatchesTripleLoop) {
  Rng rng(85);
  const GramBlocks G = gram_blocks(DesignMatrix(rng.normal_matrix(6, 4)), Partition::even(4, 2));
  const ContractionMetric m = build_contraction_metric(G, 0.5, EtaSpec::make_global(1e3));
  const Vector g = rng.normal_vector(12);
  double ref = 0.0;
  for (Index i = 0; i < 12; ++i)
    for (Index j = 0; j < 12; ++j) ref += g[i] * m.H(i, j) * g[j];
  EXPECT_NEAR(h_norm_sq(m, g), ref, 1e-10 * std::abs(ref));
}

TEST(CheckContraction, FixedPointPassesWithZeros) {
  const GramBlocks G = gram_blocks(DesignMatrix(RowMatrix::Identity(3, 3)), Partition::even(3, 1));
  const auto m = build_contraction_metric(G, 1.0, EtaSpec::make_global(2.0));
  Snapshot s{Vector::Ones(3), Vector::Zero(3), Vector::Ones(3)};
  const auto r = check_contraction({s, s, s}, m, s);
  EXPECT_TRUE(r.ok());
  for (double v : r.successive) EXPECT_EQ(v, 0.0);
}

TEST(CheckContraction, PpaAndImprovedParallelTraces) {
  const ProblemData d = random_problem(30, 10, 86);
  const double lam = 0.2 * lambda_max(d);
  for (auto [alg, K] : {std::pair{Algorithm::PPA, 1}, std::pair{Algorithm::IPPPA, 3}}) {
    SolverConfig c = run_config(alg, K, 1.0, lam);
    c.tol = 1e-13;
    c.max_iter = 200000;
    const SolveReport star = solve(d, c);
    c.tol = 1e-300;
    c.max_iter = 200;
    c.diagnostics = true;
    const PreparedProblem P = prepare(d, c);
    const SolveReport tr = solve(P, c);
    const EtaSpec eta =
        alg == Algorithm::IPPPA ? EtaSpec::make_per_block(P.etas) : EtaSpec::make_global(P.eta);
    const auto m = build_contraction_metric(P.gram, P.mu, eta);
    const Snapshot gs{star.final_state.beta, star.final_state.z, star.final_state.u};
    const auto r = check_contraction(tr.snapshots, m, gs);
    EXPECT_TRUE(r.ok()) << to_string(alg) << " " << r.worst_successive << " " << r.worst_optimum
                        << " " << r.worst_rate;
    EXPECT_EQ(r.successive.size(), 200u);
  }
}

TEST(CheckContraction, DetectsIncrease) {
  const GramBlocks G = gram_blocks(DesignMatrix(RowMatrix::Identity(2, 2)), Partition::even(2, 1));
  const auto m = build_contraction_metric(G, 1.0, EtaSpec::make_global(2.0));
  Snapshot a{Vector::Zero(2), Vector::Zero(2), Vector::Zero(2)};
  Snapshot b{Vector::Ones(2), Vector::Zero(2), Vector::Zero(2)};
  Snapshot c{Vector::Constant(2, 5.0), Vector::Zero(2), Vector::Zero(2)};
  EXPECT_FALSE(check_contraction({a, b, c}, m, a).ok());
}

TEST(Feasibility, OriginCases) {
  const ProblemData d = random_problem(10, 4, 87);
  const double lmax = lambda_max(d);
  const Feasibility f = kkt_feasibility(d, Vector::Zero(4), lmax * 1.5);
  EXPECT_EQ(f.linf_violation, 0.0);
  EXPECT_EQ(f.l1_objective, 0.0);
  EXPECT_NEAR(kkt_feasibility(d, Vector::Zero(4), 0.5 * lmax).linf_violation, 0.5 * lmax, 1e-14);
}

TEST(LpOracle, LargeLambdaGivesOrigin) {
  const ProblemData d = random_problem(10, 4, 88);
  EXPECT_EQ(lp_oracle_solve(d, lambda_max(d)).lpNorm<1>(), 0.0);
}

TEST(LpOracle, SolutionIsFeasible) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ProblemData d = random_problem(9, 5, 100 + s);
    const double lam = 0.3 * lambda_max(d);
    EXPECT_LE(kkt_feasibility(d, lp_oracle_solve(d, lam), lam).linf_violation, 1e-9);
  }
}

TEST(LpOracle, OneDimensionalMatchesGrid) {
  Rng rng(89);
  for (int rep = 0; rep < 5; ++rep) {
    RowMatrix X = rng.normal_matrix(6, 1);
    Vector y = X.col(0) * rng.uniform(1.0, 3.0) + 0.3 * rng.normal_vector(6);
    const ProblemData d = ProblemData::make(DesignMatrix(X), y);
    const double lam = rng.uniform(0.1, 0.9) * lambda_max(d);
    double best = 1e300;
    for (double b = -10.0; b <= 10.0; b += 1e-5)
      if (std::abs(b) < std::abs(best) && feasible(d, Vector::Constant(1, b), lam)) best = b;
    EXPECT_NEAR(lp_oracle_solve(d, lam)[0], best, 2e-5);
  }
}

TEST(LpOracle, ThreeDimensionalMatchesLattice) {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const ProblemData d = random_problem(5, 3, 90 + s);
    const double lam = 0.3 * lambda_max(d);
    const Vector ls = d.X.values().colPivHouseholderQr().solve(d.y);
    const double lattice = lattice_minimum(d, lam, ls.lpNorm<1>() + 1.0);
    EXPECT_NEAR(lp_oracle_solve(d, lam).lpNorm<1>(), lattice, 1e-4);
  }
}

TEST(LpOracle, RejectsLargeProblems) {
  const ProblemData d = random_problem(120, 101, 95);
  EXPECT_THROW(lp_oracle_solve(d, 0.1), ArgumentError);
}

TEST(PartitionCheck, RepeatedSinglePartitionIsExact) {
  const ProblemData d = random_problem(20, 8, 96);
  SolverConfig c = run_config(Algorithm::PPPA, 1, 0.0, 0.2 * lambda_max(d));
  c.max_iter = 100;
  const auto r = partition_insensitivity_check(d, c, {Partition::even(8, 1), Partition::even(8, 1)});
  EXPECT_EQ(r.max_discrepancy, 0.0);
  EXPECT_TRUE(r.ok);
}

TEST(PartitionCheck, EvenAndUnevenPartitions) {
  const ProblemData d = random_problem(40, 24, 97);
  SolverConfig c = run_config(Algorithm::PPPA, 1, 0.0, 0.15 * lambda_max(d));
  c.max_iter = 300;
  std::vector<Partition> parts;
  for (Index K : {1, 2, 3, 4, 6, 8}) parts.push_back(Partition::even(24, K));
  parts.push_back(Partition::from_sizes({1, 7, 4, 12}));
  const auto r = partition_insensitivity_check(d, c, parts);
  EXPECT_TRUE(r.ok) << r.max_discrepancy;
  EXPECT_LE(r.max_discrepancy, 1e-8);
}
