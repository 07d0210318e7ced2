// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/errors.hpp"
#include "dsppa/prox.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace dsppa;
using dsppa::testing::Rng;

namespace {

// argmin over a grid of tau |b| + 0.5 (b - v)^2.
double grid_prox_l1(double v, double tau, double lo, double hi, double step) {
  double best = lo, best_f = 1e300;
  for (double b = lo; b <= hi; b += step) {
    const double f = tau * std::abs(b) + 0.5 * (b - v) * (b - v);
    if (f < best_f) best_f = f, best = b;
  }
  return best;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST(SoftThreshold, PiecewiseExample) {
  EXPECT_EQ(soft_threshold(vec({3, -0.5, 0}), 1.0), vec({2, 0, 0}));
}

TEST(SoftThreshold, ZeroTauIsIdentity) {
  const Vector v = vec({1.5, -2.25, 0.0, 7.0});
  EXPECT_EQ(soft_threshold(v, 0.0), v);
}

TEST(SoftThreshold, NegativeTauRejected) {
  EXPECT_THROW(soft_threshold(vec({1}), -0.1), ArgumentError);
}

TEST(SoftThreshold, ScalarMatchesGridMinimizer) {
  // |b| + (eta/2)(b - 1.5)^2 with eta = 2, i.e. tau = 0.5.
  EXPECT_DOUBLE_EQ(soft_threshold(vec({1.5}), 0.5)[0], 1.0);
  EXPECT_NEAR(grid_prox_l1(1.5, 0.5, -3.0, 3.0, 1e-4), 1.0, 1e-4);
}

TEST(WeightedSoftThreshold, EqualWeightsReduceToPlain) {
  Rng rng(21);
  const Vector v = rng.normal_vector(20);
  EXPECT_EQ(weighted_soft_threshold(v, Vector::Constant(20, 0.4)), soft_threshold(v, 0.4));
}

TEST(WeightedSoftThreshold, ZeroWeightPassesThrough) {
  const Vector out = weighted_soft_threshold(vec({0.3, 0.3}), vec({0.0, 1.0}));
  EXPECT_EQ(out, vec({0.3, 0.0}));
}

TEST(WeightedSoftThreshold, MatchesGridOracle) {
  Rng rng(22);
  for (int rep = 0; rep < 30; ++rep) {
    const double v = rng.uniform(-2, 2), tau = rng.uniform(0, 1.5);
    const Vector got = weighted_soft_threshold(vec({v}), vec({tau}));
    EXPECT_NEAR(got[0], grid_prox_l1(v, tau, -3.0, 3.0, 1e-6), 1e-6);
  }
}

TEST(ProjectBox, ClampExample) {
  EXPECT_EQ(project_linf_box(vec({2, -3, 0.2}), vec({1, 1, 1})), vec({1, -1, 0.2}));
}

TEST(ProjectBox, InsideIsUnchangedAndNegativeBoundRejected) {
  EXPECT_EQ(project_linf_box(vec({0.5, -0.5}), vec({1, 1})), vec({0.5, -0.5}));
  EXPECT_THROW(project_linf_box(vec({0.5}), vec({-1})), ArgumentError);
  EXPECT_THROW(project_linf_box(vec({0.5, 1}), vec({1})), DimensionError);
}

TEST(ProjectBox, MatchesGridArgmin) {
  Rng rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    const double v = rng.uniform(-3, 3), b = rng.uniform(0, 2);
    double best = -b, best_f = 1e300;
    for (double z = -b; z <= b; z += 1e-6) {
      const double f = (z - v) * (z - v);
      if (f < best_f) best_f = f, best = z;
    }
    EXPECT_NEAR(project_linf_box(vec({v}), vec({b}))[0], best, 1e-6);
  }
}

TEST(PenaltyDerivative, ScadPieces) {
  const auto s = PenaltySpec::scad(1.0, 3.7);
  EXPECT_DOUBLE_EQ(penalty_derivative_scalar(s, 0.5), 1.0);
  EXPECT_NEAR(penalty_derivative_scalar(s, 2.0), 1.7 / 2.7, 1e-15);
  EXPECT_NEAR(penalty_derivative_scalar(s, 2.0), 0.62963, 1e-5);
  EXPECT_EQ(penalty_derivative_scalar(s, 10.0), 0.0);
}

TEST(PenaltyDerivative, McpPieces) {
  const auto m = PenaltySpec::mcp(1.0, 3.0);
  EXPECT_DOUBLE_EQ(penalty_derivative_scalar(m, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(penalty_derivative_scalar(m, 1.5), 0.5);
  EXPECT_EQ(penalty_derivative_scalar(m, 4.0), 0.0);
}

TEST(PenaltyDerivative, L1IsConstant) {
  const auto l = PenaltySpec::l1(0.7);
  for (double t : {0.0, 0.3, 5.0, 1e6}) EXPECT_EQ(penalty_derivative_scalar(l, t), 0.7);
}

TEST(PenaltyDerivative, VectorFormMatchesScalar) {
  const auto s = PenaltySpec::scad(0.5);
  const Vector b = vec({0.0, 0.4, 0.9, 1.2, 3.0});
  const Vector d = penalty_derivative(s, b);
  for (Index j = 0; j < b.size(); ++j) EXPECT_EQ(d[j], penalty_derivative_scalar(s, b[j]));
}

TEST(PenaltySpec, Validation) {
  EXPECT_THROW(PenaltySpec::scad(1.0, 2.0).validate(), ArgumentError);
  EXPECT_THROW(PenaltySpec::mcp(1.0, 1.0).validate(), ArgumentError);
  EXPECT_THROW(PenaltySpec::l1(-1.0).validate(), ArgumentError);
  EXPECT_NO_THROW(PenaltySpec::scad(1.0).validate());
  EXPECT_EQ(parse_penalty("mcp"), PenaltyKind::MCP);
  EXPECT_THROW(parse_penalty("ridge"), ArgumentError);
}

TEST(PenaltyValue, DerivativeIsSlopeOfValue) {
  for (const auto& s : {PenaltySpec::scad(1.0), PenaltySpec::mcp(1.0)}) {
    for (double t : {0.3, 1.4, 2.5, 3.3, 5.0}) {
      const double h = 1e-6;
      const double fd = (penalty_value_scalar(s, t + h) - penalty_value_scalar(s, t - h)) / (2 * h);
      EXPECT_NEAR(fd, penalty_derivative_scalar(s, t), 1e-6);
    }
  }
}
