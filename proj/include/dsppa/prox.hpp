// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/linalg.hpp"

#include <cmath>
#include <string>

namespace dsppa {

enum class PenaltyKind { L1, SCAD, MCP };

std::string to_string(PenaltyKind kind);
PenaltyKind parse_penalty(const std::string& name);

struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::L1;
  double lambda = 1.0;
  double a = 0.0;

  static PenaltySpec l1(double lambda) { return {PenaltyKind::L1, lambda, 0.0}; }
  static PenaltySpec scad(double lambda, double a = 3.7) { return {PenaltyKind::SCAD, lambda, a}; }
  static PenaltySpec mcp(double lambda, double a = 3.0) { return {PenaltyKind::MCP, lambda, a}; }

  /// Throws ArgumentError unless lambda > 0 and a suits the kind.
  void validate() const;
};

/// Default shape parameter for a kind (3.7 for SCAD, 3.0 for MCP, 0 for L1).
double default_shape(PenaltyKind kind);

inline double soft_threshold_scalar(double v, double tau) {
  if (v > tau) return v - tau;
  if (v < -tau) return v + tau;
  return 0.0;
}

inline double clamp_scalar(double v, double bound) {
  return v < -bound ? -bound : (v > bound ? bound : v);
}

Vector soft_threshold(const Vector& v, double tau);
Vector weighted_soft_threshold(const Vector& v, const Vector& tau);
Vector project_linf_box(const Vector& v, const Vector& bound);

/// Derivative of the penalty at |beta|, elementwise.
Vector penalty_derivative(const PenaltySpec& spec, const Vector& beta_abs);
double penalty_derivative_scalar(const PenaltySpec& spec, double t);
/// Penalty value P(t) for t >= 0.
double penalty_value_scalar(const PenaltySpec& spec, double t);

}  // namespace dsppa
