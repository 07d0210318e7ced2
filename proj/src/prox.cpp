// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/prox.hpp"

#include "dsppa/errors.hpp"

namespace dsppa {

std::string to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::L1: return "l1";
    case PenaltyKind::SCAD: return "scad";
    case PenaltyKind::MCP: return "mcp";
  }
  return "?";
}

PenaltyKind parse_penalty(const std::string& name) {
  if (name == "l1") return PenaltyKind::L1;
  if (name == "scad") return PenaltyKind::SCAD;
  if (name == "mcp") return PenaltyKind::MCP;
  throw ArgumentError("unknown penalty '" + name + "' (expected l1, scad or mcp)");
}

double default_shape(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::SCAD: return 3.7;
    case PenaltyKind::MCP: return 3.0;
    case PenaltyKind::L1: return 0.0;
  }
  return 0.0;
}

void PenaltySpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ArgumentError("penalty lambda must be positive and finite");
  if (kind == PenaltyKind::SCAD && !(a > 2.0))
    throw ArgumentError("SCAD shape a must exceed 2");
  if (kind == PenaltyKind::MCP && !(a > 1.0)) throw ArgumentError("MCP shape a must exceed 1");
}

Vector soft_threshold(const Vector& v, double tau) {
  if (!(tau >= 0.0)) throw ArgumentError("soft threshold level must be non-negative");
  return v.unaryExpr([tau](double x) { return soft_threshold_scalar(x, tau); });
}

Vector weighted_soft_threshold(const Vector& v, const Vector& tau) {
  if (v.size() != tau.size()) throw DimensionError("threshold vector length mismatch");
  if ((tau.array() < 0.0).any() || tau.hasNaN())
    throw ArgumentError("soft threshold levels must be non-negative");
  Vector out(v.size());
  for (Index j = 0; j < v.size(); ++j) out[j] = soft_threshold_scalar(v[j], tau[j]);
  return out;
}

Vector project_linf_box(const Vector& v, const Vector& bound) {
  if (v.size() != bound.size()) throw DimensionError("bound vector length mismatch");
  if ((bound.array() < 0.0).any() || bound.hasNaN())
    throw ArgumentError("box bounds must be non-negative");
  Vector out(v.size());
  for (Index j = 0; j < v.size(); ++j) out[j] = clamp_scalar(v[j], bound[j]);
  return out;
}

double penalty_derivative_scalar(const PenaltySpec& s, double t) {
  switch (s.kind) {
    case PenaltyKind::L1: return s.lambda;
    case PenaltyKind::SCAD:
      if (t <= s.lambda) return s.lambda;
      if (t < s.a * s.lambda) return (s.a * s.lambda - t) / (s.a - 1.0);
      return 0.0;
    case PenaltyKind::MCP:
      if (t <= s.a * s.lambda) return s.lambda - t / s.a;
      return 0.0;
  }
  return 0.0;
}

double penalty_value_scalar(const PenaltySpec& s, double t) {
  const double l = s.lambda;
  switch (s.kind) {
    case PenaltyKind::L1: return l * t;
    case PenaltyKind::SCAD:
      if (t <= l) return l * t;
      if (t < s.a * l) return (2.0 * s.a * l * t - t * t - l * l) / (2.0 * (s.a - 1.0));
      return l * l * (s.a + 1.0) / 2.0;
    case PenaltyKind::MCP:
      if (t <= s.a * l) return l * t - t * t / (2.0 * s.a);
      return s.a * l * l / 2.0;
  }
  return 0.0;
}

Vector penalty_derivative(const PenaltySpec& spec, const Vector& beta_abs) {
  spec.validate();
  if ((beta_abs.array() < 0.0).any() || beta_abs.hasNaN())
    throw ArgumentError("penalty derivative needs non-negative magnitudes");
  Vector out(beta_abs.size());
  for (Index j = 0; j < beta_abs.size(); ++j) out[j] = penalty_derivative_scalar(spec, beta_abs[j]);
  return out;
}

}  // namespace dsppa
