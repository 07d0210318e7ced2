// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/linalg.hpp"

namespace dsppa {

/// Design, response and the cached X^T y.
struct ProblemData {
  DesignMatrix X;
  Vector y;
  Vector xty;

  static ProblemData make(DesignMatrix X, Vector y);

  Index n() const { return X.rows(); }
  Index p() const { return X.cols(); }
};

/// ||X^T y||_inf / n, the smallest lambda for which beta = 0 is feasible.
double lambda_max(const ProblemData& data);

}  // namespace dsppa
