// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/problem.hpp"

#include "dsppa/errors.hpp"

#include <string>

namespace dsppa {

ProblemData ProblemData::make(DesignMatrix X, Vector y) {
  if (y.size() != X.rows())
    throw DimensionError("response has " + std::to_string(y.size()) + " entries but X has " +
                         std::to_string(X.rows()) + " rows");
  if (!y.allFinite()) throw DataError("response has non-finite entries");
  ProblemData d;
  d.xty.noalias() = X.values().transpose() * y;
  d.X = std::move(X);
  d.y = std::move(y);
  return d;
}

double lambda_max(const ProblemData& data) {
  return data.xty.cwiseAbs().maxCoeff() / static_cast<double>(data.n());
}

}  // namespace dsppa
