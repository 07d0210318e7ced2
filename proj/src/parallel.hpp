// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace dsppa::detail {

/// Runs f(i) for i in [0, K), statically split over `workers` threads. Each
/// index is handled by exactly one thread, so per-index outputs do not depend
/// on the worker count.
template <class F>
void for_each_block(Eigen::Index K, int workers, F&& f) {
#ifdef _OPENMP
  if (workers > 1 && K > 1) {
#pragma omp parallel for num_threads(workers) schedule(static)
    for (Eigen::Index i = 0; i < K; ++i) f(i);
    return;
  }
#endif
  (void)workers;
  for (Eigen::Index i = 0; i < K; ++i) f(i);
}

}  // namespace dsppa::detail
