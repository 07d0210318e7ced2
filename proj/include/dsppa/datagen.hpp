// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/linalg.hpp"
#include "dsppa/problem.hpp"

#include <cstdint>
#include <string>

namespace dsppa {

enum class BetaPattern { Sparse8, Dense };
enum class NoiseKind { Gaussian, MixedNormal, StudentT, Cauchy };

std::string to_string(BetaPattern p);
std::string to_string(NoiseKind k);
BetaPattern parse_pattern(const std::string& s);
NoiseKind parse_noise(const std::string& s);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::Gaussian;
  double df = 2.5;     // StudentT only
  double scale = 1.0;  // multiplies every draw; 0 gives a noiseless response
};

struct ScenarioSpec {
  Index n = 500;
  Index p = 1000;
  double rho = 0.5;
  BetaPattern pattern = BetaPattern::Sparse8;
  int s = 1;  // Dense only: p must equal 2560 s
  NoiseSpec noise;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Rows i.i.d. N(0, Sigma) with Sigma_jk = rho^|j-k|.
struct Ar1Covariance {
  double rho = 0.0;
};

struct Dataset {
  ProblemData data;
  Vector beta_star;
  Ar1Covariance sigma;
};

/// Independent generator streams derived from one seed.
enum class StreamRole : std::uint64_t { Design = 1, Beta = 2, Noise = 3 };
std::uint64_t stream_seed(std::uint64_t seed, StreamRole role);

DesignMatrix gen_ar1_design(Index n, Index p, double rho, std::uint64_t seed);
/// The eight values {3, 1.5, 10, 4, 2, 5, 2.5, 4.5} on a random support.
Vector gen_sparse_beta(Index p, std::uint64_t seed);
/// p = 2560 s; 10 of 80 contiguous segments carry xi (1 + |a|), xi = +-1, a ~ N(0, 1).
Vector gen_dense_beta(int s, std::uint64_t seed);
Vector gen_noise(Index n, const NoiseSpec& noise, std::uint64_t seed);
Dataset gen_dataset(const ScenarioSpec& spec);

}  // namespace dsppa
