// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/datagen.hpp"

#include "dsppa/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

namespace dsppa {

namespace {

using Engine = boost::random::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Engine engine_for(std::uint64_t seed, StreamRole role) { return Engine(stream_seed(seed, role)); }

// First k entries of a uniformly random permutation of 0..m-1.
std::vector<Index> choose(Engine& rng, Index m, Index k) {
  std::vector<Index> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    boost::random::uniform_int_distribution<Index> pick(i, m - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

}  // namespace

std::string to_string(BetaPattern p) { return p == BetaPattern::Sparse8 ? "sparse8" : "dense"; }

std::string to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::Gaussian: return "gaussian";
    case NoiseKind::MixedNormal: return "mixed";
    case NoiseKind::StudentT: return "t";
    case NoiseKind::Cauchy: return "cauchy";
  }
  return "?";
}

BetaPattern parse_pattern(const std::string& s) {
  if (s == "sparse8") return BetaPattern::Sparse8;
  if (s == "dense") return BetaPattern::Dense;
  throw ArgumentError("unknown beta pattern '" + s + "' (expected sparse8 or dense)");
}

NoiseKind parse_noise(const std::string& s) {
  if (s == "gaussian") return NoiseKind::Gaussian;
  if (s == "mixed") return NoiseKind::MixedNormal;
  if (s == "t") return NoiseKind::StudentT;
  if (s == "cauchy") return NoiseKind::Cauchy;
  throw ArgumentError("unknown noise kind '" + s + "' (expected gaussian, mixed, t or cauchy)");
}

void ScenarioSpec::validate() const {
  if (n < 1 || p < 1) throw ArgumentError("scenario needs n >= 1 and p >= 1");
  if (!(rho >= 0.0 && rho < 1.0)) throw ArgumentError("rho must lie in [0, 1)");
  if (pattern == BetaPattern::Sparse8 && p < 8) throw ArgumentError("sparse8 needs p >= 8");
  if (pattern == BetaPattern::Dense && (s < 1 || p != 2560 * static_cast<Index>(s)))
    throw ArgumentError("dense pattern needs s >= 1 and p = 2560 s");
  if (noise.kind == NoiseKind::StudentT && !(noise.df > 0.0))
    throw ArgumentError("t noise needs df > 0");
  if (!(noise.scale >= 0.0)) throw ArgumentError("noise scale must be non-negative");
}

std::uint64_t stream_seed(std::uint64_t seed, StreamRole role) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(role));
}

DesignMatrix gen_ar1_design(Index n, Index p, double rho, std::uint64_t seed) {
  if (!(rho >= 0.0 && rho < 1.0)) throw ArgumentError("rho must lie in [0, 1)");
  if (n < 1 || p < 1) throw ArgumentError("design needs n >= 1 and p >= 1");
  Engine rng = engine_for(seed, StreamRole::Design);
  boost::random::normal_distribution<double> normal;
  const double c = std::sqrt(1.0 - rho * rho);
  RowMatrix X(n, p);
  for (Index i = 0; i < n; ++i) {
    X(i, 0) = normal(rng);
    for (Index j = 1; j < p; ++j) X(i, j) = rho * X(i, j - 1) + c * normal(rng);
  }
  return DesignMatrix(std::move(X));
}

Vector gen_sparse_beta(Index p, std::uint64_t seed) {
  if (p < 8) throw ArgumentError("sparse8 coefficients need p >= 8");
  static constexpr std::array<double, 8> kValues{3.0, 1.5, 10.0, 4.0, 2.0, 5.0, 2.5, 4.5};
  Engine rng = engine_for(seed, StreamRole::Beta);
  const auto support = choose(rng, p, 8);
  const auto order = choose(rng, 8, 8);
  Vector beta = Vector::Zero(p);
  for (std::size_t k = 0; k < 8; ++k)
    beta[support[k]] = kValues[static_cast<std::size_t>(order[k])];
  return beta;
}

Vector gen_dense_beta(int s, std::uint64_t seed) {
  if (s < 1) throw ArgumentError("dense coefficients need s >= 1");
  const Index seg = 32 * static_cast<Index>(s);
  const Index p = 80 * seg;
  Engine rng = engine_for(seed, StreamRole::Beta);
  boost::random::normal_distribution<double> normal;
  boost::random::bernoulli_distribution<double> coin(0.5);
  auto segments = choose(rng, 80, 10);
  std::sort(segments.begin(), segments.end());
  Vector beta = Vector::Zero(p);
  for (Index g : segments)
    for (Index j = g * seg; j < (g + 1) * seg; ++j) {
      const double xi = coin(rng) ? 1.0 : -1.0;
      beta[j] = xi * (1.0 + std::abs(normal(rng)));
    }
  return beta;
}

Vector gen_noise(Index n, const NoiseSpec& noise, std::uint64_t seed) {
  Engine rng = engine_for(seed, StreamRole::Noise);
  boost::random::normal_distribution<double> normal;
  Vector e(n);
  switch (noise.kind) {
    case NoiseKind::Gaussian:
      for (Index i = 0; i < n; ++i) e[i] = normal(rng);
      break;
    case NoiseKind::MixedNormal: {
      // 0.4 N(-3, 4) + 0.6 N(2, 1); the second parameter is a variance.
      boost::random::bernoulli_distribution<double> first(0.4);
      for (Index i = 0; i < n; ++i) e[i] = first(rng) ? -3.0 + 2.0 * normal(rng) : 2.0 + normal(rng);
      break;
    }
    case NoiseKind::StudentT: {
      if (!(noise.df > 0.0)) throw ArgumentError("t noise needs df > 0");
      boost::random::gamma_distribution<double> chi2(noise.df / 2.0, 2.0);
      for (Index i = 0; i < n; ++i) {
        const double zval = normal(rng);
        e[i] = zval / std::sqrt(chi2(rng) / noise.df);
      }
      break;
    }
    case NoiseKind::Cauchy: {
      boost::random::uniform_01<double> unif;
      const double pi = boost::math::constants::pi<double>();
      for (Index i = 0; i < n; ++i) e[i] = std::tan(pi * (unif(rng) - 0.5));
      break;
    }
  }
  return noise.scale == 1.0 ? e : Vector(noise.scale * e);
}

Dataset gen_dataset(const ScenarioSpec& spec) {
  spec.validate();
  DesignMatrix X = gen_ar1_design(spec.n, spec.p, spec.rho, spec.seed);
  Vector beta = spec.pattern == BetaPattern::Sparse8 ? gen_sparse_beta(spec.p, spec.seed)
                                                     : gen_dense_beta(spec.s, spec.seed);
  Vector y = X.values() * beta;
  if (spec.noise.scale != 0.0) y += gen_noise(spec.n, spec.noise, spec.seed);
  Dataset out;
  out.data = ProblemData::make(std::move(X), std::move(y));
  out.beta_star = std::move(beta);
  out.sigma = {spec.rho};
  return out;
}

}  // namespace dsppa
