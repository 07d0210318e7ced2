// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/linalg.hpp"

#include "dsppa/errors.hpp"
#include "parallel.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <thread>


namespace dsppa {

using detail::for_each_block;

DesignMatrix::DesignMatrix(RowMatrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1)
    throw DimensionError("design matrix must have at least one row and one column");
  if (!values_.allFinite()) throw DataError("design matrix has non-finite entries");
}

Partition Partition::even(Index p, Index K) {
  if (K < 1 || K > p)
    throw ArgumentError("block count " + std::to_string(K) + " must be in [1, " +
                        std::to_string(p) + "]");
  std::vector<Index> sizes(static_cast<std::size_t>(K), p / K);
  for (Index i = 0; i < p % K; ++i) ++sizes[static_cast<std::size_t>(i)];
  return from_sizes(std::move(sizes));
}

Partition Partition::from_sizes(std::vector<Index> sizes) {
  if (sizes.empty()) throw ArgumentError("partition needs at least one block");
  Partition out;
  out.offsets_.reserve(sizes.size() + 1);
  out.offsets_.push_back(0);
  for (Index s : sizes) {
    if (s < 1) throw ArgumentError("partition block sizes must be positive");
    out.offsets_.push_back(out.offsets_.back() + s);
  }
  out.sizes_ = std::move(sizes);
  return out;
}

GramBlocks::GramBlocks(Partition partition, std::vector<RowMatrix> transposed_blocks)
    : partition_(std::move(partition)), blocks_(std::move(transposed_blocks)) {
  if (static_cast<Index>(blocks_.size()) != partition_.count())
    throw DimensionError("gram block count does not match partition");
  for (Index i = 0; i < partition_.count(); ++i) {
    const auto& b = blocks_[static_cast<std::size_t>(i)];
    if (b.rows() != partition_.size(i) || b.cols() != partition_.total())
      throw DimensionError("gram block " + std::to_string(i) + " has wrong shape");
  }
}

RowMatrix GramBlocks::assemble() const {
  const Index p = dim();
  RowMatrix A(p, p);
  for (Index i = 0; i < count(); ++i)
    A.middleCols(partition_.offset(i), partition_.size(i)) = transposed(i).transpose();
  return A;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

GramBlocks gram_blocks(const DesignMatrix& X, const Partition& partition, int workers) {
  if (partition.total() != X.cols())
    throw DimensionError("partition covers " + std::to_string(partition.total()) +
                         " columns but X has " + std::to_string(X.cols()));
  std::vector<RowMatrix> blocks(static_cast<std::size_t>(partition.count()));
  const RowMatrix& x = X.values();
  for_each_block(partition.count(), resolve_workers(workers), [&](Index i) {
    blocks[static_cast<std::size_t>(i)].noalias() =
        x.middleCols(partition.offset(i), partition.size(i)).transpose() * x;
  });
  return GramBlocks(partition, std::move(blocks));
}

void blocked_matvec_into(const GramBlocks& G, const Vector& beta, std::vector<Vector>& partials,
                         Vector& out, int workers) {
  const auto& part = G.partition();
  if (beta.size() != G.dim()) throw DimensionError("beta length does not match gram blocks");
  partials.resize(static_cast<std::size_t>(G.count()));
  for_each_block(G.count(), workers, [&](Index i) {
    auto& dst = partials[static_cast<std::size_t>(i)];
    dst.noalias() = G.transposed(i).transpose() * beta.segment(part.offset(i), part.size(i));
  });
  out = partials[0];
  for (Index i = 1; i < G.count(); ++i) out += partials[static_cast<std::size_t>(i)];
}

Vector blocked_matvec(const GramBlocks& G, const Vector& beta, int workers) {
  std::vector<Vector> partials;
  Vector out;
  blocked_matvec_into(G, beta, partials, out, resolve_workers(workers));
  return out;
}

Vector blocked_matvec(const GramBlocks& G, const std::vector<Vector>& beta_blocks, int workers) {
  const auto& part = G.partition();
  if (static_cast<Index>(beta_blocks.size()) != part.count())
    throw DimensionError("expected " + std::to_string(part.count()) + " beta blocks");
  Vector stacked(G.dim());
  for (Index i = 0; i < part.count(); ++i) {
    const auto& b = beta_blocks[static_cast<std::size_t>(i)];
    if (b.size() != part.size(i))
      throw DimensionError("beta block " + std::to_string(i) + " has wrong length");
    stacked.segment(part.offset(i), part.size(i)) = b;
  }
  return blocked_matvec(G, stacked, workers);
}

Vector blocked_transpose_matvec(const GramBlocks& G, const Vector& w, int workers) {
  if (w.size() != G.dim()) throw DimensionError("vector length does not match gram blocks");
  const auto& part = G.partition();
  Vector out(G.dim());
  for_each_block(G.count(), resolve_workers(workers), [&](Index i) {
    out.segment(part.offset(i), part.size(i)).noalias() = G.transposed(i) * w;
  });
  return out;
}

double power_method_max_eigen(const LinearOperator& apply, Index dim, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ArgumentError("power method tolerance must be positive");
  if (dim < 1) throw DimensionError("power method dimension must be positive");
  if (max_iter < 1) throw ArgumentError("power method needs at least one iteration");

  // Constant start with a seeded jitter; a plain constant vector can be
  // orthogonal to the top eigenvector.
  Vector v(dim);
  boost::random::mt19937_64 rng(0x5eedULL);
  boost::random::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (Index j = 0; j < dim; ++j) v[j] = 1.0 + unif(rng);
  v.normalize();
  Vector w(dim);
  double theta = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    apply(v, w);
    if (w.size() != dim) throw DimensionError("operator output has wrong length");
    if (!w.allFinite()) throw NumericError("power method operator produced non-finite values");
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double next = v.dot(w);
    const bool done = it > 0 && std::abs(next - theta) <= tol * std::abs(next);
    theta = next;
    v = w / nw;
    if (done) break;
  }
  return theta;
}

LinearOperator gram_normal_operator(const GramBlocks& G, double mu, int workers) {
  workers = resolve_workers(workers);
  return [&G, mu, workers](const Vector& in, Vector& out) {
    std::vector<Vector> partials;
    Vector Av;
    blocked_matvec_into(G, in, partials, Av, workers);
    out = blocked_transpose_matvec(G, Av, workers);
    out *= mu;
  };
}

LinearOperator block_normal_operator(const GramBlocks& G, Index i, double mu) {
  return [&G, i, mu](const Vector& in, Vector& out) {
    Vector Av = G.transposed(i).transpose() * in;
    out.noalias() = G.transposed(i) * Av;
    out *= mu;
  };
}

}  // namespace dsppa
