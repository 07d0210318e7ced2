// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace dsppa {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense n x p design, row-major, finite entries only.
class DesignMatrix {
 public:
  DesignMatrix() = default;
  explicit DesignMatrix(RowMatrix values);

  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }
  const RowMatrix& values() const { return values_; }

 private:
  RowMatrix values_;
};

/// Contiguous column blocks of a p-dimensional coefficient vector.
class Partition {
 public:
  Partition() = default;

  /// K nearly equal blocks; the first p % K blocks are one column wider.
  static Partition even(Index p, Index K);
  static Partition from_sizes(std::vector<Index> sizes);

  Index count() const { return static_cast<Index>(sizes_.size()); }
  Index total() const { return offsets_.empty() ? 0 : offsets_.back(); }
  Index size(Index i) const { return sizes_[static_cast<std::size_t>(i)]; }
  Index offset(Index i) const { return offsets_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& sizes() const { return sizes_; }

  bool operator==(const Partition& o) const { return sizes_ == o.sizes_; }

 private:
  std::vector<Index> sizes_;
  std::vector<Index> offsets_;  // K + 1 prefix sums
};

/// Column blocks A_i = X^T X_i of the Gram matrix.
///
/// Block i is stored transposed (p_i x p, row-major) so that both A_i^T u and
/// A_i b run as contiguous sweeps.
class GramBlocks {
 public:
  GramBlocks() = default;
  GramBlocks(Partition partition, std::vector<RowMatrix> transposed_blocks);

  const Partition& partition() const { return partition_; }
  Index dim() const { return partition_.total(); }
  Index count() const { return partition_.count(); }

  /// A_i^T, shape p_i x p.
  const RowMatrix& transposed(Index i) const { return blocks_[static_cast<std::size_t>(i)]; }
  /// A_i, shape p x p_i.
  RowMatrix block(Index i) const { return transposed(i).transpose(); }
  /// [A_1 ... A_K], the full p x p Gram matrix.
  RowMatrix assemble() const;

 private:
  Partition partition_;
  std::vector<RowMatrix> blocks_;
};

/// Number of workers actually used for `requested` (<= 0 means all cores).
int resolve_workers(int requested);

GramBlocks gram_blocks(const DesignMatrix& X, const Partition& partition, int workers = 1);

/// Sum of A_i beta_i, accumulated in ascending block order.
Vector blocked_matvec(const GramBlocks& G, const std::vector<Vector>& beta_blocks, int workers = 1);
/// Same, with beta given as one stacked vector.
Vector blocked_matvec(const GramBlocks& G, const Vector& beta, int workers = 1);
/// Into a caller buffer; `partials` holds one p-vector per block.
void blocked_matvec_into(const GramBlocks& G, const Vector& beta, std::vector<Vector>& partials,
                         Vector& out, int workers);

/// Stacked A^T w, block by block.
Vector blocked_transpose_matvec(const GramBlocks& G, const Vector& w, int workers = 1);

using LinearOperator = std::function<void(const Vector& in, Vector& out)>;

/// Largest eigenvalue of a symmetric PSD operator by power iteration.
///
/// Starts from the normalised all-ones vector and returns the Rayleigh
/// quotient once its relative change drops below `tol`.
double power_method_max_eigen(const LinearOperator& apply, Index dim, double tol, int max_iter);

/// The operator v -> mu A^T (A v) for the whole Gram matrix.
LinearOperator gram_normal_operator(const GramBlocks& G, double mu, int workers = 1);
/// The operator v -> mu A_i^T (A_i v) for one block.
LinearOperator block_normal_operator(const GramBlocks& G, Index i, double mu);

}  // namespace dsppa
