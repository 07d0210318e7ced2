// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/errors.hpp"
#include "dsppa/verify.hpp"

#include <cmath>
#include <vector>

namespace dsppa {

namespace {

using Real = long double;

// Dense tableau for  min c'x  s.t.  Gx + s = h,  x, s >= 0,  with c >= 0 so
// the all-slack basis is dual feasible from the start.
class DualSimplex {
 public:
  DualSimplex(const std::vector<std::vector<Real>>& G, const std::vector<Real>& h,
              const std::vector<Real>& c)
      : m_(G.size()), nx_(c.size()), ncol_(nx_ + m_) {
    T_.assign(m_, std::vector<Real>(ncol_ + 1, 0.0L));
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t j = 0; j < nx_; ++j) T_[r][j] = G[r][j];
      T_[r][nx_ + r] = 1.0L;
      T_[r][ncol_] = h[r];
    }
    d_.assign(ncol_, 0.0L);
    for (std::size_t j = 0; j < nx_; ++j) d_[j] = c[j];
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) basis_[r] = nx_ + r;
  }

  // Bland-style choices (lowest index) rule out cycling.
  void run() {
    const Real eps = 1e-13L;
    for (int it = 0; it < 100000; ++it) {
      std::size_t leave = m_;
      for (std::size_t r = 0; r < m_; ++r)
        if (T_[r][ncol_] < -eps) {
          leave = r;
          break;
        }
      if (leave == m_) return;
      std::size_t enter = ncol_;
      Real best = 0.0L;
      for (std::size_t j = 0; j < ncol_; ++j) {
        const Real a = T_[leave][j];
        if (a < -eps) {
          const Real ratio = d_[j] / -a;
          if (enter == ncol_ || ratio < best - eps) {
            best = ratio;
            enter = j;
          }
        }
      }
      if (enter == ncol_) throw NumericError("linear program reported infeasible");
      pivot(leave, enter);
    }
    throw NumericError("simplex iteration limit reached");
  }

  std::vector<Real> primal() const {
    std::vector<Real> x(nx_, 0.0L);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < nx_) x[basis_[r]] = T_[r][ncol_];
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t q) {
    const Real piv = T_[r][q];
    for (Real& v : T_[r]) v /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Real f = T_[i][q];
      if (f == 0.0L) continue;
      for (std::size_t j = 0; j <= ncol_; ++j) T_[i][j] -= f * T_[r][j];
    }
    const Real f = d_[q];
    if (f != 0.0L)
      for (std::size_t j = 0; j < ncol_; ++j) d_[j] -= f * T_[r][j];
    basis_[r] = q;
  }

  std::size_t m_, nx_, ncol_;
  std::vector<std::vector<Real>> T_;
  std::vector<Real> d_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Vector lp_oracle_solve(const ProblemData& data, double lambda) {
  const Index p = data.p();
  if (2 * p > 200) throw ArgumentError("LP oracle is limited to 200 variables");
  if (!(lambda >= 0.0)) throw ArgumentError("lambda must be non-negative");
  // Recompute A in extended precision straight from X.
  const Index n = data.n();
  std::vector<std::vector<Real>> A(static_cast<std::size_t>(p), std::vector<Real>(p, 0.0L));
  std::vector<Real> xty(static_cast<std::size_t>(p), 0.0L);
  for (Index j = 0; j < p; ++j) {
    for (Index k = 0; k < p; ++k) {
      Real s = 0.0L;
      for (Index i = 0; i < n; ++i)
        s += static_cast<Real>(data.X.values()(i, j)) * data.X.values()(i, k);
      A[j][k] = s;
    }
    Real s = 0.0L;
    for (Index i = 0; i < n; ++i) s += static_cast<Real>(data.X.values()(i, j)) * data.y[i];
    xty[j] = s;
  }
  const Real box = static_cast<Real>(n) * lambda;
  const auto pp = static_cast<std::size_t>(p);
  // x = (beta+, beta-);  A(b+ - b-) <= xty + box  and  -A(b+ - b-) <= box - xty.
  std::vector<std::vector<Real>> G(2 * pp, std::vector<Real>(2 * pp, 0.0L));
  std::vector<Real> h(2 * pp), c(2 * pp, 1.0L);
  for (std::size_t k = 0; k < pp; ++k) {
    for (std::size_t j = 0; j < pp; ++j) {
      G[k][j] = A[k][j];
      G[k][pp + j] = -A[k][j];
      G[pp + k][j] = -A[k][j];
      G[pp + k][pp + j] = A[k][j];
    }
    h[k] = xty[k] + box;
    h[pp + k] = box - xty[k];
  }
  DualSimplex lp(G, h, c);
  lp.run();
  const auto x = lp.primal();
  Vector beta(p);
  for (std::size_t j = 0; j < pp; ++j) beta[static_cast<Index>(j)] = static_cast<double>(x[j] - x[pp + j]);
  return beta;
}

}  // namespace dsppa
