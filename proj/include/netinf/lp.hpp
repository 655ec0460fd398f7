#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "netinf/errors.hpp"
#include "netinf/types.hpp"

namespace netinf::detail {

enum class LpStatus { Optimal, Infeasible };

struct ReducedLpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;           // primal solution (free variables)
  double objective = 0.0;
  std::int64_t pivots = 0;
};

/// Solves  min c^T x  s.t.  A x >= b  with x free, for the small, very
/// overdetermined programs the epsilon1 = 0 presolve produces (many rows m,
/// few columns nf, objective bounded below on the feasible set).
///
/// Works on the LP dual  min (-b)^T y  s.t.  A^T y = c, y >= 0, whose tableau
/// has only nf rows, so a dense two-phase simplex stays numerically exact.
/// The primal solution is read off the simplex multipliers, and the terminal
/// reduced costs are exactly the primal slacks A x - b, so optimality of the
/// dual certifies primal feasibility. Dual infeasibility or unboundedness
/// both mean the primal program has no feasible point here.
class ReducedLpSolver {
 public:
  explicit ReducedLpSolver(double eps = 1e-9, std::int64_t max_pivots = 500000)
      : eps_(eps), max_pivots_(max_pivots) {}

  ReducedLpResult solve(const Matrix& a, const Vector& b, const Vector& c) const {
    const Index m = a.rows();
    const Index nf = a.cols();
    if (b.size() != m || c.size() != nf) throw DimensionError("ReducedLpSolver: size mismatch");

    // dual system M y = g with rows flipped to make g >= 0
    Vector flip = Vector::Ones(nf);
    for (Index i = 0; i < nf; ++i)
      if (c[i] < 0.0) flip[i] = -1.0;
    Matrix t(nf, m + nf);  // [ S A^T | I ]; the identity block tracks B^{-1}
    t.leftCols(m) = flip.asDiagonal() * a.transpose();
    t.rightCols(nf) = Matrix::Identity(nf, nf);
    Vector rhs = flip.cwiseProduct(c);

    std::vector<Index> basis(static_cast<std::size_t>(nf));
    for (Index i = 0; i < nf; ++i) basis[static_cast<std::size_t>(i)] = m + i;

    ReducedLpResult res;

    // phase 1: drive the auxiliary identity block out of the basis
    Vector phase1 = Vector::Zero(m + nf);
    phase1.tail(nf).setOnes();
    if (!run(t, rhs, basis, phase1, m, res.pivots)) {
      res.status = LpStatus::Infeasible;  // unbounded phase 1 cannot happen
      return res;
    }
    double art = 0.0;
    for (Index i = 0; i < nf; ++i)
      if (basis[static_cast<std::size_t>(i)] >= m) art += rhs[i];
    if (art > 1e-8 * (1.0 + rhs.cwiseAbs().sum())) {
      res.status = LpStatus::Infeasible;
      return res;
    }

    // drive leftover zero-level auxiliary basics onto real columns; rows that
    // are zero across all real columns are redundant and stay frozen (no real
    // entering column can ever touch them)
    for (Index i = 0; i < nf; ++i) {
      if (basis[static_cast<std::size_t>(i)] < m) continue;
      for (Index j = 0; j < m; ++j) {
        if (std::abs(t(i, j)) > eps_) {
          pivot(t, rhs, basis, i, j);
          ++res.pivots;
          break;
        }
      }
    }

    // phase 2: minimize -b over dual-feasible y (entering is real-only, so
    // auxiliary columns cannot come back)
    Vector phase2 = Vector::Zero(m + nf);
    phase2.head(m) = -b;
    if (!run(t, rhs, basis, phase2, m, res.pivots)) {
      res.status = LpStatus::Infeasible;  // unbounded dual <=> infeasible primal
      return res;
    }

    // multipliers of the flipped system from the identity block: l = B^{-T} f_B
    Vector lambda = Vector::Zero(nf);
    for (Index col = 0; col < nf; ++col) {
      double v = 0.0;
      for (Index r = 0; r < nf; ++r) v += phase2[basis[static_cast<std::size_t>(r)]] * t(r, m + col);
      lambda[col] = v;
    }
    res.x = -flip.cwiseProduct(lambda);
    res.objective = c.dot(res.x);
    res.status = LpStatus::Optimal;
    return res;
  }

 private:
  double eps_;
  std::int64_t max_pivots_;

  static void pivot(Matrix& t, Vector& rhs, std::vector<Index>& basis, Index row, Index col) {
    const double p = t(row, col);
    t.row(row) /= p;
    rhs[row] /= p;
    for (Index i = 0; i < t.rows(); ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f == 0.0) continue;
      t.row(i) -= f * t.row(row);
      rhs[i] -= f * rhs[row];
      if (rhs[i] < 0.0 && rhs[i] > -1e-12) rhs[i] = 0.0;
    }
    basis[static_cast<std::size_t>(row)] = col;
  }

  /// Simplex over the first `active` columns (auxiliary block participates
  /// through the basis only). Returns false on an unbounded ray.
  bool run(Matrix& t, Vector& rhs, std::vector<Index>& basis, const Vector& cost, Index active,
           std::int64_t& pivots) const {
    const Index nrows = t.rows();
    Vector red = cost.head(active);
    for (Index i = 0; i < nrows; ++i) {
      const double cb = cost[basis[static_cast<std::size_t>(i)]];
      if (cb != 0.0) red -= cb * t.row(i).head(active).transpose();
    }

    int stalled = 0;
    for (std::int64_t k = 0; k < max_pivots_; ++k) {
      const bool bland = stalled > 100;
      Index enter = -1;
      double best = -eps_;
      for (Index j = 0; j < active; ++j) {
        if (red[j] < (bland ? -eps_ : best)) {
          enter = j;
          best = red[j];
          if (bland) break;
        }
      }
      if (enter < 0) return true;

      Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < nrows; ++i) {
        const double aij = t(i, enter);
        if (aij <= eps_) continue;
        const double ratio = rhs[i] / aij;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && leave >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;

      stalled = best_ratio < 1e-12 ? stalled + 1 : 0;

      pivot(t, rhs, basis, leave, enter);
      const double fr = red[enter];
      if (fr != 0.0) red -= fr * t.row(leave).head(active).transpose();
      ++pivots;
    }
    throw NonConvergenceError("ReducedLpSolver: pivot budget exhausted");
  }
};

}  // namespace netinf::detail
