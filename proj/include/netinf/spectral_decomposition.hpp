#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "netinf/errors.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// Eigendecomposition of a real symmetric matrix.
///
/// Eigenvalues are sorted ascending, column i of `eigenvectors` pairs with
/// `eigenvalues[i]`, and each column obeys the sign convention that its first
/// component of magnitude above 1e-12 is positive. Equal eigenvalues are
/// ordered by the sign-fixed lexicographic order of their eigenvectors, so the
/// decomposition is a deterministic function of the input.
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};

namespace detail {

inline constexpr double kJacobiTol = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

inline double offdiag_frobenius(const Matrix& a) {
  double sum = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

/// One Jacobi rotation zeroing a(p, q); accumulates the rotation into v.
inline void jacobi_rotate(Matrix& a, Matrix& v, Index p, Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

/// Flips the column so its first component with |x| > 1e-12 is positive.
inline void fix_column_sign(Matrix& v, Index col) {
  for (Index i = 0; i < v.rows(); ++i) {
    const double x = v(i, col);
    if (std::abs(x) > 1e-12) {
      if (x < 0.0) v.col(col) = -v.col(col);
      return;
    }
  }
}

inline bool column_lex_less(const Matrix& v, Index a, Index b) {
  for (Index i = 0; i < v.rows(); ++i) {
    if (v(i, a) < v(i, b)) return true;
    if (v(i, a) > v(i, b)) return false;
  }
  return false;
}

}  // namespace detail

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
///
/// Sweeps stop once the off-diagonal Frobenius mass drops below
/// 1e-12 * ||m||_F (at most 100 sweeps; Jacobi converges quadratically so a
/// handful suffice at this scale). Throws SymmetryError if the input is
/// asymmetric beyond 1e-10 relative to its largest entry.
inline SpectralDecomposition spectral_decompose(const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionError("spectral_decompose: matrix must be square");
  const Index n = m.rows();

  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw SymmetryError("spectral_decompose: input asymmetric beyond 1e-10 relative tolerance");

  Matrix a = 0.5 * (m + m.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double target = detail::kJacobiTol * m.norm();

  for (int sweep = 0; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    if (detail::offdiag_frobenius(a) <= target) break;
    for (Index p = 0; p < n - 1; ++p)
      for (Index q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  for (Index j = 0; j < n; ++j) detail::fix_column_sign(v, j);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index x, Index y) {
    if (a(x, x) != a(y, y)) return a(x, x) < a(y, y);
    return detail::column_lex_less(v, x, y);
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
    out.eigenvectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace netinf
