#pragma once

#include <cmath>

#include "netinf/errors.hpp"
#include "netinf/graph.hpp"
#include "netinf/spectral_decomposition.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// Combinatorial Laplacian L = D - A of a weighted undirected graph.
///
/// Symmetric with nonpositive off-diagonal entries and zero row sums, hence
/// diagonally dominant and positive semi-definite. The largest eigenvalue is
/// computed once at construction so the stability bound 1/lambda_max for
/// consensus rates is always at hand; instances are immutable and safe to
/// share across threads.
class Laplacian {
 public:
  explicit Laplacian(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionError("Laplacian: matrix must be square");
    const Index n = m_.rows();
    const double scale = std::max(1e-300, m_.cwiseAbs().maxCoeff());
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        if (m_(i, j) != m_(j, i)) throw SymmetryError("Laplacian: matrix not exactly symmetric");
        if (m_(i, j) > 0.0) throw DomainError("Laplacian: positive off-diagonal entry");
      }
      if (std::abs(m_.row(i).sum()) > 1e-12 * scale)
        throw DomainError("Laplacian: row sum exceeds tolerance");
    }
    lambda_max_ = n == 0 ? 0.0 : spectral_decompose(m_).eigenvalues[n - 1];
  }

  const Matrix& matrix() const { return m_; }
  Index size() const { return m_.rows(); }
  double lambda_max() const { return lambda_max_; }

 private:
  Matrix m_;
  double lambda_max_ = 0.0;
};

/// L = D - A. Always succeeds for a valid Graph.
inline Laplacian build_laplacian(const Graph& g) {
  const int n = g.node_count();
  Matrix l = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    l(e.i, e.j) = -e.weight;
    l(e.j, e.i) = -e.weight;
    l(e.i, e.i) += e.weight;
    l(e.j, e.j) += e.weight;
  }
  return Laplacian(std::move(l));
}

}  // namespace netinf
