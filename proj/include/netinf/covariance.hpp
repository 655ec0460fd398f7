#pragma once

#include "netinf/dynamics.hpp"
#include "netinf/errors.hpp"
#include "netinf/laplacian.hpp"
#include "netinf/spectral_decomposition.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// S_M = (1/M) sum_k y_k y_k^T. Raw outer products, not mean-centered: the
/// observation model has zero-mean inputs.
inline Matrix sample_covariance(const SnapshotSet& s) {
  if (s.count() < 1) throw DomainError("sample_covariance: need at least one snapshot");
  Matrix raw = (s.observations * s.observations.transpose()) / static_cast<double>(s.count());
  return 0.5 * (raw + raw.transpose());
}

/// Eigenbasis of the sample covariance with eigenvalues sorted ascending.
///
/// Under the consensus observation model the columns approach the true
/// Laplacian eigenvectors as M grows, in reverse order: the heaviest
/// covariance direction (last column) corresponds to the Laplacian's zero
/// eigenvalue, because every consensus factor passes the constant mode
/// untouched and attenuates everything else.
struct SpectralTemplate {
  Matrix basis;              // orthonormal, column order follows sample_eigenvalues
  Vector sample_eigenvalues;  // ascending
  Index snapshot_count = 0;   // 0 marks a template built from an exact basis

  Index dimension() const { return basis.rows(); }
};

inline SpectralTemplate extract_template(const SnapshotSet& s) {
  SpectralDecomposition d = spectral_decompose(sample_covariance(s));
  return {std::move(d.eigenvectors), std::move(d.eigenvalues), s.count()};
}

/// Template with the true eigenbasis, as if M were unbounded. Columns are the
/// Laplacian eigenvectors in descending eigenvalue order; the stand-in sample
/// spectrum 1/(1 + lambda) keeps the ascending-eigenvalue convention.
inline SpectralTemplate template_from_exact_basis(const Laplacian& l) {
  SpectralDecomposition d = spectral_decompose(l.matrix());
  const Index n = l.size();
  SpectralTemplate t;
  t.basis.resize(n, n);
  t.sample_eigenvalues.resize(n);
  for (Index j = 0; j < n; ++j) {
    t.basis.col(j) = d.eigenvectors.col(n - 1 - j);
    t.sample_eigenvalues[j] = 1.0 / (1.0 + d.eigenvalues[n - 1 - j]);
  }
  t.snapshot_count = 0;
  return t;
}

}  // namespace netinf
