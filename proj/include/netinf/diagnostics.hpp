#pragma once

#include <cstdint>
#include <vector>

#include "netinf/covariance.hpp"
#include "netinf/dynamics.hpp"
#include "netinf/errors.hpp"
#include "netinf/random.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// How close a covariance matrix is to being diagonalized by a given basis,
/// and whether its basis-aligned diagonal keeps the expected descending order.
struct DiagonalizationDiagnostics {
  double offdiag_ratio = 0.0;  // ||offdiag(B)||_F / ||B||_F
  int ordering_violations = 0;  // pairs i < j with B_ii <= B_jj (ties count)
  Matrix aligned;               // B = V^T S V
};

/// Evaluation-side check of covariance concentration: B = V_true^T S V_true
/// should become diagonal as the snapshot count grows, with B_11 largest.
/// Requires ground truth, so it lives outside the inference path.
inline DiagonalizationDiagnostics diagonalization_diagnostics(const Matrix& s,
                                                              const Matrix& v_true) {
  if (s.rows() != s.cols()) throw DimensionError("diagonalization_diagnostics: S must be square");
  if (v_true.rows() != s.rows() || v_true.cols() != s.cols())
    throw DimensionError("diagonalization_diagnostics: V dimension mismatch");
  const Index n = s.rows();
  const double ortho = (v_true.transpose() * v_true - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (ortho > 1e-8)
    throw DomainError("diagonalization_diagnostics: V_true not orthonormal within 1e-8");

  DiagonalizationDiagnostics d;
  d.aligned = v_true.transpose() * s * v_true;
  const double total = d.aligned.norm();
  const double diag = d.aligned.diagonal().norm();
  const double off2 = std::max(0.0, total * total - diag * diag);
  d.offdiag_ratio = total > 0.0 ? std::sqrt(off2) / total : 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (!(d.aligned(i, i) > d.aligned(j, j))) ++d.ordering_violations;
  return d;
}

/// One diagnostics sample, JSON-serializable for plotting.
struct DiagnosticsRecord {
  Index snapshot_count = 0;
  std::uint64_t seed = 0;
  double offdiag_ratio = 0.0;
  int ordering_violations = 0;
};

/// Runs the diagnostics ladder: for each M and each derived seed, simulate M
/// snapshots, form the sample covariance and compare against the true
/// eigenbasis of l (ascending eigenvalue order, so index 0 is the constant
/// mode and should carry the most covariance).
inline std::vector<DiagnosticsRecord> run_diagnostics_ladder(const Laplacian& l,
                                                             const std::vector<Index>& m_values,
                                                             int seeds,
                                                             const DynamicsConfig& base_cfg) {
  const Matrix v_true = spectral_decompose(l.matrix()).eigenvectors;
  std::vector<DiagnosticsRecord> records;
  records.reserve(m_values.size() * static_cast<std::size_t>(seeds));
  for (Index m : m_values) {
    for (int s = 0; s < seeds; ++s) {
      DynamicsConfig cfg = base_cfg;
      cfg.seed = derive_seed(base_cfg.seed,
                             {stream::kDiagnostics, static_cast<std::uint64_t>(m),
                              static_cast<std::uint64_t>(s)});
      auto snaps = generate_snapshots(l, m, cfg);
      auto diag = diagonalization_diagnostics(sample_covariance(snaps), v_true);
      records.push_back({m, cfg.seed, diag.offdiag_ratio, diag.ordering_violations});
    }
  }
  return records;
}

}  // namespace netinf
