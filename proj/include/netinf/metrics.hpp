#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "netinf/errors.hpp"
#include "netinf/recovery.hpp"
#include "netinf/types.hpp"

namespace netinf {

struct RelativeError {
  double raw = 0.0;
  double rescaled = 0.0;
};

/// ||L_est - L_true||_F / ||L_true||_F, both as-is and after optimal scale
/// alignment. The recovered Laplacian carries an arbitrary positive scale, so
/// the rescaled value is the meaningful one; a zero estimate cannot be
/// rescaled and scores its raw error.
inline RelativeError relative_error(const Matrix& l_est, const Matrix& l_true) {
  if (l_est.rows() != l_true.rows() || l_est.cols() != l_true.cols())
    throw DimensionError("relative_error: dimension mismatch");
  const double ref = l_true.norm();
  if (ref == 0.0) throw ZeroMatrixError("relative_error: zero reference");
  RelativeError e;
  e.raw = (l_est - l_true).norm() / ref;
  if (l_est.norm() == 0.0) {
    e.rescaled = e.raw;
  } else {
    auto [scaled, c] = rescale_to_reference(l_est, l_true);
    e.rescaled = (scaled - l_true).norm() / ref;
  }
  return e;
}

/// How many of the |E| strongest off-diagonal entries of the estimate land on
/// true edges. |E| is the edge count of l_true (nonzero upper-triangle
/// entries); ties at the cutoff magnitude break by lexicographic (i, j) order
/// so the count is deterministic.
inline int support_overlap(const Matrix& l_est, const Matrix& l_true) {
  if (l_est.rows() != l_true.rows() || l_est.cols() != l_true.cols() ||
      l_est.rows() != l_est.cols())
    throw DimensionError("support_overlap: dimension mismatch");
  const Index n = l_est.rows();

  std::vector<std::tuple<double, Index, Index>> entries;
  int true_edges = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      entries.emplace_back(std::abs(l_est(i, j)), i, j);
      if (l_true(i, j) != 0.0) ++true_edges;
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });

  int overlap = 0;
  for (int k = 0; k < true_edges; ++k) {
    const auto& [mag, i, j] = entries[static_cast<std::size_t>(k)];
    if (l_true(i, j) != 0.0) ++overlap;
  }
  return overlap;
}

}  // namespace netinf
