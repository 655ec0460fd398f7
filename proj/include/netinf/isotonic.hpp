#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "netinf/errors.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// Euclidean projection onto decreasing sequences x_1 >= x_2 >= ... >= x_m via
/// pool-adjacent-violators.
inline std::vector<double> pav_decreasing(std::span<const double> v) {
  struct Block {
    double sum;
    int count;
  };
  std::vector<Block> blocks;
  blocks.reserve(v.size());
  for (double x : v) {
    blocks.push_back({x, 1});
    // merge while a later block average exceeds an earlier one
    while (blocks.size() > 1) {
      const Block& a = blocks[blocks.size() - 2];
      const Block& b = blocks.back();
      if (b.sum * a.count <= a.sum * b.count) break;
      Block merged{a.sum + b.sum, a.count + b.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const Block& b : blocks) {
    const double avg = b.sum / b.count;
    out.insert(out.end(), static_cast<std::size_t>(b.count), avg);
  }
  return out;
}

/// Euclidean projection onto the ordered eigenvalue set
///   { beta : beta_i >= beta_{i+eta} + eps2 for all valid i }
/// optionally intersected with { beta_{n-1} = 0 }.
///
/// The constraints decompose into eta independent chains of stride eta.
/// Within a chain, shifting the j-th element by (j-1)*eps2 turns the gap
/// constraints into plain monotonicity, handled by PAV; the anchored variant
/// fixes the final element of the last index's chain and becomes a constant
/// lower bound, which commutes with PAV as a clip.
inline Vector project_ordered(const Vector& v, double eps2, int eta, bool anchor_last_zero) {
  const Index n = v.size();
  if (eta < 1 || eta > n - 1) throw DomainError("project_ordered: need 1 <= eta <= n-1");
  if (!(eps2 > 0.0)) throw DomainError("project_ordered: eps2 must be positive");

  Vector out(n);
  for (Index start = 0; start < eta; ++start) {
    std::vector<Index> chain;
    for (Index i = start; i < n; i += eta) chain.push_back(i);
    const std::size_t m = chain.size();

    std::vector<double> shifted(m);
    for (std::size_t j = 0; j < m; ++j) shifted[j] = v[chain[j]] + static_cast<double>(j) * eps2;

    const bool anchored = anchor_last_zero && chain.back() == n - 1;
    if (anchored) {
      const double floor_value = static_cast<double>(m - 1) * eps2;
      std::vector<double> prefix(shifted.begin(), shifted.end() - 1);
      std::vector<double> proj = pav_decreasing(prefix);
      for (std::size_t j = 0; j + 1 < m; ++j)
        out[chain[j]] = std::max(proj[j], floor_value) - static_cast<double>(j) * eps2;
      out[chain[m - 1]] = 0.0;
    } else {
      std::vector<double> proj = pav_decreasing(shifted);
      for (std::size_t j = 0; j < m; ++j) out[chain[j]] = proj[j] - static_cast<double>(j) * eps2;
    }
  }
  return out;
}

}  // namespace netinf
