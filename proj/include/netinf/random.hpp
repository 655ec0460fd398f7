#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "netinf/types.hpp"

namespace netinf {

/// SplitMix64 finalizer. Statistically independent outputs for distinct inputs,
/// which makes it suitable for deriving substream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Derives a substream seed from a master seed and a path of stream ids.
///
/// All randomness in the toolkit flows through this function, so one master
/// seed pins down every draw of an experiment: component streams use a fixed
/// tag as the first path element and per-item indices after it.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(master);
  for (std::uint64_t id : path) s = mix64(s ^ id);
  return s;
}

/// Fixed stream tags; first element of every derive_seed path.
namespace stream {
inline constexpr std::uint64_t kErdosRenyi = 0x4752u;   // graph sampling
inline constexpr std::uint64_t kSnapshot = 0x534eu;     // one stream per snapshot column
inline constexpr std::uint64_t kGridTrial = 0x4744u;    // ER-grid experiment trials
inline constexpr std::uint64_t kErrorVsM = 0x4d54u;     // error-vs-M experiment trials
inline constexpr std::uint64_t kDiagnostics = 0x4447u;  // diagnostics ladder seeds
}  // namespace stream

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// n i.i.d. N(0, sigma^2) draws.
inline Vector gaussian_vector(Index n, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, sigma);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

}  // namespace netinf
