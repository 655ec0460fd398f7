#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "netinf/errors.hpp"
#include "netinf/laplacian.hpp"
#include "netinf/random.hpp"
#include "netinf/types.hpp"

namespace netinf {

enum class RatePolicy {
  UniformStable,  // i.i.d. uniform on the open stability interval (0, 1/lambda_max)
  FixedSequence,  // caller-provided rates, prefix of length T_k per snapshot
};

/// Configuration of the snapshot observation model: Gaussian inputs of
/// standard deviation sigma, per-snapshot duration drawn uniformly from
/// duration_set, and per-step rates drawn by rate_policy.
struct DynamicsConfig {
  double sigma = 1.0;
  std::vector<int> duration_set = {3, 4, 5};
  RatePolicy rate_policy = RatePolicy::UniformStable;
  std::vector<double> fixed_rates{};
  std::uint64_t seed = 0;

  void validate() const {
    if (!(sigma > 0.0)) throw DomainError("DynamicsConfig: sigma must be positive");
    if (duration_set.empty()) throw DomainError("DynamicsConfig: duration_set is empty");
    for (int t : duration_set)
      if (t < 1) throw DomainError("DynamicsConfig: durations must be >= 1");
    if (rate_policy == RatePolicy::FixedSequence) {
      int t_max = *std::max_element(duration_set.begin(), duration_set.end());
      if (static_cast<int>(fixed_rates.size()) < t_max)
        throw DomainError("DynamicsConfig: fixed_rates shorter than the longest duration");
    }
  }
};

/// Per-snapshot ground truth, retained only on request. The inference path
/// never reads it; it exists so evaluations can recompute each observation
/// from first principles.
struct SnapshotProvenance {
  Matrix inputs;  // n x M, column k is x_k
  std::vector<int> durations;
  std::vector<std::vector<double>> rates;
};

/// M observed state vectors, one per independent dynamics.
struct SnapshotSet {
  Matrix observations;  // n x M, column k is y_k
  std::optional<SnapshotProvenance> provenance;

  Index dimension() const { return observations.rows(); }
  Index count() const { return observations.cols(); }
};

namespace detail {

inline double stability_bound(const Laplacian& l) {
  return l.lambda_max() > 0.0 ? 1.0 / l.lambda_max() : std::numeric_limits<double>::infinity();
}

inline void check_rate(double rate, double bound) {
  if (!(rate > 0.0 && rate < bound))
    throw RateError("rate " + std::to_string(rate) + " outside (0, " + std::to_string(bound) + ")");
}

// x <- (I - rate L) x, no validation
inline Vector step_unchecked(const Vector& state, double rate, const Matrix& l) {
  return state - rate * (l * state);
}

}  // namespace detail

/// One consensus update (I - rate L) state. Preserves the state mean since
/// L 1 = 0. Throws RateError unless 0 < rate < 1/lambda_max(L).
inline Vector step(const Vector& state, double rate, const Laplacian& l) {
  if (state.size() != l.size()) throw DimensionError("step: state/Laplacian size mismatch");
  detail::check_rate(rate, detail::stability_bound(l));
  return detail::step_unchecked(state, rate, l.matrix());
}

/// Applies the whole product prod_t (I - rate_t L) to x0 by sequential
/// stepping; an empty rate sequence returns x0 unchanged.
inline Vector run_dynamics(const Vector& x0, std::span<const double> rates, const Laplacian& l) {
  if (x0.size() != l.size()) throw DimensionError("run_dynamics: state/Laplacian size mismatch");
  const double bound = detail::stability_bound(l);
  for (double r : rates) detail::check_rate(r, bound);
  Vector x = x0;
  for (double r : rates) x = detail::step_unchecked(x, r, l.matrix());
  return x;
}

/// Draws M independent snapshots y_k = prod_t (I - alpha_t^(k) L) x_k with
/// x_k ~ N(0, sigma^2 I), T_k uniform over duration_set and rates per policy.
///
/// Column k consumes only the substream derive_seed(cfg.seed, {kSnapshot, k})
/// in the fixed order x_k, T_k, rates, so any column can be regenerated
/// independently and results do not depend on scheduling.
inline SnapshotSet generate_snapshots(const Laplacian& l, Index m, const DynamicsConfig& cfg,
                                      bool keep_provenance = false) {
  if (m < 1) throw DomainError("generate_snapshots: M must be >= 1");
  cfg.validate();
  const Index n = l.size();

  std::vector<int> durations(cfg.duration_set);
  std::sort(durations.begin(), durations.end());
  durations.erase(std::unique(durations.begin(), durations.end()), durations.end());

  const double bound = detail::stability_bound(l);
  double rate_lo = 0.0, rate_hi = 0.0;
  if (cfg.rate_policy == RatePolicy::UniformStable) {
    if (!(l.lambda_max() > 0.0))
      throw DomainError("generate_snapshots: uniform rate policy needs lambda_max > 0");
    constexpr double kGuard = 1e-6;  // keeps draws strictly inside the open interval
    rate_lo = kGuard * bound;
    rate_hi = (1.0 - kGuard) * bound;
  } else {
    for (double r : cfg.fixed_rates) detail::check_rate(r, bound);
  }

  SnapshotSet out;
  out.observations.resize(n, m);
  if (keep_provenance) {
    out.provenance.emplace();
    out.provenance->inputs.resize(n, m);
    out.provenance->durations.resize(static_cast<std::size_t>(m));
    out.provenance->rates.resize(static_cast<std::size_t>(m));
  }

  for (Index k = 0; k < m; ++k) {
    auto rng = make_rng(derive_seed(cfg.seed, {stream::kSnapshot, static_cast<std::uint64_t>(k)}));
    Vector x = gaussian_vector(n, cfg.sigma, rng);

    std::uniform_int_distribution<std::size_t> pick(0, durations.size() - 1);
    const int t_k = durations[pick(rng)];

    std::vector<double> rates(static_cast<std::size_t>(t_k));
    if (cfg.rate_policy == RatePolicy::UniformStable) {
      std::uniform_real_distribution<double> draw(rate_lo, rate_hi);
      for (double& r : rates) r = draw(rng);
    } else {
      std::copy_n(cfg.fixed_rates.begin(), t_k, rates.begin());
    }

    Vector y = x;
    for (double r : rates) y = detail::step_unchecked(y, r, l.matrix());
    out.observations.col(k) = y;

    if (keep_provenance) {
      out.provenance->inputs.col(k) = x;
      out.provenance->durations[static_cast<std::size_t>(k)] = t_k;
      out.provenance->rates[static_cast<std::size_t>(k)] = std::move(rates);
    }
  }
  return out;
}

}  // namespace netinf
