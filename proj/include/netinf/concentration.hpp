#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "netinf/errors.hpp"

namespace netinf {

/// Sub-exponential parameters (nu, b): the moment-generating function of the
/// centered variable is bounded by exp(nu^2 g^2 / 2) for |g| < 1/b.
struct SubExpParams {
  double nu = 0.0;
  double b = 0.0;
};

/// Parameters for the product of independent N(0, sigma1^2) and N(0, sigma2^2)
/// variables: (sqrt(2) s1 s2, sqrt(2) s1 s2).
inline SubExpParams subexp_product_params(double sigma1, double sigma2) {
  if (!(sigma1 > 0.0 && sigma2 > 0.0))
    throw DomainError("subexp_product_params: sigmas must be positive");
  const double v = std::sqrt(2.0) * sigma1 * sigma2;
  return {v, v};
}

/// Parameters for the square of a N(0, sigma^2) variable: (2 sigma^2, 4 sigma^2).
/// The mean of the square is sigma^2.
inline SubExpParams subexp_square_params(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("subexp_square_params: sigma must be positive");
  return {2.0 * sigma * sigma, 4.0 * sigma * sigma};
}

/// Parameters of a sum of independent sub-exponential variables:
/// (sqrt(nu1^2 + nu2^2), max(b1, b2)). Commutative and associative.
inline SubExpParams subexp_sum_params(const SubExpParams& a, const SubExpParams& b) {
  return {std::hypot(a.nu, b.nu), std::max(a.b, b.b)};
}

/// Two-regime Chernoff tail bound on P(|x - mu| >= l):
/// 2 exp(-l^2 / (2 nu^2)) in the Gaussian regime l <= nu^2/b, else
/// 2 exp(-l / (2b)). Returned as-is; values above 1 are vacuous but valid
/// upper bounds, so any clamping is left to the display layer.
inline double subexp_tail_bound(const SubExpParams& p, double l) {
  if (l < 0.0) throw DomainError("subexp_tail_bound: l must be nonnegative");
  if (l == 0.0) return 2.0;
  if (p.nu == 0.0 || p.b == 0.0)
    throw ZeroParamError("subexp_tail_bound: degenerate parameters with l > 0");
  if (l <= p.nu * p.nu / p.b) return 2.0 * std::exp(-l * l / (2.0 * p.nu * p.nu));
  return 2.0 * std::exp(-l / (2.0 * p.b));
}

/// Smallest number of snapshots that keeps every diagonal entry of the
/// basis-aligned covariance within its mean-ordering margin with probability
/// at least 1 - delta: ceil((8 beta^2 / tau^4) log(2 n / delta)).
inline std::int64_t sample_size_bound(double tau, double beta, int n, double delta) {
  if (!(tau > 0.0)) throw DomainError("sample_size_bound: tau must be positive");
  if (!(beta >= 2.0)) throw DomainError("sample_size_bound: beta must be >= 2");
  if (n < 1) throw DomainError("sample_size_bound: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("sample_size_bound: delta must be in (0,1)");
  const double m = 8.0 * beta * beta / (tau * tau * tau * tau) * std::log(2.0 * n / delta);
  return static_cast<std::int64_t>(std::ceil(m));
}

}  // namespace netinf
