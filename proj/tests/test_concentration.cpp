#include "netinf/concentration.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace netinf;

TEST(SubExpProduct, LemmaValues) {
  const auto p = subexp_product_params(1.0, 1.0);
  EXPECT_DOUBLE_EQ(p.nu, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(p.b, std::sqrt(2.0));
  const auto q = subexp_product_params(2.0, 3.0);
  EXPECT_DOUBLE_EQ(q.nu, 6.0 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(q.b, 6.0 * std::sqrt(2.0));
  EXPECT_THROW(subexp_product_params(0.0, 1.0), DomainError);
}

TEST(SubExpProduct, MonteCarloMgfRespectsBound) {
  // E[e^{l x y}] for unit Gaussians against the exp(nu^2 l^2 / 2) envelope
  std::mt19937_64 rng(71);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double l = 0.5;
  const std::size_t draws = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double v = std::exp(l * normal(rng) * normal(rng));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / draws;
  const double var = sum_sq / draws - mean * mean;
  const double std_err = std::sqrt(var / draws);
  const auto p = subexp_product_params(1.0, 1.0);
  EXPECT_LE(mean, std::exp(p.nu * p.nu * l * l / 2.0) + 3.0 * std_err);
}

TEST(SubExpSquare, LemmaValues) {
  const auto p = subexp_square_params(1.0);
  EXPECT_DOUBLE_EQ(p.nu, 2.0);
  EXPECT_DOUBLE_EQ(p.b, 4.0);
  const auto q = subexp_square_params(0.5);
  EXPECT_DOUBLE_EQ(q.nu, 0.5);
  EXPECT_DOUBLE_EQ(q.b, 1.0);
}

TEST(SubExpSquare, MonteCarloMean) {
  std::mt19937_64 rng(72);
  std::normal_distribution<double> normal(0.0, 2.0);
  const std::size_t draws = 1000000;
  double sum = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double x = normal(rng);
    sum += x * x;
  }
  const double mean = sum / draws;
  // var(x^2) = 2 sigma^4 = 32
  const double std_err = std::sqrt(32.0 / draws);
  EXPECT_NEAR(mean, 4.0, 3.0 * std_err);
}

TEST(SubExpSum, CommutativeAssociative) {
  const SubExpParams a{3.0, 4.0}, b{4.0, 1.0}, c{1.0, 2.0};
  const auto ab = subexp_sum_params(a, b);
  EXPECT_DOUBLE_EQ(ab.nu, 5.0);
  EXPECT_DOUBLE_EQ(ab.b, 4.0);
  const auto ba = subexp_sum_params(b, a);
  EXPECT_DOUBLE_EQ(ab.nu, ba.nu);
  EXPECT_DOUBLE_EQ(ab.b, ba.b);
  const auto left = subexp_sum_params(subexp_sum_params(a, b), c);
  const auto right = subexp_sum_params(a, subexp_sum_params(b, c));
  EXPECT_NEAR(left.nu, right.nu, 1e-14);
  EXPECT_DOUBLE_EQ(left.b, right.b);
}

TEST(TailBound, BranchesAndVacuousRegion) {
  EXPECT_DOUBLE_EQ(subexp_tail_bound({1.0, 1.0}, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(subexp_tail_bound({1.0, 1.0}, 1.0), 2.0 * std::exp(-0.5));  // boundary
  EXPECT_DOUBLE_EQ(subexp_tail_bound({1.0, 1.0}, 2.0), 2.0 * std::exp(-1.0));
  EXPECT_GT(subexp_tail_bound({1.0, 1.0}, 1e-6), 1.0);  // unclamped by design
}

TEST(TailBound, ContinuousAtBranchPoint) {
  for (const auto& [nu, b] : {std::pair{1.0, 1.0}, {2.0, 0.7}, {0.3, 1.9}}) {
    const double l_star = nu * nu / b;
    const double gauss = 2.0 * std::exp(-l_star * l_star / (2.0 * nu * nu));
    const double expo = 2.0 * std::exp(-l_star / (2.0 * b));
    EXPECT_LE(std::abs(gauss - expo), 1e-12 * gauss);
    EXPECT_NEAR(subexp_tail_bound({nu, b}, l_star), gauss, 1e-15);
  }
}

TEST(TailBound, Errors) {
  EXPECT_THROW(subexp_tail_bound({0.0, 1.0}, 0.5), ZeroParamError);
  EXPECT_THROW(subexp_tail_bound({1.0, 0.0}, 0.5), ZeroParamError);
  EXPECT_THROW(subexp_tail_bound({1.0, 1.0}, -1.0), DomainError);
}

TEST(SampleSizeBound, PinnedEvaluation) {
  EXPECT_EQ(sample_size_bound(1.0, 2.0, 32, 0.05), 229);
  // independent high-precision recomputation of the same expression
  const long double m = 8.0L * 2.0L * 2.0L / 1.0L * std::log(2.0L * 32.0L / 0.05L);
  EXPECT_EQ(static_cast<std::int64_t>(std::ceil(m)), 229);
}

TEST(SampleSizeBound, Monotonicity) {
  EXPECT_LT(sample_size_bound(1.0, 2.0, 32, 0.5), sample_size_bound(1.0, 2.0, 32, 0.05));
  EXPECT_LE(sample_size_bound(1.0, 2.0, 32, 0.9999), sample_size_bound(1.0, 2.0, 32, 0.5));
}

TEST(SampleSizeBound, QuarticTauScaling) {
  // halving tau multiplies the pre-ceiling bound by exactly 16
  const double coarse = 8.0 * 4.0 / 1.0 * std::log(2.0 * 32.0 / 0.05);
  const double fine = 8.0 * 4.0 / std::pow(0.5, 4) * std::log(2.0 * 32.0 / 0.05);
  EXPECT_DOUBLE_EQ(fine, 16.0 * coarse);
  EXPECT_EQ(sample_size_bound(0.5, 2.0, 32, 0.05), static_cast<std::int64_t>(std::ceil(fine)));
}

TEST(SampleSizeBound, Validation) {
  EXPECT_THROW(sample_size_bound(0.0, 2.0, 32, 0.05), DomainError);
  EXPECT_THROW(sample_size_bound(1.0, 1.9, 32, 0.05), DomainError);
  EXPECT_THROW(sample_size_bound(1.0, 2.0, 0, 0.05), DomainError);
  EXPECT_THROW(sample_size_bound(1.0, 2.0, 32, 0.0), DomainError);
  EXPECT_THROW(sample_size_bound(1.0, 2.0, 32, 1.0), DomainError);
}
