#include "netinf/diagnostics.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "netinf/graph.hpp"
#include "netinf/laplacian.hpp"

using namespace netinf;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST(DiagonalizationDiagnostics, ExactlyDiagonalizedDescending) {
  const auto d = spectral_decompose(build_laplacian(erdos_renyi(6, 0.5, WeightDist::unit(), 1)).matrix());
  Vector desc(6);
  desc << 6, 5, 4, 3, 2, 1;
  const Matrix s = d.eigenvectors * desc.asDiagonal() * d.eigenvectors.transpose();
  const auto diag = diagonalization_diagnostics(s, d.eigenvectors);
  EXPECT_LE(diag.offdiag_ratio, 1e-10);
  EXPECT_EQ(diag.ordering_violations, 0);
}

TEST(DiagonalizationDiagnostics, TiesCountAsViolations) {
  const auto diag = diagonalization_diagnostics(Matrix::Identity(5, 5), Matrix::Identity(5, 5));
  EXPECT_EQ(diag.ordering_violations, 5 * 4 / 2);
  EXPECT_LE(diag.offdiag_ratio, 1e-15);
}

TEST(DiagonalizationDiagnostics, Validation) {
  EXPECT_THROW(diagonalization_diagnostics(Matrix::Zero(2, 3), Matrix::Identity(2, 2)),
               DimensionError);
  EXPECT_THROW(diagonalization_diagnostics(Matrix::Identity(3, 3), Matrix::Identity(2, 2)),
               DimensionError);
  EXPECT_THROW(diagonalization_diagnostics(Matrix::Identity(2, 2), Matrix::Constant(2, 2, 0.8)),
               DomainError);
}

TEST(DiagonalizationDiagnostics, RatioShrinksWithMoreSnapshots) {
  const Graph g = erdos_renyi(10, 0.5, WeightDist::unit(), 7);
  const Laplacian l = build_laplacian(g);
  const Matrix v_true = spectral_decompose(l.matrix()).eigenvectors;
  std::vector<double> small_m, large_m;
  for (std::uint64_t s = 0; s < 5; ++s) {
    DynamicsConfig cfg;
    cfg.seed = derive_seed(900, {s});
    small_m.push_back(
        diagonalization_diagnostics(sample_covariance(generate_snapshots(l, 100, cfg)), v_true)
            .offdiag_ratio);
    large_m.push_back(
        diagonalization_diagnostics(sample_covariance(generate_snapshots(l, 10000, cfg)), v_true)
            .offdiag_ratio);
  }
  EXPECT_LT(median(large_m), median(small_m));
}

TEST(DiagnosticsLadder, EmitsOneRecordPerSeedAndM) {
  const Laplacian l = build_laplacian(erdos_renyi(8, 0.5, WeightDist::unit(), 3));
  DynamicsConfig cfg;
  cfg.seed = 17;
  const auto records = run_diagnostics_ladder(l, {50, 100}, 3, cfg);
  ASSERT_EQ(records.size(), 6u);
  EXPECT_EQ(records[0].snapshot_count, 50);
  EXPECT_EQ(records[5].snapshot_count, 100);
  for (const auto& r : records) {
    EXPECT_GE(r.offdiag_ratio, 0.0);
    EXPECT_LE(r.offdiag_ratio, 1.0);
    EXPECT_GE(r.ordering_violations, 0);
    EXPECT_LE(r.ordering_violations, 8 * 7 / 2);
  }
  // derived seeds differ across the ladder
  EXPECT_NE(records[0].seed, records[1].seed);
  // reruns are identical
  const auto again = run_diagnostics_ladder(l, {50, 100}, 3, cfg);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].offdiag_ratio, again[i].offdiag_ratio);
    EXPECT_EQ(records[i].ordering_violations, again[i].ordering_violations);
  }
}
