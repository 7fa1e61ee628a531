#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tabwm/embedding.hpp"
#include "tabwm/error.hpp"
#include "tabwm/fidelity.hpp"
#include "tabwm/harness.hpp"

namespace tabwm {
namespace {

using testing::full_key;
using testing::gaussian_columns;

TEST(Linf, IdenticalTablesAreZero) {
  const NumericTable t = gaussian_columns(100, 3, 1);
  EXPECT_EQ(linf_distance(t, t, full_key(t, 1000, 2)), 0.0);
}

TEST(Linf, WithinOneOverM) {
  const NumericTable t = gaussian_columns(3000, 4, 3);
  const WatermarkKey key = full_key(t, 1000, 4);
  EXPECT_LE(linf_distance(t, embed_table(t, key, RandomStream(5)), key), 0.001);
}

TEST(Linf, CoarseListApproachesBound) {
  // Pair 0 green is [0.1, 0.2); 0.05 sits mid-way in red [0, 0.1).
  const GreenList gl = green_list_from_bits(5, {true, false, true, false, true});
  WatermarkKey key;
  key.columns.push_back(KeyColumn{"x", gl, std::nullopt});
  const NumericTable t({"x"}, {std::vector<double>(200, 0.05)});
  const NumericTable wm = embed_table(t, key, RandomStream(6));
  const double d = linf_distance(t, wm, key);
  EXPECT_LE(d, 0.2);
  EXPECT_GT(d, 0.1);
}

TEST(Linf, ShapeMismatch) {
  const NumericTable a = gaussian_columns(10, 2, 7);
  const NumericTable b = gaussian_columns(11, 2, 7);
  EXPECT_THROW(linf_distance(a, b, full_key(a, 10, 1)), SchemaError);
  const NumericTable c({"c0", "zz"}, a.columns());
  EXPECT_THROW(linf_distance(a, c, full_key(a, 10, 1)), SchemaError);
}

TEST(Wasserstein, Examples) {
  const std::vector<double> a = {0.0, 1.0}, b = {1.0, 2.0};
  EXPECT_EQ(wasserstein1_column(a, a), 0.0);
  EXPECT_EQ(wasserstein1_column(a, b), 1.0);
  const std::vector<double> c = {3.0, -1.0, 2.0}, d = {2.0, 3.0, -1.0};
  EXPECT_EQ(wasserstein1_column(c, d), 0.0);
  EXPECT_THROW(wasserstein1_column(a, c), SchemaError);
}

TEST(Wasserstein, BoundedByLinf) {
  const NumericTable t = gaussian_columns(2000, 3, 8);
  const WatermarkKey key = full_key(t, 250, 9);
  const NumericTable wm = embed_table(t, key, RandomStream(10));
  const FidelityReport r = fidelity_report(t, wm, key);
  for (const auto& c : r.per_column) {
    EXPECT_LE(c.w1, c.linf);
    EXPECT_LE(c.linf, 1.0 / 250.0);
  }
}

TEST(Wasserstein, RowPairedBoundedBySqrtPOverM) {
  const NumericTable t = gaussian_columns(1000, 9, 11);
  const WatermarkKey key = full_key(t, 100, 12);
  const NumericTable wm = embed_table(t, key, RandomStream(13));
  const FidelityReport r = fidelity_report(t, wm, key);
  EXPECT_NEAR(r.multivariate_w1_bound, std::sqrt(9.0) / 100.0, 1e-15);
  EXPECT_LE(r.row_paired_w1, r.multivariate_w1_bound);
  EXPECT_LE(row_paired_wasserstein(t, wm, key, 2.0), r.multivariate_w1_bound);
}

TEST(Correlation, DriftExamples) {
  const NumericTable t = gen_correlated_table(500, 2, 14);
  EXPECT_EQ(correlation_drift(t, t), 0.0);
  std::vector<std::vector<double>> neg = t.columns();
  for (auto& col : neg) {
    for (double& v : col) v = -v;
  }
  // Negating one column only flips the sign of the off-diagonal entry.
  std::vector<std::vector<double>> one = t.columns();
  for (double& v : one[1]) v = -v;
  const auto corr = correlation_matrix(t);
  EXPECT_NEAR(correlation_drift(t, NumericTable(t.column_names(), one)), 2.0 * std::abs(corr[0][1]), 1e-12);
  EXPECT_NEAR(correlation_drift(t, NumericTable(t.column_names(), neg)), 0.0, 1e-12);
}

TEST(Correlation, PerfectlyAnticorrelatedPairGivesTwo) {
  const NumericTable a({"u", "v"}, {{1, 2, 3, 4}, {1, 2, 3, 4}});
  const NumericTable b({"u", "v"}, {{1, 2, 3, 4}, {-1, -2, -3, -4}});
  EXPECT_NEAR(correlation_drift(a, b), 2.0, 1e-12);
}

TEST(Correlation, ConstantColumnNamed) {
  const NumericTable t({"u", "flat"}, {{1, 2, 3}, {5, 5, 5}});
  try {
    correlation_matrix(t);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("flat"), std::string::npos);
  }
}

TEST(Correlation, WatermarkBarelyMovesCorrelatedTable) {
  const NumericTable t = gen_correlated_table(10000, 100, 15);
  const WatermarkKey key = full_key(t, 1000, 16);
  const NumericTable wm = embed_table(t, key, RandomStream(17));
  EXPECT_LE(correlation_drift(t, wm), 0.02);
}

TEST(FidelityReport, ConstantColumnDropsCorrelation) {
  const NumericTable t({"a", "b"}, {{1.5, 2.5, 3.5}, {4.0, 4.0, 4.0}});
  const WatermarkKey key = make_key(t, {"a", "b"}, {10, 10}, 1);
  ASSERT_FALSE(key.columns[1].normalizer.has_value());
  const FidelityReport r = fidelity_report(t, embed_table(t, key, RandomStream(2)), key);
  EXPECT_FALSE(r.max_corr_diff.has_value());
  EXPECT_LE(r.linf, 0.1);
}

}  // namespace
}  // namespace tabwm
