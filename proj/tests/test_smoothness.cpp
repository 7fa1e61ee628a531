#include <gtest/gtest.h>

#include "support.hpp"
#include "tabwm/error.hpp"
#include "tabwm/harness.hpp"
#include "tabwm/smoothness.hpp"

namespace tabwm {
namespace {

TEST(GreenFrequency, Extremes) {
  EXPECT_EQ(green_frequency({}, 10, 1), 0.0);
  const GreenList gl = random_green_list(10, 3);
  // Centre of bin 0 is green exactly when pair 0 has bit false.
  const std::vector<double> col(100, 0.025);
  EXPECT_EQ(green_frequency(col, 10, 3), gl.bit(0) ? 0.0 : 1.0);
}

TEST(GreenFrequency, SmoothColumnNearHalf) {
  const NumericTable t = gen_gaussian_table(100000, 1, 4);
  for (std::uint64_t s = 0; s < 5; ++s) EXPECT_NEAR(green_frequency(t.column(0), 1000, s), 0.5, 0.008);
}

TEST(SmoothnessConfig, Defaults) {
  const SmoothnessConfig cfg;
  EXPECT_EQ(cfg.total_experiments(), 45);
  EXPECT_EQ(cfg.delta, 0.01);
  EXPECT_EQ(cfg.m_grid.front(), 1000u);
  EXPECT_EQ(cfg.m_grid.back(), 5000u);
  // 10% of 45 is 4.5, so five misses reject.
  EXPECT_GT(5, cfg.reject_fraction * cfg.total_experiments());
  EXPECT_LT(4, cfg.reject_fraction * cfg.total_experiments());
}

TEST(SmoothnessConfig, Validation) {
  SmoothnessConfig cfg;
  cfg.delta = 0.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.m_grid = {};
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.m_grid = {10, 10};
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.m_grid = {0, 10};
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.repeats = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.reject_fraction = 1.0;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(SelectColumns, KeepsSmoothRejectsDiscrete) {
  const std::size_t n = 50000;
  const NumericTable g = gen_gaussian_table(n, 2, 5);
  std::vector<double> counts(n), coin(n);
  RandomStream rng(6);
  for (std::size_t i = 0; i < n; ++i) {
    counts[i] = static_cast<double>(rng.below(6));
    coin[i] = rng.uniform() < 0.5 ? 0.0 : 1.0;
  }
  const NumericTable t({"smooth_a", "counts", "smooth_b", "coin"},
                       {g.columns()[0], counts, g.columns()[1], coin});
  const ColumnSelection sel = select_columns(t, SmoothnessConfig{}, 7);
  ASSERT_EQ(sel.kept.size(), 2u);
  EXPECT_EQ(sel.kept[0].column_name, "smooth_a");
  EXPECT_EQ(sel.kept[1].column_name, "smooth_b");
  ASSERT_EQ(sel.rejected.size(), 2u);
  EXPECT_EQ(sel.rejected[0].column_name, "counts");
  EXPECT_EQ(sel.rejected[1].column_name, "coin");
  for (const auto& r : sel.rejected) EXPECT_GE(r.out_of_range_count, 5);
  for (const auto& k : sel.kept) {
    EXPECT_LE(k.in_range_count, 5);
    EXPECT_GE(k.total_in_range, 41);
    EXPECT_EQ(k.chosen_m % 500, 0u);
  }
}

TEST(SelectColumns, TiesGoToSmallestM) {
  // Wide band: every experiment lands in range.
  SmoothnessConfig cfg;
  cfg.delta = 0.5;
  const ColumnSelection sel = select_columns(gen_gaussian_table(1000, 3, 8), cfg, 9);
  ASSERT_EQ(sel.kept.size(), 3u);
  for (const auto& k : sel.kept) {
    EXPECT_EQ(k.chosen_m, 1000u);
    EXPECT_EQ(k.in_range_count, 5);
    EXPECT_EQ(k.total_in_range, 45);
  }
}

TEST(SelectColumns, DeterministicAndThreadIndependent) {
  const NumericTable t = gen_mixture_table(3000, 6, 5, 10);
  SmoothnessConfig cfg;
  cfg.delta = 0.03;
  const ColumnSelection a = select_columns(t, cfg, 11, 1);
  EXPECT_EQ(a, select_columns(t, cfg, 11, 1));
  EXPECT_EQ(a, select_columns(t, cfg, 11, 4));
}

TEST(SelectColumns, ScaleInvariant) {
  const NumericTable t = gen_gaussian_table(2000, 2, 12);
  std::vector<std::vector<double>> cols = t.columns();
  for (auto& c : cols) {
    for (double& v : c) v = 1000.0 + 37.0 * v;
  }
  SmoothnessConfig cfg;
  cfg.delta = 0.03;
  const ColumnSelection a = select_columns(t, cfg, 13);
  const ColumnSelection b = select_columns(NumericTable(t.column_names(), cols), cfg, 13);
  ASSERT_EQ(a.kept.size(), b.kept.size());
  for (std::size_t i = 0; i < a.kept.size(); ++i) EXPECT_EQ(a.kept[i].column_name, b.kept[i].column_name);
}

}  // namespace
}  // namespace tabwm
