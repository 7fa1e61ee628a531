#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "support.hpp"
#include "tabwm/embedding.hpp"
#include "tabwm/error.hpp"
#include "tabwm/fidelity.hpp"

namespace tabwm {
namespace {

using testing::full_key;
using testing::gaussian_columns;

GreenList example_list() { return green_list_from_bits(5, {false, true, false, true, true}); }

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST(EmbedValue, RedValueMovesToNearestGreen) {
  RandomStream rng(1);
  for (int i = 0; i < 100; ++i) {
    const double y = embed_value(0.21, example_list(), rng);
    EXPECT_GE(y, 0.3);
    EXPECT_LT(y, 0.4);
  }
}

TEST(EmbedValue, GreenValueIsBitIdentical) {
  RandomStream rng(2);
  for (double x : {0.35, -3.65, 12.05, 0.0, -0.0}) {
    ASSERT_TRUE(in_green(fractional_part(x).frac, example_list()));
    EXPECT_TRUE(bit_equal(embed_value(x, example_list(), rng), x)) << x;
  }
}

TEST(EmbedValue, BoundAndGreennessOnRandomInputs) {
  RandomStream rng(3);
  const GreenList gl = random_green_list(1000, 4);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.uniform(-50.0, 50.0);
    const double y = embed_value(x, gl, rng);
    worst = std::max(worst, std::abs(y - x));
    ASSERT_TRUE(in_green(fractional_part(y).frac, gl)) << x;
  }
  EXPECT_LE(worst, 0.001);
}

TEST(EmbedValue, RejectsNonFinite) {
  RandomStream rng(4);
  EXPECT_THROW(embed_value(std::numeric_limits<double>::quiet_NaN(), example_list(), rng), DomainError);
  EXPECT_THROW(embed_value(-std::numeric_limits<double>::infinity(), example_list(), rng), DomainError);
}

TEST(EmbedValue, HugeMagnitudeIsRefused) {
  RandomStream rng(5);
  const GreenList gl = random_green_list(1000, 6);
  // Spacing of doubles near 2^52 is 1, so no fractional part can be set.
  double x = 4503599627370496.0;
  while (in_green(fractional_part(x).frac, gl)) x += 1.0;
  EXPECT_THROW(embed_value(x, gl, rng), DomainError);
}

TEST(EmbedColumn, GreenColumnUnchanged) {
  const GreenList gl = example_list();
  const KeyColumn entry{"a", gl, std::nullopt};
  const std::vector<double> col = {0.05, 1.35, -0.55, 7.95};
  RandomStream rng(7);
  EXPECT_EQ(embed_column(col, entry, rng), col);
}

TEST(EmbedColumn, ConstantColumnWithoutNormalizer) {
  const KeyColumn entry{"a", random_green_list(1000, 8), std::nullopt};
  const std::vector<double> col(500, 3.14159);
  RandomStream rng(9);
  for (double y : embed_column(col, entry, rng)) {
    EXPECT_LE(std::abs(y - 3.14159), 1e-3);
    EXPECT_TRUE(in_green(fractional_part(y).frac, entry.green));
  }
}

TEST(EmbedColumn, NormalizedGaussianWassersteinWithinBound) {
  const NumericTable t = gaussian_columns(2000, 1, 10, 4.0, 100.0);
  const WatermarkKey key = full_key(t, 1000, 11);
  ASSERT_TRUE(key.columns[0].normalizer.has_value());
  RandomStream rng(12);
  const std::vector<double> out = embed_column(t.column(0), key.columns[0], rng);
  std::vector<double> a, b;
  for (std::size_t i = 0; i < out.size(); ++i) {
    a.push_back(key.columns[0].to_bin_space(t.column(0)[i]));
    b.push_back(key.columns[0].to_bin_space(out[i]));
    ASSERT_TRUE(in_green(fractional_part(b.back()).frac, key.columns[0].green));
  }
  EXPECT_LE(wasserstein1_column(a, b), 1e-3);
}

TEST(EmbedColumn, ErrorNamesRow) {
  const KeyColumn entry{"a", example_list(), std::nullopt};
  const std::vector<double> col = {0.1, 0.2, std::numeric_limits<double>::infinity()};
  RandomStream rng(13);
  try {
    embed_column(col, entry, rng);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
}

TEST(EmbedTable, EmptyKeyIsIdentity) {
  const NumericTable t = gaussian_columns(50, 3, 14);
  WatermarkKey key;
  EXPECT_EQ(embed_table(t, key, RandomStream(1)), t);
}

TEST(EmbedTable, SmallTableAllGreen) {
  const NumericTable t({"x"}, {{0.21, 0.55, 0.13, 0.88, 0.41, 0.67, 0.02, 0.99, 0.36, 0.74}});
  WatermarkKey key;
  key.columns.push_back(KeyColumn{"x", example_list(), std::nullopt});
  const NumericTable wm = embed_table(t, key, RandomStream(15));
  for (double v : wm.column(0)) EXPECT_TRUE(in_green(fractional_part(v).frac, example_list())) << v;
}

TEST(EmbedTable, LargeTableLinfWithinBound) {
  const NumericTable t = gaussian_columns(5000, 100, 16);
  const WatermarkKey key = full_key(t, 1000, 17);
  const NumericTable wm = embed_table(t, key, RandomStream(18));
  EXPECT_LE(linf_distance(t, wm, key), 1e-3);
}

TEST(EmbedTable, UnkeyedColumnsPassThrough) {
  const NumericTable t = gaussian_columns(100, 3, 19);
  const WatermarkKey key = make_key(t, {"c1"}, {50}, 20);
  const NumericTable wm = embed_table(t, key, RandomStream(21));
  EXPECT_TRUE(std::equal(t.column(0).begin(), t.column(0).end(), wm.column(0).begin()));
  EXPECT_TRUE(std::equal(t.column(2).begin(), t.column(2).end(), wm.column(2).begin()));
  EXPECT_FALSE(std::equal(t.column(1).begin(), t.column(1).end(), wm.column(1).begin()));
}

TEST(EmbedTable, MissingColumnNamed) {
  const NumericTable t = gaussian_columns(10, 2, 22);
  WatermarkKey key = full_key(t, 10, 23);
  key.columns[1].name = "ghost";
  try {
    embed_table(t, key, RandomStream(1));
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
}

TEST(EmbedTable, EmptyTableRejected) {
  const NumericTable t({"a"}, {{}});
  WatermarkKey key;
  key.columns.push_back(KeyColumn{"a", example_list(), std::nullopt});
  try {
    embed_table(t, key, RandomStream(1));
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("empty table"), std::string::npos);
  }
}

TEST(EmbedTable, ReembeddingChangesNothing) {
  const NumericTable t = gaussian_columns(1000, 4, 24, 3.0, -2.0);
  const WatermarkKey key = full_key(t, 1000, 25);
  const NumericTable once = embed_table(t, key, RandomStream(26));
  EXPECT_EQ(embed_table(once, key, RandomStream(27)), once);
}

TEST(EmbedTable, ResultIndependentOfThreadCount) {
  const NumericTable t = gaussian_columns(300, 16, 28);
  const WatermarkKey key = full_key(t, 200, 29);
  const NumericTable serial = embed_table(t, key, RandomStream(30), 1);
  EXPECT_EQ(embed_table(t, key, RandomStream(30), 4), serial);
  EXPECT_EQ(embed_table(t, key, RandomStream(30), 0), serial);
}

TEST(EmbedTable, EveryNormalizedElementGreen) {
  for (std::size_t m : {5u, 1000u, 2500u}) {
    const NumericTable t = gaussian_columns(2000, 5, m, 7.5, 1e4);
    const WatermarkKey key = full_key(t, m, m + 1);
    const NumericTable wm = embed_table(t, key, RandomStream(m + 2));
    for (std::size_t j = 0; j < t.cols(); ++j) {
      for (double v : wm.column(j)) {
        ASSERT_TRUE(in_green(fractional_part(key.columns[j].to_bin_space(v)).frac, key.columns[j].green));
      }
    }
    EXPECT_LE(linf_distance(t, wm, key), 1.0 / static_cast<double>(m));
  }
}

}  // namespace
}  // namespace tabwm
