#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "tabwm/random.hpp"

namespace tabwm {
namespace {

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, SubstreamIsPureFunctionOfSeedAndId) {
  RandomStream parent(7);
  RandomStream s1 = parent.substream(3);
  parent.next_u64();
  parent.normal();
  RandomStream s2 = parent.substream(3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(s1.next_u64(), s2.next_u64());
  EXPECT_NE(RandomStream(7).substream(3).seed(), RandomStream(7).substream(4).seed());
  EXPECT_NE(RandomStream(7).substream(3).seed(), RandomStream(8).substream(3).seed());
}

TEST(RandomStream, SubstreamSeedsDoNotCollideOnSmallGrid) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 64; ++s) {
    for (std::uint64_t id = 0; id < 64; ++id) seen.insert(RandomStream(s).substream(id).seed());
  }
  EXPECT_EQ(seen.size(), 64u * 64u);
}

TEST(RandomStream, UniformRangeAndMoments) {
  RandomStream rng(1);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sq / n - mean * mean, 1.0 / 12.0, 0.002);
}

TEST(RandomStream, NormalMoments) {
  RandomStream rng(2);
  const int n = 400000;
  double sum = 0.0, sq = 0.0, cube = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
    cube += z * z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sq / n, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(cube / n, 0.0, 4.0 * std::sqrt(15.0 / n));
}

TEST(RandomStream, BelowIsUnbiasedOnSmallBound) {
  RandomStream rng(3);
  std::vector<int> counts(6, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[rng.below(6)];
  for (int c : counts) EXPECT_NEAR(c, n / 6.0, 4.0 * std::sqrt(n * (1.0 / 6) * (5.0 / 6)));
}

TEST(RandomStream, MixSeedSpreadsAdjacentInputs) {
  EXPECT_NE(mix_seed(0), mix_seed(1));
  const std::uint64_t diff = mix_seed(100) ^ mix_seed(101);
  EXPECT_GT(__builtin_popcountll(diff), 16);
}

}  // namespace
}  // namespace tabwm
