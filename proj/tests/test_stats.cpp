#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "support.hpp"
#include "tabwm/error.hpp"
#include "tabwm/random.hpp"
#include "tabwm/stats.hpp"

namespace tabwm {
namespace {

using testing::oracle_binomial_tail;
using testing::oracle_chi_square_quantile;
using testing::oracle_chi_square_sf;
using testing::rel_err;

TEST(BinomialPValue, SingleOutcomeTail) { EXPECT_EQ(binomial_p_value(10, 10), 0.0009765625); }

TEST(BinomialPValue, FullTail) { EXPECT_EQ(binomial_p_value(0, 7), 1.0); }

TEST(BinomialPValue, ExactRationalOracle) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  cpp_int num = 0;
  cpp_int c = 1;  // C(100, k)
  for (int k = 0; k <= 100; ++k) {
    if (k >= 60) num += c;
    c = c * (100 - k) / (k + 1);
  }
  const cpp_rational exact(num, cpp_int(1) << 100);
  const double want = static_cast<double>(exact);
  EXPECT_LT(rel_err(binomial_p_value(60, 100), want), 1e-13);
}

TEST(BinomialPValue, MatchesHighPrecisionOracle) {
  RandomStream rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::int64_t>(1 + rng.below(i % 3 == 0 ? 1000000 : 2000));
    // Concentrate t near the bulk, where p-values are representable.
    const double sd = 0.5 * std::sqrt(static_cast<double>(n));
    const double centre = 0.5 * static_cast<double>(n) + rng.uniform(-8.0, 8.0) * sd;
    const auto t = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::llround(centre)), 0, n);
    const double want = oracle_binomial_tail(t, n);
    ASSERT_LT(rel_err(binomial_p_value(t, n), want), 1e-10) << "t=" << t << " n=" << n;
  }
}

TEST(BinomialPValue, SmallTablesExhaustive) {
  for (std::int64_t n = 1; n <= 60; ++n) {
    for (std::int64_t t = 0; t <= n; ++t) {
      ASSERT_LT(rel_err(binomial_p_value(t, n), oracle_binomial_tail(t, n)), 1e-12) << t << "/" << n;
    }
  }
}

TEST(BinomialPValue, NonIncreasingInT) {
  for (std::int64_t n : {1, 2, 17, 1000, 99999}) {
    double prev = 1.0;
    for (std::int64_t t = 0; t <= n; t += std::max<std::int64_t>(1, n / 500)) {
      const double p = binomial_p_value(t, n);
      ASSERT_LE(p, prev) << t << "/" << n;
      prev = p;
    }
  }
}

TEST(BinomialPValue, DomainErrors) {
  EXPECT_THROW(binomial_p_value(-1, 5), DomainError);
  EXPECT_THROW(binomial_p_value(6, 5), DomainError);
  EXPECT_THROW(binomial_p_value(0, 0), DomainError);
}

TEST(BinomialPValue, NormalFallbackIsOptIn) {
  BinomialTailOptions opts;
  opts.normal_fallback_above = 1000;
  const std::int64_t n = 200000;
  const std::int64_t t = 100300;
  const double exact = binomial_p_value(t, n);
  const double approx = binomial_p_value(t, n, opts);
  EXPECT_NE(exact, approx);
  EXPECT_LT(rel_err(approx, exact), 1e-2);
  EXPECT_LT(rel_err(exact, oracle_binomial_tail(t, n)), 1e-10);
}

TEST(BinomialHalfPmf, SumsToOne) {
  for (std::int64_t n : {1, 10, 1001}) {
    double s = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) s += binomial_half_pmf(k, n);
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(ChiSquareSf, ClosedForms) {
  EXPECT_EQ(chi_square_sf(0.0, 5), 1.0);
  EXPECT_NEAR(chi_square_sf(2.0 * std::log(2.0), 2), 0.5, 1e-15);
  EXPECT_NEAR(chi_square_sf(124.342, 100), 0.05, 1e-4);
}

TEST(ChiSquareSf, MatchesHighPrecisionOracle) {
  RandomStream rng(12);
  for (int i = 0; i < 300; ++i) {
    const double dof = static_cast<double>(1 + rng.below(10000));
    const double x = dof * std::exp(rng.uniform(-3.0, 1.5));
    if (x > 1e6) continue;
    const double want = oracle_chi_square_sf(x, dof);
    if (want < 1e-300) continue;
    ASSERT_LT(rel_err(chi_square_sf(x, dof), want), 1e-10) << "x=" << x << " dof=" << dof;
  }
}

TEST(ChiSquareSf, NonIncreasingInX) {
  for (double dof : {1.0, 3.0, 100.0}) {
    double prev = 1.0;
    for (double x = 0.0; x < 5.0 * dof + 50.0; x += 0.37) {
      const double s = chi_square_sf(x, dof);
      ASSERT_LE(s, prev);
      prev = s;
    }
  }
}

TEST(ChiSquareSf, DomainErrors) {
  EXPECT_THROW(chi_square_sf(-1.0, 3), DomainError);
  EXPECT_THROW(chi_square_sf(1.0, 0), DomainError);
}

TEST(ChiSquareQuantile, RoundTrips) {
  for (double dof : {1.0, 10.0, 100.0}) {
    EXPECT_NEAR(chi_square_sf(chi_square_quantile(0.95, dof), dof), 0.05, 1e-9);
  }
}

TEST(ChiSquareQuantile, OneDegreeIsSquaredNormalQuantile) {
  const double z = boost::math::quantile(boost::math::normal(), 0.975);
  EXPECT_LT(rel_err(chi_square_quantile(0.95, 1), z * z), 1e-9);
}

TEST(ChiSquareQuantile, HundredDegrees) {
  EXPECT_NEAR(chi_square_quantile(0.95, 100), 124.342, 1e-3);
  EXPECT_LT(rel_err(chi_square_quantile(0.95, 100), oracle_chi_square_quantile(0.95, 100)), 1e-9);
}

TEST(ChiSquareQuantile, DomainErrors) {
  EXPECT_THROW(chi_square_quantile(0.0, 3), DomainError);
  EXPECT_THROW(chi_square_quantile(1.0, 3), DomainError);
}

TEST(GammaQ, MatchesOracleAcrossRegimes) {
  for (double a : {0.5, 1.0, 2.5, 50.0, 5000.0}) {
    for (double x : {0.01, 0.5 * a, a, a + 1.0, 2.0 * a + 10.0}) {
      const double want = static_cast<double>(boost::math::gamma_q(testing::Big(a), testing::Big(x)));
      EXPECT_LT(rel_err(gamma_q(a, x), want), 1e-10) << a << "," << x;
    }
  }
}

TEST(NormalSf, KnownValues) {
  EXPECT_NEAR(normal_sf(0.0), 0.5, 1e-16);
  EXPECT_NEAR(normal_sf(1.959963984540054), 0.025, 1e-15);
  EXPECT_LT(rel_err(normal_sf(10.0), 7.619853024160527e-24), 1e-12);
}

}  // namespace
}  // namespace tabwm
