#pragma once

#include <cstdint>
#include <limits>

namespace tabwm {

struct BinomialTailOptions {
  // Above this n the tail uses a continuity-corrected normal approximation.
  // The default keeps the exact computation everywhere.
  std::uint64_t normal_fallback_above = std::numeric_limits<std::uint64_t>::max();
};

// P(Binomial(n, 1/2) >= t), exact up to rounding. The anchor probability is
// formed in log space from Stirling remainders (Loader's saddle-point
// form); the tail is then summed outward along the pmf ratio. Throws
// DomainError unless 0 <= t <= n and n >= 1.
double binomial_p_value(std::int64_t t, std::int64_t n, const BinomialTailOptions& opts = {});

// Binomial(n, 1/2) probability mass at k.
double binomial_half_pmf(std::int64_t k, std::int64_t n);

// Upper regularized incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with `dof` degrees of
// freedom: Q(dof / 2, x / 2). Throws DomainError for x < 0 or dof < 1.
double chi_square_sf(double x, double dof);

// x with P(chi2_dof <= x) = q, via bracketing and bisection on chi_square_sf.
// Throws DomainError unless 0 < q < 1.
double chi_square_quantile(double q, double dof);

// Upper tail of the standard normal.
double normal_sf(double z);

}  // namespace tabwm
