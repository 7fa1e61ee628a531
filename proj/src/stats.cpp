#include "tabwm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tabwm/error.hpp"

namespace tabwm {
namespace {

constexpr double kLn2Pi = 1.837877066409345483560659472811;  // log(2 pi)

// log(x!) - log(sqrt(2 pi x) (x/e)^x); valid for any x > 0.
double stirlerr(double x) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (x <= 15.0) {
    const long double xl = x;
    return static_cast<double>(std::lgamma(xl + 1.0L) - (xl + 0.5L) * std::log(xl) + xl -
                               0.5L * static_cast<long double>(kLn2Pi));
  }
  const double xx = x * x;
  if (x > 500.0) return (S0 - S1 / xx) / x;
  if (x > 80.0) return (S0 - (S1 - S2 / xx) / xx) / x;
  if (x > 35.0) return (S0 - (S1 - (S2 - S3 / xx) / xx) / xx) / x;
  return (S0 - (S1 - (S2 - (S3 - S4 / xx) / xx) / xx) / xx) / x;
}

// Deviance term x log(x / np) + np - x, computed without cancellation when
// x is close to np.
double bd0(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

// lambda^x e^-lambda / Gamma(x + 1) for real x > 0.
double poisson_raw(double x, double lambda) {
  return std::exp(-stirlerr(x) - bd0(x, lambda)) / std::sqrt(2.0 * std::numbers::pi * x);
}

// P(X >= t) for t > n/2: start at the pmf and walk up the ratio
// pmf(k+1)/pmf(k) = (n-k)/(k+1), which is < 1 past the mode.
double upper_tail_sum(std::int64_t t, std::int64_t n) {
  double term = binomial_half_pmf(t, n);
  if (term == 0.0) return 0.0;
  double sum = term;
  for (std::int64_t k = t; k < n; ++k) {
    term *= static_cast<double>(n - k) / static_cast<double>(k + 1);
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

}  // namespace

double binomial_half_pmf(std::int64_t k, std::int64_t n) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (k == 0 || k == n) {
    return std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(n, 4096)));
  }
  const double x = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  const double half = 0.5 * nn;
  const double lc = stirlerr(nn) - stirlerr(x) - stirlerr(nn - x) - bd0(x, half) - bd0(nn - x, half);
  const double lf = kLn2Pi + std::log(x) + std::log1p(-x / nn);
  return std::exp(lc - 0.5 * lf);
}

double binomial_p_value(std::int64_t t, std::int64_t n, const BinomialTailOptions& opts) {
  if (n < 1) throw DomainError("binomial p-value needs n >= 1");
  if (t < 0 || t > n) {
    throw DomainError("green count " + std::to_string(t) + " outside [0, " + std::to_string(n) + "]");
  }
  if (t == 0) return 1.0;
  if (static_cast<std::uint64_t>(n) > opts.normal_fallback_above) {
    const double nn = static_cast<double>(n);
    return normal_sf((static_cast<double>(t) - 0.5 - 0.5 * nn) / (0.5 * std::sqrt(nn)));
  }
  if (2 * t > n) return upper_tail_sum(t, n);
  // By symmetry of Binomial(n, 1/2): P(X <= t-1) = P(X >= n-t+1).
  return 1.0 - upper_tail_sum(n - t + 1, n);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw DomainError("incomplete gamma needs a > 0");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma needs x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  constexpr double kEps = 1e-17;
  constexpr int kMaxIter = 1000000;
  if (x < a + 1.0) {
    // Lower series: P(a, x) = x^a e^-x / Gamma(a+1) * sum_k x^k / ((a+1)...(a+k)).
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < kMaxIter; ++k) {
      term *= x / (a + k);
      sum += term;
      if (term < sum * kEps) break;
    }
    return 1.0 - poisson_raw(a, x) * sum;
  }
  // Continued fraction for Q, modified Lentz.
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 4e-16) break;
  }
  // x^a e^-x / Gamma(a) = a * poisson_raw(a, x)
  return a * poisson_raw(a, x) * h;
}

double chi_square_sf(double x, double dof) {
  if (!(dof >= 1.0)) throw DomainError("chi-square needs at least one degree of freedom");
  if (!(x >= 0.0)) throw DomainError("chi-square statistic must be >= 0");
  return gamma_q(0.5 * dof, 0.5 * x);
}

double chi_square_quantile(double q, double dof) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
  if (!(dof >= 1.0)) throw DomainError("chi-square needs at least one degree of freedom");
  const double target = 1.0 - q;
  double lo = 0.0;
  double hi = dof;
  while (chi_square_sf(hi, dof) > target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 400 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (chi_square_sf(mid, dof) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

}  // namespace tabwm
