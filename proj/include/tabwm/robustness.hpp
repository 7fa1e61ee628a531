#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tabwm/random.hpp"
#include "tabwm/table.hpp"

namespace tabwm {

enum class AttackKind { kAdditiveGaussian, kTargetedFlip };

struct AttackSpec {
  AttackKind kind = AttackKind::kAdditiveGaussian;
  // Noise standard deviation; multiplied by each column's population std
  // when `relative` is set, raw data units otherwise.
  double noise_std = 0.0;
  bool relative = false;
  // Probability that an element is perturbed (independent per element), or
  // the exact share of each column when `fixed_count` is set.
  double proportion = 0.0;
  bool fixed_count = false;
  // Restricts the attack to these columns; empty means every column.
  std::vector<std::string> columns;
  // Per-key-column flip counts for the targeted attack.
  std::vector<std::int64_t> flip_counts;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RobustnessBound {
  std::int64_t n = 0;
  std::int64_t p = 0;
  double alpha = 0.0;
  double chi_square_quantile = 0.0;  // chi2_p(1 - alpha)
  // Fewest green-to-red flips, summed over columns, that can push the
  // statistic under the critical value. Negative when even an untouched
  // fully green table is not significant.
  double min_flips = 0.0;
  // Attack budget (elements touched) under which, with per-element success
  // probability <= 1/2, the attack fails with probability >= failure_prob_lb.
  double max_attacked = 0.0;
  double failure_prob_lb = 0.0;

  friend bool operator==(const RobustnessBound&, const RobustnessBound&) = default;
};

// Adds Normal(0, sigma^2) noise to the selected share of entries. Column j
// draws from rng.substream(j).
NumericTable additive_noise_attack(const NumericTable& table, const AttackSpec& spec, const RandomStream& rng);
NumericTable additive_noise_attack(const NumericTable& table, const AttackSpec& spec);

// Runs the additive attack on the keyed columns of a fully green table and
// returns the share of perturbed elements that left the green list (0 when
// nothing was perturbed). DomainError if a keyed element starts red.
double attack_success_frequency(const NumericTable& watermarked, const AttackSpec& spec, const WatermarkKey& key);

// Moves exactly flip_counts[c] uniformly chosen elements of key column c to
// a uniform point of the red interval of their own pair. The table must be
// fully green under the key; counts must lie in [0, n].
NumericTable targeted_flip_attack(const NumericTable& table, const WatermarkKey& key,
                                  const std::vector<std::int64_t>& flip_counts, const RandomStream& rng);

// n p / 2 - sqrt(n p) sqrt(chi2_p(1 - alpha)) / 2.
double min_flips_for_evasion(std::int64_t n, std::int64_t p, double alpha);

// Attack budget and failure-probability guarantee for a fully green n x p
// table tested at level alpha.
RobustnessBound robustness_bound(std::int64_t n, std::int64_t p, double alpha);

// Same calculation for a concrete table. The guarantee assumes every element
// starts green, so a key that does not cover every column, or any red keyed
// element, is refused with DomainError.
RobustnessBound robustness_bound_for(const NumericTable& table, const WatermarkKey& key, double alpha);

std::string to_string(AttackKind kind);

}  // namespace tabwm
