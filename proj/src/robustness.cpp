#include "tabwm/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tabwm/detection.hpp"
#include "tabwm/error.hpp"
#include "tabwm/stats.hpp"

namespace tabwm {
namespace {

constexpr int kMaxDraws = 64;

double population_std(std::span<const double> col) {
  if (col.empty()) return 0.0;
  double mean = 0.0;
  for (double v : col) mean += v;
  mean /= static_cast<double>(col.size());
  double ss = 0.0;
  for (double v : col) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(col.size()));
}

// First `k` entries of the returned vector are a uniform k-subset of [0, n).
std::vector<std::size_t> choose_rows(std::size_t n, std::size_t k, RandomStream& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

// Perturbs one column in place; marks perturbed rows in `hit` when given.
void attack_column(std::vector<double>& col, const AttackSpec& spec, RandomStream& rng,
                   std::vector<bool>* hit) {
  const double sigma = spec.relative ? spec.noise_std * population_std(col) : spec.noise_std;
  if (hit) hit->assign(col.size(), false);
  if (spec.fixed_count) {
    const auto k = static_cast<std::size_t>(std::llround(spec.proportion * static_cast<double>(col.size())));
    for (std::size_t i : choose_rows(col.size(), k, rng)) {
      col[i] += rng.normal(0.0, sigma);
      if (hit) (*hit)[i] = true;
    }
    return;
  }
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (!rng.bernoulli(spec.proportion)) continue;
    col[i] += rng.normal(0.0, sigma);
    if (hit) (*hit)[i] = true;
  }
}

bool targets(const AttackSpec& spec, const std::string& name) {
  if (spec.columns.empty()) return true;
  for (const auto& c : spec.columns) {
    if (c == name) return true;
  }
  return false;
}

void require_fully_green(const NumericTable& table, const WatermarkKey& key) {
  for (const auto& entry : key.columns) {
    const auto idx = table.index_of(entry.name);
    if (!idx) throw SchemaError("key column '" + entry.name + "' is missing from the table");
    if (green_count(table.column(*idx), entry) != static_cast<std::int64_t>(table.rows())) {
      throw DomainError("column '" + entry.name + "' is not fully green under the key");
    }
  }
}

double flip_to_red(double x, const KeyColumn& entry, RandomStream& rng) {
  const double y = entry.to_bin_space(x);
  const auto [whole, frac] = fractional_part(y);
  const Interval red = entry.green.red_interval(entry.green.bin_of(frac) / 2);
  auto from_bins = [&](double v) { return entry.normalizer ? entry.normalizer->inverse(v) : v; };
  auto is_red = [&](double candidate) {
    return std::isfinite(candidate) && !in_green(fractional_part(entry.to_bin_space(candidate)).frac, entry.green);
  };
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const double candidate = from_bins(whole + rng.uniform(red.lo, red.hi));
    if (is_red(candidate)) return candidate;
  }
  const double centered = from_bins(whole + red.center());
  if (is_red(centered)) return centered;
  throw DomainError("value " + std::to_string(x) + " cannot be moved off the green list at this magnitude");
}

}  // namespace

void AttackSpec::validate() const {
  if (!(proportion >= 0.0 && proportion <= 1.0)) throw DomainError("attack proportion must lie in [0, 1]");
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) throw DomainError("noise std must be finite and >= 0");
  for (auto k : flip_counts) {
    if (k < 0) throw DomainError("flip counts must be >= 0");
  }
}

NumericTable additive_noise_attack(const NumericTable& table, const AttackSpec& spec, const RandomStream& rng) {
  spec.validate();
  if (spec.kind != AttackKind::kAdditiveGaussian) throw DomainError("additive attack needs kind additive-gaussian");
  for (const auto& c : spec.columns) {
    if (!table.index_of(c)) throw SchemaError("attack column '" + c + "' not found in table");
  }
  if (spec.proportion == 0.0 || spec.noise_std == 0.0) return table;
  std::vector<std::vector<double>> columns(table.columns());
  for (std::size_t j = 0; j < table.cols(); ++j) {
    if (!targets(spec, table.name(j))) continue;
    RandomStream stream = rng.substream(j);
    attack_column(columns[j], spec, stream, nullptr);
  }
  return NumericTable(table.column_names(), std::move(columns));
}

NumericTable additive_noise_attack(const NumericTable& table, const AttackSpec& spec) {
  return additive_noise_attack(table, spec, RandomStream(spec.seed));
}

double attack_success_frequency(const NumericTable& watermarked, const AttackSpec& spec, const WatermarkKey& key) {
  spec.validate();
  require_fully_green(watermarked, key);
  const RandomStream rng(spec.seed);
  std::int64_t attacked = 0;
  std::int64_t escaped = 0;
  for (const auto& entry : key.columns) {
    const std::size_t j = *watermarked.index_of(entry.name);
    std::vector<double> col(watermarked.column(j).begin(), watermarked.column(j).end());
    std::vector<bool> hit;
    RandomStream stream = rng.substream(j);
    attack_column(col, spec, stream, &hit);
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (!hit[i]) continue;
      ++attacked;
      if (!in_green(fractional_part(entry.to_bin_space(col[i])).frac, entry.green)) ++escaped;
    }
  }
  return attacked == 0 ? 0.0 : static_cast<double>(escaped) / static_cast<double>(attacked);
}

NumericTable targeted_flip_attack(const NumericTable& table, const WatermarkKey& key,
                                  const std::vector<std::int64_t>& flip_counts, const RandomStream& rng) {
  if (flip_counts.size() != key.columns.size()) {
    throw SchemaError("need one flip count per key column (" + std::to_string(key.columns.size()) + "), got " +
                      std::to_string(flip_counts.size()));
  }
  const auto n = static_cast<std::int64_t>(table.rows());
  for (std::size_t c = 0; c < flip_counts.size(); ++c) {
    if (flip_counts[c] < 0 || flip_counts[c] > n) {
      throw DomainError("flip count " + std::to_string(flip_counts[c]) + " for column '" + key.columns[c].name +
                        "' outside [0, " + std::to_string(n) + "]");
    }
  }
  require_fully_green(table, key);
  std::vector<std::vector<double>> columns(table.columns());
  for (std::size_t c = 0; c < key.columns.size(); ++c) {
    const auto& entry = key.columns[c];
    const std::size_t j = *table.index_of(entry.name);
    RandomStream stream = rng.substream(j);
    for (std::size_t i : choose_rows(table.rows(), static_cast<std::size_t>(flip_counts[c]), stream)) {
      columns[j][i] = flip_to_red(columns[j][i], entry, stream);
    }
  }
  return NumericTable(table.column_names(), std::move(columns));
}

double min_flips_for_evasion(std::int64_t n, std::int64_t p, double alpha) {
  if (n < 1 || p < 1) throw DomainError("n and p must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  const double np = static_cast<double>(n) * static_cast<double>(p);
  const double crit = chi_square_quantile(1.0 - alpha, static_cast<double>(p));
  return 0.5 * np - 0.5 * std::sqrt(np) * std::sqrt(crit);
}

RobustnessBound robustness_bound(std::int64_t n, std::int64_t p, double alpha) {
  RobustnessBound b;
  b.n = n;
  b.p = p;
  b.alpha = alpha;
  b.min_flips = min_flips_for_evasion(n, p, alpha);
  b.chi_square_quantile = chi_square_quantile(1.0 - alpha, static_cast<double>(p));
  const double np = static_cast<double>(n) * static_cast<double>(p);
  const double root_np = std::sqrt(np);
  const double root_crit = std::sqrt(b.chi_square_quantile);
  b.max_attacked = std::max(0.0, (np - root_np * root_crit) / (1.0 + std::pow(np, -0.25)));
  b.failure_prob_lb = std::clamp(1.0 - std::exp(-0.5 * (root_np - root_crit)), 0.0, 1.0);
  return b;
}

RobustnessBound robustness_bound_for(const NumericTable& table, const WatermarkKey& key, double alpha) {
  if (table.rows() == 0) throw SchemaError("empty table");
  for (const auto& name : table.column_names()) {
    if (!key.find(name)) {
      throw DomainError("bound assumes every element starts green; column '" + name + "' is not keyed");
    }
  }
  try {
    require_fully_green(table, key);
  } catch (const DomainError& e) {
    throw DomainError(std::string("bound assumes every element starts green; ") + e.what());
  }
  return robustness_bound(static_cast<std::int64_t>(table.rows()), static_cast<std::int64_t>(table.cols()), alpha);
}

std::string to_string(AttackKind kind) {
  return kind == AttackKind::kAdditiveGaussian ? "additive-gaussian" : "targeted-flip";
}

}  // namespace tabwm
