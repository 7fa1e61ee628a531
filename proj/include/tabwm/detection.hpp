#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tabwm/stats.hpp"
#include "tabwm/table.hpp"

namespace tabwm {

enum class Verdict { kWatermarked, kNotWatermarked };

// Which columns enter the chi-square aggregate.
enum class DetectScope {
  kKeyedColumns,  // every key column; extra table columns are ignored
  kAllColumns,    // every table column, which must then all be keyed
};

struct ColumnDetection {
  std::string column_name;
  std::int64_t n = 0;
  std::int64_t green_count = 0;
  double binomial_p_value = 1.0;  // one-sided P(Bin(n, 1/2) >= green_count)
  double z = 0.0;                 // 2 sqrt(n) (T / n - 1/2)

  friend bool operator==(const ColumnDetection&, const ColumnDetection&) = default;
};

struct DetectionReport {
  std::vector<ColumnDetection> per_column;
  double chi_square_stat = 0.0;
  std::int64_t degrees = 0;
  double global_p_value = 1.0;
  double alpha = kDefaultAlpha;
  Verdict decision = Verdict::kNotWatermarked;

  friend bool operator==(const DetectionReport&, const DetectionReport&) = default;
};

struct GreenTally {
  std::int64_t green = 0;
  std::int64_t n = 0;
};

struct DetectOptions {
  DetectScope scope = DetectScope::kKeyedColumns;
  BinomialTailOptions binomial;
  unsigned threads = 1;
};

// Elements whose fractional part (after the key's normalizer, if any) is green.
std::int64_t green_count(std::span<const double> col, const KeyColumn& entry);

// 2 sqrt(n) (t / n - 1/2), formed as (2t - n) / sqrt(n).
double z_score(std::int64_t t, std::int64_t n);

// Sum of squared z-scores. DomainError on an empty list or t outside [0, n].
double chi_square_statistic(std::span<const GreenTally> counts);

// Tests H0 "not watermarked" with the chi-square aggregate over the scoped
// columns. Normalization uses the key's stored parameters only. Missing key
// columns are a SchemaError naming them; an empty table is rejected.
DetectionReport detect(const NumericTable& table, const WatermarkKey& key, double alpha,
                       const DetectOptions& opts = {});

std::string to_string(Verdict v);

}  // namespace tabwm
