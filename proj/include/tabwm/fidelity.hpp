#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tabwm/table.hpp"

namespace tabwm {

struct ColumnFidelity {
  std::string column_name;
  std::size_t m = 0;
  double linf = 0.0;    // normalized units
  double w1 = 0.0;      // normalized units
  double w1_raw = 0.0;  // data units

  friend bool operator==(const ColumnFidelity&, const ColumnFidelity&) = default;
};

struct FidelityReport {
  double linf = 0.0;  // max over keyed columns, normalized units
  std::vector<ColumnFidelity> per_column;
  // sqrt(sum_j 1/m_j^2); equals sqrt(p)/m when every column shares m.
  double multivariate_w1_bound = 0.0;
  // Row-paired transport cost (1/n sum_i |a_i - b_i|_2) in normalized units.
  double row_paired_w1 = 0.0;
  // Absent when fewer than two keyed columns or a keyed column is constant.
  std::optional<double> max_corr_diff;

  friend bool operator==(const FidelityReport&, const FidelityReport&) = default;
};

// Max |a - b| over keyed entries, each column in its normalized units.
// SchemaError on mismatched shape or names.
double linf_distance(const NumericTable& a, const NumericTable& b, const WatermarkKey& key);

// Exact 1-Wasserstein distance between two equal-size empirical measures:
// mean absolute difference of the order statistics.
double wasserstein1_column(std::span<const double> a, std::span<const double> b);

// (1/n sum_i |a_i - b_i|_2^k)^(1/k) over keyed columns in normalized units:
// the cost of the identity row pairing, an upper bound on W_k.
double row_paired_wasserstein(const NumericTable& a, const NumericTable& b, const WatermarkKey& key,
                              double k = 1.0);

// Pearson correlation matrix, population covariance. DomainError naming the
// first constant column.
std::vector<std::vector<double>> correlation_matrix(const NumericTable& t);

// max_ij |corr(a)_ij - corr(b)_ij|.
double correlation_drift(const NumericTable& a, const NumericTable& b);

FidelityReport fidelity_report(const NumericTable& original, const NumericTable& watermarked,
                               const WatermarkKey& key);

}  // namespace tabwm
