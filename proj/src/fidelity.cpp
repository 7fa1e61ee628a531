#include "tabwm/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "tabwm/error.hpp"

namespace tabwm {
namespace {

void require_same_shape(const NumericTable& a, const NumericTable& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw SchemaError("tables differ in shape: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                      " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  if (a.column_names() != b.column_names()) throw SchemaError("tables differ in column names");
}

std::size_t keyed_index(const NumericTable& t, const KeyColumn& entry) {
  const auto idx = t.index_of(entry.name);
  if (!idx) throw SchemaError("key column '" + entry.name + "' is missing from the table");
  return *idx;
}

double column_linf(std::span<const double> a, std::span<const double> b, const KeyColumn& entry) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(entry.to_bin_space(a[i]) - entry.to_bin_space(b[i])));
  }
  return worst;
}

std::vector<double> to_bin_space(std::span<const double> col, const KeyColumn& entry) {
  std::vector<double> out(col.size());
  for (std::size_t i = 0; i < col.size(); ++i) out[i] = entry.to_bin_space(col[i]);
  return out;
}

}  // namespace

double linf_distance(const NumericTable& a, const NumericTable& b, const WatermarkKey& key) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (const auto& entry : key.columns) {
    const std::size_t j = keyed_index(a, entry);
    worst = std::max(worst, column_linf(a.column(j), b.column(j), entry));
  }
  return worst;
}

double wasserstein1_column(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw SchemaError("W1 needs equal sample sizes, got " + std::to_string(a.size()) + " and " +
                      std::to_string(b.size()));
  }
  if (a.empty()) throw DomainError("W1 of empty samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double total = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) total += std::abs(sa[i] - sb[i]);
  return total / static_cast<double>(sa.size());
}

double row_paired_wasserstein(const NumericTable& a, const NumericTable& b, const WatermarkKey& key, double k) {
  require_same_shape(a, b);
  if (!(k >= 1.0)) throw DomainError("Wasserstein order must be >= 1");
  if (a.rows() == 0) return 0.0;
  std::vector<double> sq(a.rows(), 0.0);
  for (const auto& entry : key.columns) {
    const std::size_t j = keyed_index(a, entry);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const double d = entry.to_bin_space(a.at(i, j)) - entry.to_bin_space(b.at(i, j));
      sq[i] += d * d;
    }
  }
  double total = 0.0;
  for (double s : sq) total += std::pow(std::sqrt(s), k);
  return std::pow(total / static_cast<double>(a.rows()), 1.0 / k);
}

std::vector<std::vector<double>> correlation_matrix(const NumericTable& t) {
  const std::size_t p = t.cols();
  const std::size_t n = t.rows();
  if (n == 0) throw DomainError("correlation of an empty table");
  std::vector<std::vector<double>> centered(p);
  std::vector<double> norms(p);
  for (std::size_t j = 0; j < p; ++j) {
    const auto col = t.column(j);
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(n);
    centered[j].resize(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      centered[j][i] = col[i] - mean;
      ss += centered[j][i] * centered[j][i];
    }
    if (!(std::sqrt(ss / static_cast<double>(n)) >= kMinNormalizerStd)) {
      throw DomainError("column '" + t.name(j) + "' is constant; correlation undefined");
    }
    norms[j] = std::sqrt(ss);
  }
  std::vector<std::vector<double>> corr(p, std::vector<double>(p, 1.0));
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j + 1; k < p; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += centered[j][i] * centered[k][i];
      corr[j][k] = corr[k][j] = dot / (norms[j] * norms[k]);
    }
  }
  return corr;
}

double correlation_drift(const NumericTable& a, const NumericTable& b) {
  require_same_shape(a, b);
  const auto ca = correlation_matrix(a);
  const auto cb = correlation_matrix(b);
  double worst = 0.0;
  for (std::size_t j = 0; j < ca.size(); ++j) {
    for (std::size_t k = 0; k < ca.size(); ++k) worst = std::max(worst, std::abs(ca[j][k] - cb[j][k]));
  }
  return worst;
}

FidelityReport fidelity_report(const NumericTable& original, const NumericTable& watermarked,
                               const WatermarkKey& key) {
  require_same_shape(original, watermarked);
  FidelityReport report;
  double inv_m_sq = 0.0;
  std::vector<std::string> keyed_names;
  std::vector<std::vector<double>> keyed_a, keyed_b;
  for (const auto& entry : key.columns) {
    const std::size_t j = keyed_index(original, entry);
    const auto a = original.column(j);
    const auto b = watermarked.column(j);
    ColumnFidelity cf;
    cf.column_name = entry.name;
    cf.m = entry.m();
    cf.linf = column_linf(a, b, entry);
    cf.w1 = wasserstein1_column(to_bin_space(a, entry), to_bin_space(b, entry));
    cf.w1_raw = wasserstein1_column(a, b);
    report.linf = std::max(report.linf, cf.linf);
    report.per_column.push_back(cf);
    inv_m_sq += 1.0 / (static_cast<double>(cf.m) * static_cast<double>(cf.m));
    keyed_names.push_back(entry.name);
    keyed_a.emplace_back(a.begin(), a.end());
    keyed_b.emplace_back(b.begin(), b.end());
  }
  report.multivariate_w1_bound = std::sqrt(inv_m_sq);
  report.row_paired_w1 = row_paired_wasserstein(original, watermarked, key, 1.0);
  if (keyed_names.size() >= 2) {
    try {
      report.max_corr_diff =
          correlation_drift(NumericTable(keyed_names, std::move(keyed_a)), NumericTable(keyed_names, std::move(keyed_b)));
    } catch (const DomainError&) {
      report.max_corr_diff.reset();
    }
  }
  return report;
}

}  // namespace tabwm
