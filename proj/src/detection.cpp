#include "tabwm/detection.hpp"

#include <cmath>

#include "tabwm/error.hpp"
#include "tabwm/parallel.hpp"

namespace tabwm {

std::int64_t green_count(std::span<const double> col, const KeyColumn& entry) {
  std::int64_t count = 0;
  if (entry.normalizer) {
    const Normalizer norm = *entry.normalizer;
    for (double x : col) count += in_green(fractional_part(norm.forward(x)).frac, entry.green) ? 1 : 0;
  } else {
    for (double x : col) count += in_green(fractional_part(x).frac, entry.green) ? 1 : 0;
  }
  return count;
}

double z_score(std::int64_t t, std::int64_t n) {
  return static_cast<double>(2 * t - n) / std::sqrt(static_cast<double>(n));
}

double chi_square_statistic(std::span<const GreenTally> counts) {
  if (counts.empty()) throw DomainError("chi-square statistic needs at least one column");
  double stat = 0.0;
  for (const auto& c : counts) {
    if (c.n < 1 || c.green < 0 || c.green > c.n) {
      throw DomainError("green count " + std::to_string(c.green) + " outside [0, " + std::to_string(c.n) + "]");
    }
    const double d = static_cast<double>(2 * c.green - c.n);
    stat += d * d / static_cast<double>(c.n);
  }
  return stat;
}

DetectionReport detect(const NumericTable& table, const WatermarkKey& key, double alpha,
                       const DetectOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  key.validate();
  if (key.columns.empty()) throw SchemaError("key has no columns");
  if (table.rows() == 0) throw SchemaError("empty table");

  std::string missing;
  std::vector<std::pair<std::size_t, const KeyColumn*>> scoped;
  for (const auto& entry : key.columns) {
    const auto idx = table.index_of(entry.name);
    if (!idx) {
      missing += (missing.empty() ? "" : ", ") + entry.name;
      continue;
    }
    scoped.emplace_back(*idx, &entry);
  }
  if (!missing.empty()) throw SchemaError("key columns missing from table: " + missing);
  if (opts.scope == DetectScope::kAllColumns) {
    std::string unkeyed;
    for (const auto& name : table.column_names()) {
      if (!key.find(name)) unkeyed += (unkeyed.empty() ? "" : ", ") + name;
    }
    if (!unkeyed.empty()) throw SchemaError("all-columns detection but no key entry for: " + unkeyed);
  }

  DetectionReport report;
  report.alpha = alpha;
  report.per_column.resize(scoped.size());
  const auto n = static_cast<std::int64_t>(table.rows());
  parallel_for(scoped.size(), opts.threads, [&](std::size_t i) {
    const auto [idx, entry] = scoped[i];
    auto& col = report.per_column[i];
    col.column_name = entry->name;
    col.n = n;
    col.green_count = green_count(table.column(idx), *entry);
    col.binomial_p_value = binomial_p_value(col.green_count, n, opts.binomial);
    col.z = z_score(col.green_count, n);
  });

  std::vector<GreenTally> tallies;
  tallies.reserve(scoped.size());
  for (const auto& c : report.per_column) tallies.push_back({c.green_count, c.n});
  report.chi_square_stat = chi_square_statistic(tallies);
  report.degrees = static_cast<std::int64_t>(tallies.size());
  report.global_p_value = chi_square_sf(report.chi_square_stat, static_cast<double>(report.degrees));
  report.decision = report.global_p_value < alpha ? Verdict::kWatermarked : Verdict::kNotWatermarked;
  return report;
}

std::string to_string(Verdict v) {
  return v == Verdict::kWatermarked ? "watermarked" : "not-watermarked";
}

}  // namespace tabwm
