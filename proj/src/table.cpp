#include "tabwm/table.hpp"

#include <cmath>
#include <unordered_set>

#include "tabwm/error.hpp"
#include "tabwm/random.hpp"

namespace tabwm {

NumericTable::NumericTable(std::vector<std::string> names, std::vector<std::vector<double>> columns)
    : names_(std::move(names)), columns_(std::move(columns)) {
  if (names_.size() != columns_.size()) {
    throw SchemaError("table has " + std::to_string(names_.size()) + " names for " +
                      std::to_string(columns_.size()) + " columns");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (!seen.insert(names_[j]).second) throw SchemaError("duplicate column name '" + names_[j] + "'");
    if (columns_[j].size() != columns_.front().size()) {
      throw SchemaError("column '" + names_[j] + "' has " + std::to_string(columns_[j].size()) +
                        " rows, expected " + std::to_string(columns_.front().size()));
    }
    for (std::size_t i = 0; i < columns_[j].size(); ++i) {
      if (!std::isfinite(columns_[j][i])) {
        throw DomainError("non-finite value at row " + std::to_string(i) + ", column '" + names_[j] + "'");
      }
    }
  }
}

std::optional<std::size_t> NumericTable::index_of(const std::string& name) const {
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j] == name) return j;
  }
  return std::nullopt;
}

void WatermarkKey::validate() const {
  if (version != kKeyFormatVersion) {
    throw SchemaError("unsupported key version " + std::to_string(version));
  }
  if (!(alpha_default > 0.0 && alpha_default < 1.0)) {
    throw DomainError("alpha_default must lie in (0, 1)");
  }
  std::unordered_set<std::string> seen;
  for (const auto& c : columns) {
    if (!seen.insert(c.name).second) throw SchemaError("duplicate key column '" + c.name + "'");
    if (c.normalizer && !(c.normalizer->std > 0.0 && std::isfinite(c.normalizer->std))) {
      throw DomainError("normalizer std must be positive for column '" + c.name + "'");
    }
    if (c.normalizer && !std::isfinite(c.normalizer->mean)) {
      throw DomainError("normalizer mean must be finite for column '" + c.name + "'");
    }
  }
}

const KeyColumn* WatermarkKey::find(const std::string& name) const {
  for (const auto& c : columns) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::optional<Normalizer> fit_normalizer(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd >= kMinNormalizerStd)) return std::nullopt;
  return Normalizer{mean, sd};
}

WatermarkKey make_key(const NumericTable& table, const std::vector<std::string>& columns,
                      const std::vector<std::size_t>& m_per_column, std::uint64_t seed, bool normalize,
                      double alpha_default) {
  if (m_per_column.size() != columns.size()) {
    throw SchemaError("one m value is needed per key column");
  }
  WatermarkKey key;
  key.alpha_default = alpha_default;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto idx = table.index_of(columns[j]);
    if (!idx) throw SchemaError("column '" + columns[j] + "' not found in table");
    std::optional<Normalizer> norm;
    if (normalize) norm = fit_normalizer(table.column(*idx));
    key.columns.push_back(
        KeyColumn{columns[j], random_green_list(m_per_column[j], mix_seed(seed ^ mix_seed(j))), norm});
  }
  key.validate();
  return key;
}

}  // namespace tabwm
