#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tabwm/binning.hpp"

namespace tabwm {

// n x p matrix of finite reals stored column-major, with unique column names.
// A table with zero rows is representable (a header-only CSV reads as one);
// watermark operations reject it.
class NumericTable {
 public:
  NumericTable() = default;
  NumericTable(std::vector<std::string> names, std::vector<std::vector<double>> columns);

  std::size_t rows() const { return columns_.empty() ? 0 : columns_.front().size(); }
  std::size_t cols() const { return columns_.size(); }

  const std::vector<std::string>& column_names() const { return names_; }
  const std::string& name(std::size_t j) const { return names_[j]; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  std::span<const double> column(std::size_t j) const { return columns_[j]; }
  std::span<double> column(std::size_t j) { return columns_[j]; }
  const std::vector<std::vector<double>>& columns() const { return columns_; }

  double at(std::size_t row, std::size_t col) const { return columns_[col][row]; }
  double& at(std::size_t row, std::size_t col) { return columns_[col][row]; }

  friend bool operator==(const NumericTable&, const NumericTable&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
};

// Per-column affine map applied before binning: y = (x - mean) / std.
struct Normalizer {
  double mean = 0.0;
  double std = 1.0;

  double forward(double x) const { return (x - mean) / std; }
  double inverse(double y) const { return y * std + mean; }

  friend bool operator==(const Normalizer&, const Normalizer&) = default;
};

// Columns whose population std falls below this are keyed without a
// normalizer.
inline constexpr double kMinNormalizerStd = 1e-12;

struct KeyColumn {
  std::string name;
  GreenList green;
  std::optional<Normalizer> normalizer;

  std::size_t m() const { return green.m(); }
  // Value in the units the green list applies to.
  double to_bin_space(double x) const { return normalizer ? normalizer->forward(x) : x; }

  friend bool operator==(const KeyColumn&, const KeyColumn&) = default;
};

inline constexpr int kKeyFormatVersion = 1;
inline constexpr double kDefaultAlpha = 0.005;

struct WatermarkKey {
  int version = kKeyFormatVersion;
  double alpha_default = kDefaultAlpha;
  std::vector<KeyColumn> columns;

  // Throws SchemaError / DomainError on duplicate names, bad alpha, std <= 0.
  void validate() const;
  const KeyColumn* find(const std::string& name) const;

  friend bool operator==(const WatermarkKey&, const WatermarkKey&) = default;
};

// Population mean/std of a column; nullopt when std < kMinNormalizerStd.
std::optional<Normalizer> fit_normalizer(std::span<const double> values);

// Key with a fresh random green list per named column. Column j of the key
// draws its bits from mix_seed-derived seed (seed, j). Normalizers are fitted
// from `table` when `normalize` is set.
WatermarkKey make_key(const NumericTable& table, const std::vector<std::string>& columns,
                      const std::vector<std::size_t>& m_per_column, std::uint64_t seed,
                      bool normalize = true, double alpha_default = kDefaultAlpha);

}  // namespace tabwm
