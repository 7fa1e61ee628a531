#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tabwm/table.hpp"

namespace tabwm {

// Column filter settings. The defaults give 9 grid points x 5 repeats = 45
// experiments, with rejection at 5 or more out-of-band frequencies.
struct SmoothnessConfig {
  double delta = 0.01;
  std::vector<std::size_t> m_grid = {1000, 1500, 2000, 2500, 3000, 3500, 4000, 4500, 5000};
  int repeats = 5;
  double reject_fraction = 0.10;

  void validate() const;
  int total_experiments() const { return repeats * static_cast<int>(m_grid.size()); }
};

struct KeptColumn {
  std::string column_name;
  std::size_t chosen_m = 0;
  int in_range_count = 0;  // in-band experiments at chosen_m (out of repeats)
  int total_in_range = 0;  // across the whole grid

  friend bool operator==(const KeptColumn&, const KeptColumn&) = default;
};

struct RejectedColumn {
  std::string column_name;
  int out_of_range_count = 0;

  friend bool operator==(const RejectedColumn&, const RejectedColumn&) = default;
};

struct ColumnSelection {
  std::vector<KeptColumn> kept;
  std::vector<RejectedColumn> rejected;

  friend bool operator==(const ColumnSelection&, const ColumnSelection&) = default;
};

// Share of values whose fractional part is green under random_green_list(m,
// seed). The caller is expected to pass a normalized column.
double green_frequency(std::span<const double> col, std::size_t m, std::uint64_t seed);

// For every column: normalize to zero mean / unit variance, run
// repeats x |m_grid| frequency experiments, each with a freshly seeded green
// list, and count frequencies outside [1/2 - delta, 1/2 + delta]. A column is
// rejected when that count exceeds reject_fraction x total; otherwise it keeps
// the grid m with the most in-band experiments (ties to the smallest m).
ColumnSelection select_columns(const NumericTable& table, const SmoothnessConfig& cfg, std::uint64_t seed,
                               unsigned threads = 1);

}  // namespace tabwm
