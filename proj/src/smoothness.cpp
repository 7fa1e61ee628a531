#include "tabwm/smoothness.hpp"

#include <cmath>

#include "tabwm/error.hpp"
#include "tabwm/parallel.hpp"
#include "tabwm/random.hpp"

namespace tabwm {

void SmoothnessConfig::validate() const {
  if (!(delta > 0.0)) throw DomainError("smoothness delta must be > 0");
  if (m_grid.empty()) throw DomainError("m grid must not be empty");
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    if (m_grid[i] == 0) throw DomainError("m grid values must be positive");
    if (i > 0 && m_grid[i] <= m_grid[i - 1]) throw DomainError("m grid must be strictly increasing");
  }
  if (repeats < 1) throw DomainError("repeats must be >= 1");
  if (!(reject_fraction > 0.0 && reject_fraction < 1.0)) throw DomainError("reject fraction must lie in (0, 1)");
}

double green_frequency(std::span<const double> col, std::size_t m, std::uint64_t seed) {
  if (col.empty()) return 0.0;
  const GreenList gl = random_green_list(m, seed);
  std::size_t green = 0;
  for (double x : col) green += in_green(fractional_part(x).frac, gl) ? 1 : 0;
  return static_cast<double>(green) / static_cast<double>(col.size());
}

ColumnSelection select_columns(const NumericTable& table, const SmoothnessConfig& cfg, std::uint64_t seed,
                               unsigned threads) {
  cfg.validate();
  struct Outcome {
    std::vector<int> in_range_per_m;
    int out_of_range = 0;
  };
  std::vector<Outcome> outcomes(table.cols());
  parallel_for(table.cols(), threads, [&](std::size_t j) {
    const auto raw = table.column(j);
    std::vector<double> col(raw.begin(), raw.end());
    if (const auto norm = fit_normalizer(raw)) {
      for (double& v : col) v = norm->forward(v);
    }
    Outcome& out = outcomes[j];
    out.in_range_per_m.assign(cfg.m_grid.size(), 0);
    const std::uint64_t column_seed = mix_seed(seed ^ mix_seed(j));
    for (std::size_t g = 0; g < cfg.m_grid.size(); ++g) {
      for (int r = 0; r < cfg.repeats; ++r) {
        const std::uint64_t experiment = g * static_cast<std::uint64_t>(cfg.repeats) + static_cast<std::uint64_t>(r);
        const double f = green_frequency(col, cfg.m_grid[g], mix_seed(column_seed + experiment));
        if (std::abs(f - 0.5) <= cfg.delta) {
          ++out.in_range_per_m[g];
        } else {
          ++out.out_of_range;
        }
      }
    }
  });

  ColumnSelection selection;
  const double limit = cfg.reject_fraction * cfg.total_experiments();
  for (std::size_t j = 0; j < table.cols(); ++j) {
    const Outcome& out = outcomes[j];
    if (out.out_of_range > limit) {
      selection.rejected.push_back({table.name(j), out.out_of_range});
      continue;
    }
    std::size_t best = 0;
    int total = 0;
    for (std::size_t g = 0; g < cfg.m_grid.size(); ++g) {
      total += out.in_range_per_m[g];
      if (out.in_range_per_m[g] > out.in_range_per_m[best]) best = g;
    }
    selection.kept.push_back({table.name(j), cfg.m_grid[best], out.in_range_per_m[best], total});
  }
  return selection;
}

}  // namespace tabwm
