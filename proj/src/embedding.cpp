#include "tabwm/embedding.hpp"

#include <cmath>
#include <string>

#include "tabwm/error.hpp"
#include "tabwm/parallel.hpp"

namespace tabwm {
namespace {

constexpr int kMaxDraws = 64;

// Embeds x given maps into and out of bin space. Acceptance is judged on
// to_bins(candidate), which is exactly what detection evaluates.
template <class ToBins, class FromBins>
double embed_mapped(double x, const GreenList& gl, RandomStream& rng, ToBins to_bins, FromBins from_bins) {
  const double y = to_bins(x);
  const auto [whole, frac] = fractional_part(y);
  if (in_green(frac, gl)) return x;

  const Interval g = nearest_green(frac, gl);
  const double bound = 1.0 / static_cast<double>(gl.m());
  auto accept = [&](double candidate) {
    if (!std::isfinite(candidate)) return false;
    const double back = to_bins(candidate);
    return in_green(fractional_part(back).frac, gl) && std::abs(back - y) <= bound;
  };
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const double candidate = from_bins(whole + rng.uniform(g.lo, g.hi));
    if (accept(candidate)) return candidate;
  }
  const double centered = from_bins(whole + g.center());
  if (accept(centered)) return centered;
  throw DomainError("value " + std::to_string(x) + " is too large in magnitude to carry a watermark at m = " +
                    std::to_string(gl.m()));
}

}  // namespace

double embed_value(double x, const GreenList& gl, RandomStream& rng) {
  if (!std::isfinite(x)) throw DomainError("cannot embed a non-finite value");
  auto identity = [](double v) { return v; };
  return embed_mapped(x, gl, rng, identity, identity);
}

std::vector<double> embed_column(std::span<const double> col, const KeyColumn& entry, RandomStream& rng) {
  std::vector<double> out(col.begin(), col.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    try {
      if (!std::isfinite(out[i])) throw DomainError("cannot embed a non-finite value");
      if (entry.normalizer) {
        const Normalizer norm = *entry.normalizer;
        out[i] = embed_mapped(
            out[i], entry.green, rng, [&](double v) { return norm.forward(v); },
            [&](double v) { return norm.inverse(v); });
      } else {
        out[i] = embed_value(out[i], entry.green, rng);
      }
    } catch (const DomainError& e) {
      throw DomainError("column '" + entry.name + "', row " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

NumericTable embed_table(const NumericTable& table, const WatermarkKey& key, const RandomStream& rng,
                         unsigned threads) {
  key.validate();
  if (!key.columns.empty() && table.rows() == 0) throw SchemaError("empty table");

  std::vector<const KeyColumn*> entry_for(table.cols(), nullptr);
  for (const auto& entry : key.columns) {
    const auto idx = table.index_of(entry.name);
    if (!idx) throw SchemaError("key column '" + entry.name + "' is missing from the table");
    entry_for[*idx] = &entry;
  }

  std::vector<std::vector<double>> columns(table.columns());
  parallel_for(table.cols(), threads, [&](std::size_t j) {
    if (!entry_for[j]) return;
    RandomStream stream = rng.substream(j);
    columns[j] = embed_column(table.column(j), *entry_for[j], stream);
  });
  return NumericTable(table.column_names(), std::move(columns));
}

}  // namespace tabwm
