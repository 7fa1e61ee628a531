#pragma once

#include <span>
#include <vector>

#include "tabwm/binning.hpp"
#include "tabwm/random.hpp"
#include "tabwm/table.hpp"

namespace tabwm {

// Moves x onto the green list. A value whose fractional part is already
// green is returned bit-identical; otherwise the fractional part is replaced
// by a uniform draw from the nearest green interval, so |result - x| <= 1/m.
// Throws DomainError for non-finite x.
double embed_value(double x, const GreenList& gl, RandomStream& rng);

// Embeds one column under a key entry. With a normalizer the value is mapped
// to (x - mean) / std, embedded, and mapped back; the result is checked in
// the same normalized space detection uses, and redrawn if rounding pushed it
// off the green interval. DomainError messages carry the row index.
std::vector<double> embed_column(std::span<const double> col, const KeyColumn& entry, RandomStream& rng);

// Embeds every keyed column; other columns pass through untouched. Column j
// of the table draws from rng.substream(j), so the result does not depend on
// processing order. `threads` == 0 uses the available hardware parallelism.
NumericTable embed_table(const NumericTable& table, const WatermarkKey& key, const RandomStream& rng,
                         unsigned threads = 1);

}  // namespace tabwm
