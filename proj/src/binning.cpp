#include "tabwm/binning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tabwm/error.hpp"
#include "tabwm/random.hpp"

namespace tabwm {

GreenList::GreenList(std::size_t m, std::vector<bool> bits) : bits_(std::move(bits)) {
  if (m == 0) throw DomainError("green list needs m >= 1");
  if (bits_.size() != m) {
    throw SchemaError("green list bit count " + std::to_string(bits_.size()) +
                      " does not match m = " + std::to_string(m));
  }
}

double GreenList::boundary(std::size_t j) const {
  return static_cast<double>(j) / static_cast<double>(2 * m());
}

Interval GreenList::green_interval(std::size_t pair) const {
  const std::size_t j = 2 * pair + (bits_[pair] ? 1 : 0);
  return {boundary(j), boundary(j + 1)};
}

Interval GreenList::red_interval(std::size_t pair) const {
  const std::size_t j = 2 * pair + (bits_[pair] ? 0 : 1);
  return {boundary(j), boundary(j + 1)};
}

std::size_t GreenList::bin_of(double frac) const {
  const std::size_t bins = 2 * m();
  double scaled = std::floor(frac * static_cast<double>(bins));
  std::size_t j = scaled <= 0.0 ? 0 : std::min(static_cast<std::size_t>(scaled), bins - 1);
  // frac * 2m may round across a boundary; settle against the exact edges.
  if (j > 0 && frac < boundary(j)) --j;
  if (j + 1 < bins && frac >= boundary(j + 1)) ++j;
  return j;
}

GreenList green_list_from_bits(std::size_t m, std::vector<bool> bits) {
  return GreenList(m, std::move(bits));
}

GreenList random_green_list(std::size_t m, std::uint64_t seed) {
  if (m == 0) throw DomainError("green list needs m >= 1");
  RandomStream rng(seed);
  std::vector<bool> bits(m);
  for (std::size_t k = 0; k < m; ++k) bits[k] = (rng.next_u64() >> 63) != 0;
  return GreenList(m, std::move(bits));
}

FractionalPart fractional_part(double x) {
  if (!std::isfinite(x)) throw DomainError("fractional part of a non-finite value");
  const double i = std::floor(x);
  double f = x - i;
  if (f >= 1.0) f = std::nextafter(1.0, 0.0);
  return {i, f};
}

std::size_t nearest_green_pair(double frac, const GreenList& gl) {
  const std::size_t m = gl.m();
  const std::size_t j = gl.bin_of(frac);
  const std::size_t c = j / 2;
  // A green frac at the lower edge of its interval ties with the previous
  // green center; containment wins so green values keep their own interval.
  if (((j & 1) != 0) == gl.bit(c)) return c;
  const std::size_t first = c >= 2 ? c - 2 : 0;
  const std::size_t last = std::min(c + 2, m - 1);
  std::size_t best = first;
  double best_dist = std::abs(frac - gl.green_interval(first).center());
  for (std::size_t k = first + 1; k <= last; ++k) {
    const double d = std::abs(frac - gl.green_interval(k).center());
    if (d < best_dist) {
      best_dist = d;
      best = k;
    }
  }
  return best;
}

Interval nearest_green(double frac, const GreenList& gl) {
  return gl.green_interval(nearest_green_pair(frac, gl));
}

bool in_green(double frac, const GreenList& gl) {
  const std::size_t j = gl.bin_of(frac);
  return ((j & 1) != 0) == gl.bit(j / 2);
}

}  // namespace tabwm
