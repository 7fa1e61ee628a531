#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tabwm {

// Half-open sub-interval [lo, hi) of [0, 1).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double center() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x < hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Selection of one green interval per pair.
//
// [0, 1) is split into 2m equal bins b_0 .. b_{2m-1}; pair k holds
// (b_{2k}, b_{2k+1}). bits[k] == false marks b_{2k} green, true marks
// b_{2k+1}. Bin boundaries are the doubles j / (2m); all membership tests
// are made against those exact values so the bins partition [0, 1).
class GreenList {
 public:
  GreenList(std::size_t m, std::vector<bool> bits);

  std::size_t m() const { return bits_.size(); }
  const std::vector<bool>& bits() const { return bits_; }
  bool bit(std::size_t pair) const { return bits_[pair]; }

  // Green member of pair k.
  Interval green_interval(std::size_t pair) const;
  // Red member of pair k.
  Interval red_interval(std::size_t pair) const;

  // Bin index j in [0, 2m) with boundary(j) <= frac < boundary(j + 1).
  std::size_t bin_of(double frac) const;
  double boundary(std::size_t j) const;

  friend bool operator==(const GreenList&, const GreenList&) = default;

 private:
  std::vector<bool> bits_;
};

struct FractionalPart {
  double integer_part;  // floor(x), kept as a double so huge |x| stay exact
  double frac;          // in [0, 1)
};

GreenList green_list_from_bits(std::size_t m, std::vector<bool> bits);

// Deterministic in (m, seed); each bit is one draw of a seeded stream.
GreenList random_green_list(std::size_t m, std::uint64_t seed);

// floor-based split: -1.25 -> (-2, 0.75). Throws DomainError on non-finite x.
// When x - floor(x) rounds up to 1 (tiny negative x), frac is clamped to the
// largest double below 1.
FractionalPart fractional_part(double x);

// Nearest green interval by center distance. A green frac maps to its own
// interval. Otherwise only the containing pair and the two pairs on either
// side are inspected; ties go to the lower pair.
Interval nearest_green(double frac, const GreenList& gl);

// Pair index of the nearest green interval (same rule as nearest_green).
std::size_t nearest_green_pair(double frac, const GreenList& gl);

bool in_green(double frac, const GreenList& gl);

}  // namespace tabwm
