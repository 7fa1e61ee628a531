#pragma once

#include <cstdint>
#include <random>

namespace tabwm {

// Seedable random stream with deterministic substreams.
//
// The bit generator is std::mt19937_64, whose output sequence is fixed by
// the standard. Uniform and normal variates are produced here rather than
// through <random> distributions, whose algorithms differ between standard
// libraries; this keeps every seeded run reproducible across toolchains.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Independent stream keyed by (seed, id). Pure function of both; the
  // parent's state is not consumed.
  RandomStream substream(std::uint64_t id) const;

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform on [lo, hi); lo + u * (hi - lo).
  double uniform(double lo, double hi);

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via the Marsaglia polar method.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer; used to spread related seeds apart.
std::uint64_t mix_seed(std::uint64_t x);

// Seed drawn from std::random_device, for runs where the caller gave none.
std::uint64_t entropy_seed();

}  // namespace tabwm
