#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ffil::rng {

// SplitMix64 step; the one fixed bit-mixing primitive everything else builds on.
std::uint64_t splitmix64(std::uint64_t& state);

// Subseed derivation rule used everywhere a master seed spawns independent
// streams (per trial, per instance, per criterion):
//   derive(seed, i) = splitmix64 applied to (seed XOR splitmix64(i + 1)).
// Fixed here so that results are reproducible under any worker schedule.
std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

// Seeded generator with platform-stable bounded draws (rejection sampling on
// the raw 64-bit stream rather than std::uniform_int_distribution, whose
// output is implementation-defined).
class Rand {
  public:
    explicit Rand(std::uint64_t seed);

    std::uint64_t next();
    // uniform in [0, n), n >= 1
    std::uint64_t below(std::uint64_t n);
    // uniform in [0, 1)
    double unit();

  private:
    std::mt19937_64 eng_;
};

// `count` distinct values from [0, universe), ascending. Partial Fisher-Yates.
std::vector<std::uint64_t> sample_without_replacement(std::uint64_t universe,
                                                      std::uint64_t count,
                                                      Rand& rand);

}  // namespace ffil::rng
