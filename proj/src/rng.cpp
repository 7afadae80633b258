#include "ffil/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffil::rng {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = index + 1;
    std::uint64_t mixed = seed ^ splitmix64(s);
    return splitmix64(mixed);
}

Rand::Rand(std::uint64_t seed) : eng_(seed) {}

std::uint64_t Rand::next() { return eng_(); }

std::uint64_t Rand::below(std::uint64_t n) {
    if (n == 0) throw std::logic_error("Rand::below(0)");
    if ((n & (n - 1)) == 0) return next() & (n - 1);
    // rejection sampling: discard the biased tail of the 64-bit range
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t x;
    do {
        x = next();
    } while (x > limit);
    return x % n;
}

double Rand::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<std::uint64_t> sample_without_replacement(std::uint64_t universe,
                                                      std::uint64_t count,
                                                      Rand& rand) {
    if (count > universe) throw std::logic_error("sample size exceeds universe");
    std::vector<std::uint64_t> pool(universe);
    for (std::uint64_t i = 0; i < universe; ++i) pool[i] = i;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t j = i + rand.below(universe - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace ffil::rng
