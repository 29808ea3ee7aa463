#pragma once

#include <cstdint>

namespace spinqec {

// splitmix64: tiny counter-based generator with stable cross-platform output.
// Monte Carlo shots each get their own stream derived from (seed, shot), so
// sampling is reproducible regardless of how shots are split across threads.
struct SplitMix64 {
    std::uint64_t s;

    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t scramble64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline SplitMix64 shot_stream(std::uint64_t seed, std::uint64_t shot) {
    return SplitMix64{scramble64(seed) + shot * 0x9e3779b97f4a7c15ull};
}

}  // namespace spinqec
