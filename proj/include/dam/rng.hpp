#pragma once

// Deterministic PRNG stack: SplitMix64 for seeding/finalizing,
// xoshiro256** as the workhorse stream, Lemire rejection for bounded
// integers. All draws are bit-reproducible across platforms.

#include <cstdint>
#include <string_view>

#include "dam/int128.hpp"

namespace dam {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += kGoldenGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed = 0) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform integer in [0, bound) via Lemire multiply-shift rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t x = next();
        u128 m = static_cast<u128>(x) * bound;
        std::uint64_t lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                x = next();
                m = static_cast<u128>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // +1 if the top bit of the next output is set, else -1.
    int next_spin() { return (next() >> 63) ? 1 : -1; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

// FNV-1a, shifted so that the empty string hashes to 0.
inline std::uint64_t hash_tag(std::string_view tag) {
    constexpr std::uint64_t kBasis = 0xCBF29CE484222325ULL;
    constexpr std::uint64_t kPrime = 0x100000001B3ULL;
    std::uint64_t h = kBasis;
    for (unsigned char c : tag) {
        h ^= c;
        h *= kPrime;
    }
    return h ^ kBasis;
}

// Per-trial seed derivation. Collision-free in practice and independent of
// execution schedule: the result depends only on the four inputs.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view experiment_tag,
                                 std::uint64_t point_index, std::uint64_t trial_index) {
    std::uint64_t combined =
        master_seed ^ hash_tag(experiment_tag) ^ (point_index * kGoldenGamma) ^ trial_index;
    return SplitMix64(combined).next();
}

}  // namespace dam
