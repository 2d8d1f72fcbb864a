#pragma once

#include <cstdint>
#include <random>

namespace xbar {

// splitmix64 step; used both as a stream generator for seed material and as
// the mixing function for deriving child seeds from composite keys.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Fold one key into a seed. Chain calls to build a seed from a composite key;
// the chain is order-sensitive, which is what distinguishes scenario keys.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
    std::uint64_t s = seed ^ (key + 0x9E3779B97F4A7C15ULL);
    return splitmix64(s);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

}  // namespace xbar
