#pragma once
// Seedable, splittable randomness for the Monte-Carlo estimators.
// Streams are derived per index block with splitmix64, so results are
// identical for any thread count; the algorithm identifier is recorded
// in sample batches for reproducibility.

#include <cstdint>
#include <random>

namespace hecke {

inline constexpr const char* kRngAlgorithm = "splitmix64/mt19937_64";

// Deterministic per-block sub-seed stream count: samples are processed
// in fixed blocks of this many indices regardless of threading.
inline constexpr std::int64_t kRngBlock = 65536;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Sub-seed for block `index` of the stream rooted at `seed`.
inline std::uint64_t block_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index * 0x9e3779b97f4a7c15ull + 1));
}

inline std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(block_seed(seed, index));
}

// Canonical uniform double in [0, 1) with 53 random bits; avoids
// std::uniform_real_distribution, whose output is not pinned by the
// standard across library implementations.
inline double canonical_u01(std::mt19937_64& rng) {
    return (double)(rng() >> 11) * 0x1.0p-53;
}

}  // namespace hecke
