#pragma once
// Counter-based keyed random numbers. A value is a pure function of its key
// and counter, so any realization or site can be regenerated in isolation and
// results do not depend on how work is split across threads.

#include <cstdint>
#include <limits>

#include "anderson/lattice.hpp"

namespace anderson {

// SplitMix64 finalizer: a bijective avalanche mix of 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t combine_key(std::uint64_t key, std::uint64_t word) noexcept {
    return mix64(key ^ mix64(word + 0x632be59bd9b4e019ULL));
}

// Map 64 random bits to [0, 1) using the top 53 bits.
constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Per-realization key derived from the experiment's base seed.
constexpr std::uint64_t realization_key(std::uint64_t base_seed, std::uint64_t realization) noexcept {
    return combine_key(mix64(base_seed), realization);
}

// Uniform [0,1) draw attached to a lattice site within one realization.
inline double site_uniform(std::uint64_t base_seed, std::uint64_t realization, const Site& s) noexcept {
    std::uint64_t h = realization_key(base_seed, realization);
    for (Coord c : s.x) h = combine_key(h, static_cast<std::uint64_t>(c));
    return to_unit(h);
}

// Stream of keyed draws satisfying UniformRandomBitGenerator, for auxiliary
// randomness (random energies, test vectors) tied to a realization index.
class KeyedStream {
public:
    using result_type = std::uint64_t;
    constexpr KeyedStream(std::uint64_t base_seed, std::uint64_t stream, std::uint64_t purpose = 0) noexcept
        : key_(combine_key(realization_key(base_seed, stream), purpose ^ 0xa0761d6478bd642fULL)) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    constexpr result_type operator()() noexcept { return mix64(key_ ^ mix64(counter_++)); }
    double uniform() noexcept { return to_unit((*this)()); }
    double uniform(double a, double b) noexcept { return a + (b - a) * uniform(); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace anderson
