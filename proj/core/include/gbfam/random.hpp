#pragma once

#include <cstdint>

namespace gbfam {

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator so it plugs
/// into <random> distributions.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Independent stream keyed by (seed, index). Streams depend only on the
/// pair, never on the order in which they are created.
inline SplitMix64 make_stream(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t key = SplitMix64::mix(SplitMix64::mix(seed) ^ (index * 0xD1B54A32D192ED03ULL + 1));
    return SplitMix64(key);
}

/// Uniform draw in the open interval (0, 1) from the top 53 bits.
inline double uniform_open01(SplitMix64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace gbfam
