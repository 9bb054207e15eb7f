#pragma once

#include <cmath>
#include <cstdint>

namespace hgsparse {

// Deterministic 64-bit generator (splitmix64). State advances by the golden
// gamma constant; the output is a murmur-style finalizer of the new state.
// All randomness in the library flows through this generator so that results
// are bit-exact across platforms and independent of std library internals.
//
// Substreams: substream(seed, s) seeds an independent generator from
// mix64(seed + gamma * (s + 1)). Consumers document which stream ids they
// draw from; two distinct (seed, stream) pairs never share a sequence.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    static constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
        return mix64(seed + kGamma * (stream + 1));
    }

    static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
        return SplitMix64(substream_seed(seed, stream));
    }

    std::uint64_t next() {
        state_ += kGamma;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log argument.
    double next_double_open() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes exactly two draws per call.
    double next_normal() {
        const double u1 = next_double_open();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // +1 or -1 with equal probability.
    double next_sign() { return (next() & 1u) ? 1.0 : -1.0; }

    // Uniform integer in [0, bound) by rejection-free multiply-shift.
    std::uint64_t next_below(std::uint64_t bound) {
        // 128-bit multiply keeps the map unbiased enough for instance
        // generation (bias < 2^-64 per draw) and fully portable.
        const unsigned __int128 wide = static_cast<unsigned __int128>(next()) * bound;
        return static_cast<std::uint64_t>(wide >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace hgsparse
