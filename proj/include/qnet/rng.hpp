#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qnet {

// SplitMix64 generator. Used instead of the <random> engines so that draws
// are reproducible bit-for-bit across platforms and standard-library
// implementations, and so that independent substreams can be keyed cheaply
// (one per node in the authentication simulator).
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound). bound must be nonzero.
    std::uint64_t uniform_below(std::uint64_t bound) {
        // Lemire's multiply-shift rejection method.
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1) with 53-bit resolution.
    double uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double normal() {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform_real();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

   private:
    std::uint64_t state_;
};

// Independent stream keyed on (master, key); e.g. per-node probe streams,
// so results do not depend on worker scheduling.
inline SplitMix64 substream(std::uint64_t master, std::uint64_t key) {
    SplitMix64 mixer(master ^ (key * 0xD1342543DE82EF95ULL + 0x632BE59BD9B4E019ULL));
    return SplitMix64(mixer.next());
}

}  // namespace qnet
