#pragma once

#include <cstdint>

namespace pinsync {

/// splitmix64 generator (Vigna's public-domain recurrence). Used everywhere
/// randomness is needed so that streams can be reproduced bit-for-bit in any
/// language from the recurrence alone; see README for the exact recipe.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Strictly inside (0,1): ((u >> 11) + 0.5) * 2^-53.
    double unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Strictly inside (lo, hi) for lo < hi.
    double uniform_open(double lo, double hi) {
        return lo + (hi - lo) * unit_open();
    }

private:
    std::uint64_t state_;
};

}  // namespace pinsync
