#pragma once

#include <cmath>

#include "wordmap/common.hpp"

namespace wordmap {

/// Counter-based splittable generator.  A stream is addressed by (seed, stream
/// index); the i-th output of a stream is a pure function of (seed, stream, i),
/// so Monte Carlo results are independent of how samples are assigned to
/// threads.  Core mixer is the splitmix64 finalizer in counter mode.
class CounterRng {
public:
    CounterRng(u64 seed, u64 stream)
        : base_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream * 0xbf58476d1ce4e5b9ull + 1))) {}

    u64 next_u64() { return mix(base_ + (counter_++) * 0x9e3779b97f4a7c15ull); }

    /// Unbiased uniform draw from [0, n).
    u64 below(u64 n) {
        if (n <= 1) return 0;
        const u64 threshold = (0 - n) % n;
        for (;;) {
            u64 x = next_u64();
            if (x >= threshold) return x % n;
        }
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    static u64 mix(u64 z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    u64 base_;
    u64 counter_ = 0;
};

}  // namespace wordmap
