// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace bmx {

/// SplitMix64 finalizer. Counter-indexed use gives a deterministic,
/// platform-independent pseudorandom function.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic RNG wrapper. mt19937_64 output is pinned by the standard,
/// and bounded draws use masked rejection, so sequences are identical across
/// platforms and toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Unbiased uniform draw from [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        if ((bound & (bound - 1)) == 0) return gen_() & (bound - 1);
        if (bound > (std::uint64_t{1} << 63)) {
            for (;;) {
                std::uint64_t v = gen_();
                if (v < bound) return v;
            }
        }
        const std::uint64_t mask = std::bit_ceil(bound) - 1;
        for (;;) {
            std::uint64_t v = gen_() & mask;
            if (v < bound) return v;
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace bmx
