// Counter-based random streams.
//
// Draw d of a run seeded with s reads the SplitMix64 sequence whose start
// state is mix64(mix64(s) ^ d). mix64 is the SplitMix64 finalizer, a
// bijection on 64-bit words, so distinct draws start from distinct states
// and (seed, draw) -> stream is a pure function. Monte Carlo workers can
// therefore evaluate draws in any order and on any thread.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ramsq {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class DrawStream {
public:
    DrawStream(std::uint64_t seed, std::uint64_t draw_index) noexcept
        : state_(mix64(mix64(seed) ^ draw_index)) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform angle on [0, 2 pi).
    double phase() noexcept {
        const double angle = 2.0 * std::numbers::pi * uniform();
        return angle < 2.0 * std::numbers::pi ? angle : 0.0;
    }

    /// Exponential variate with unit mean.
    double exponential() noexcept { return -std::log1p(-uniform()); }

private:
    std::uint64_t state_;
};

}  // namespace ramsq
