#pragma once

#include <cstdint>

namespace resilnet {

// 64-bit finalizer (splitmix64's mixing function). Bijective, so distinct
// inputs always produce distinct stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d49bb133111aebull;
    z ^= z >> 31;
    return z;
}

// Derive the seed of an independent child stream from a master seed and a
// replicate (or purpose) index. Counter-based: stream r can be constructed
// without generating streams 0..r-1, which is what makes replicates
// embarrassingly parallel yet bitwise reproducible.
constexpr std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed + 0x9e3779b97f4a7c15ull * (index + 1));
}

// splitmix64: a tiny, fast, seedable generator with a 2^64 period. One
// instance per replicate; all draws within a run come from one instance in a
// documented, fixed order, which defines the bit-exact replay contract.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : state_(mix64(seed)) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d49bb133111aebull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1): top 53 bits scaled by 2^-53. Never returns 1.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be >= 1. Uses the double path so the
    // draw count per call is always exactly one (keeps replay simple).
    std::uint64_t uniform_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
    }

    bool operator==(const CounterRng&) const = default;

private:
    std::uint64_t state_;
};

// Integer power by repeated squaring. Unlike std::pow this is exactly
// reproducible across libm implementations, which the bitwise replay
// contract requires for the (1 - tau_eff)^n factor.
constexpr double ipow(double base, int exponent) {
    double result = 1.0;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

} // namespace resilnet
