#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace treepack {

namespace detail {

/// SplitMix64 finalizer (Steele/Lea/Flood; public-domain constants). Used both
/// as the generator step and as the hash for deriving substream states.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Identifies one reproducible random stream: a master seed plus a stream id.
/// Equal (seed, stream) pairs always produce identical draws; distinct stream
/// ids under one seed give statistically independent streams. Experiments fan
/// out via child(): one level per index (cell, then sample).
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    /// Derives an independent substream. Children of distinct parents or
    /// distinct indices collide only with hash probability (~2^-64).
    [[nodiscard]] RngSeed child(std::uint64_t index) const {
        return RngSeed{detail::mix64(seed ^ detail::mix64(stream ^ 0xD1B54A32D192ED03ULL)), index};
    }

    friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// SplitMix64 generator. Chosen over std::mt19937 + std::uniform_* because the
/// standard does not pin distribution outputs across implementations; this is
/// pure integer arithmetic, so streams are reproducible everywhere.
class Rng {
public:
    explicit Rng(RngSeed s)
        : state_(detail::mix64(s.seed) ^ detail::mix64(s.stream ^ 0x9E6C63D0876A9A47ULL)) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound) by rejection (no modulo bias).
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Bernoulli(p) decided by integer comparison against a fixed-point
    /// threshold (see bernoulli_threshold); one draw per trial.
    bool next_bernoulli(std::uint64_t threshold) { return next_u64() < threshold; }

private:
    std::uint64_t state_;
};

/// Maps p in [0,1] to round(p * 2^64), computed exactly from the double's
/// mantissa (no long-double involved, so identical on every platform).
inline std::uint64_t bernoulli_threshold(double p) {
    if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("probability out of [0,1]");
    // p == 1 is not representable as a 64-bit threshold; callers special-case it.
    if (p == 1.0) return std::numeric_limits<std::uint64_t>::max();
    if (p == 0.0) return 0;
    int exp = 0;
    const double frac = std::frexp(p, &exp);  // p = frac * 2^exp, frac in [0.5, 1)
    auto mant = static_cast<std::uint64_t>(frac * 0x1.0p53);  // exact: 53-bit integer
    const int shift = exp + 64 - 53;  // threshold = mant * 2^shift
    if (shift >= 0) return mant << shift;  // p < 1 forces exp <= 0, so shift <= 11: no overflow
    if (shift <= -53) return 1;  // subnormal-scale p: keep a minimal acceptance band
    const int down = -shift;
    const std::uint64_t floor_part = mant >> down;
    const std::uint64_t rem = mant & ((std::uint64_t{1} << down) - 1);
    return floor_part + (rem >= (std::uint64_t{1} << (down - 1)) ? 1 : 0);
}

}  // namespace treepack
