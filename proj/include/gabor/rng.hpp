#pragma once

#include <gabor/types.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace gabor {

/// Splittable counter-based PRNG built on the SplitMix64 finalizer.
///
/// next() advances the state by the 64-bit golden-ratio constant and returns
/// mix64 of it (the classic SplitMix64 step). substream(id) derives an
/// independent stream as mix64(state + GOLDEN * (id + 1)); estimators key
/// their per-trial streams as root.substream(trial), which makes every result
/// a pure function of (seed, trial index) regardless of worker count.
/// Seed 0 is valid.
class SplitStream {
public:
    explicit SplitStream(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    SplitStream substream(std::uint64_t id) const {
        return SplitStream(mix64(state_ + kGolden * (id + 1)));
    }

    std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform in [0, 1) with 53 random mantissa bits.
    Real next_real() { return static_cast<Real>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound) by rejection; bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    int next_sign() { return (next() >> 63) ? 1 : -1; }

    /// Uniform on the complex unit circle.
    Complex next_unit() {
        const Real theta = 2.0 * std::numbers::pi * next_real();
        return Complex(std::cos(theta), std::sin(theta));
    }

    /// Standard normal via Box-Muller; consumes exactly two uniforms per call
    /// so draw sequences stay aligned across code paths.
    Real next_gaussian() {
        const Real u1 = next_real();
        const Real u2 = next_real();
        const Real r = std::sqrt(-2.0 * std::log1p(-u1));
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// First s entries of a Fisher-Yates shuffle of [0, size): a uniform
    /// size-s subset, in draw order. Prefixes are nested across s for a fixed
    /// stream state, which the nested-support RIP sampling relies on.
    std::vector<Index> sample_without_replacement(Index size, Index s) {
        std::vector<Index> pool(static_cast<std::size_t>(size));
        for (Index i = 0; i < size; ++i) pool[static_cast<std::size_t>(i)] = i;
        std::vector<Index> out(static_cast<std::size_t>(s));
        for (Index i = 0; i < s; ++i) {
            const Index j = i + static_cast<Index>(next_below(static_cast<std::uint64_t>(size - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
        }
        return out;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t state_;
};

}  // namespace gabor
