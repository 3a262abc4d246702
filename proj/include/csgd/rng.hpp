#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "csgd/types.hpp"

namespace csgd {

/// splitmix64. State advances by the 64-bit golden ratio; output runs the
/// standard finalizer. All randomness in the library flows through this
/// generator so traces reproduce bit-for-bit from a seed (see README for the
/// exact transition).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, m). Plain modulo; the bias is ~m/2^64.
    std::size_t uniform_index(std::size_t m) {
        return static_cast<std::size_t>(next() % static_cast<std::uint64_t>(m));
    }

    /// Standard normal via Box-Muller (pairs generated, second value cached).
    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        const double t = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(t);
        has_cached_ = true;
        return r * std::cos(t);
    }

    /// Standard complex normal CN(0,1): Re and Im are N(0, 1/2).
    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex(re, im) * std::numbers::sqrt2 * 0.5;
    }

private:
    std::uint64_t state_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

/// Derives the seed for an independent stream (Monte Carlo trial k etc.):
/// one splitmix64 output step on seed offset by (stream+1) golden ratios.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
    return g.next();
}

} // namespace csgd
