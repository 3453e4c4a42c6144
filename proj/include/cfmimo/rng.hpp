// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#ifndef CFMIMO_RNG_HPP
#define CFMIMO_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace cfmimo {

// splitmix64 step (Vigna). Used for seed expansion and key mixing so that
// substream derivation is a pure function of the input words.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Collapses a list of words into one 64-bit key. Order-sensitive.
inline std::uint64_t mix_words(std::initializer_list<std::uint64_t> words) {
    std::uint64_t s = 0x6a09e667f3bcc908ULL;
    for (std::uint64_t w : words) {
        s ^= splitmix64(w);
        (void)splitmix64(s);
        s += 0x9e3779b97f4a7c15ULL ^ w;
        s = splitmix64(s);
    }
    return s;
}

// Purpose tags keep the random streams of one trial independent of each
// other, so adding draws to one purpose never shifts another.
enum class StreamPurpose : std::uint64_t {
    geometry = 0x67656f6dULL,
    shadowing = 0x73686164ULL,
    channel = 0x6368616eULL,
    data = 0x64617461ULL,
    noise = 0x6e6f6973ULL,
};

/// xoshiro256++ engine with Box-Muller normal draws. Bit-reproducible for a
/// given seed on any platform, unlike the std:: distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n) {
        // Lemire-style rejection to avoid modulo bias.
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Standard normal via Box-Muller; caches the spare value.
    double standard_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Circularly-symmetric complex normal CN(0, variance).
    std::complex<double> complex_normal(double variance = 1.0) {
        const double scale = std::sqrt(variance * 0.5);
        return {scale * standard_normal(), scale * standard_normal()};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4]{};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Derives the key of a per-trial substream. Geometry-scoped streams pass
// realization = 0 so all realizations of a drop share them.
inline std::uint64_t substream_key(std::uint64_t master_seed, std::uint64_t drop,
                                   std::uint64_t realization, StreamPurpose purpose) {
    return mix_words({master_seed, drop, realization, static_cast<std::uint64_t>(purpose)});
}

inline Rng make_stream(std::uint64_t master_seed, std::uint64_t drop, std::uint64_t realization,
                       StreamPurpose purpose) {
    return Rng(substream_key(master_seed, drop, realization, purpose));
}

}  // namespace cfmimo

#endif
