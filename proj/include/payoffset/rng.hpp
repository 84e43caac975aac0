#pragma once

// Seedable, splittable 64-bit generator (xoshiro256** seeded through
// splitmix64). All distributions are implemented here rather than through
// <random> so that streams are bit-identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <vector>

namespace payoffset {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for sub-stream `stream` of `base`. Distinct streams are decorrelated.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
    uint64_t s = base ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    splitmix64(s);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t s = seed;
        for (auto& w : s_) w = splitmix64(s);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by rejection (no modulo bias).
    uint64_t below(uint64_t bound) {
        const uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % bound;
    }

    // Standard normal via Box-Muller (one value per call, no caching).
    double normal() {
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Inverse-CDF draw. `cdf` is nondecreasing with cdf.back() == 1; returns
    // the first index whose cumulative value exceeds u, skipping zero-width bins.
    size_t categorical(const std::vector<double>& cdf) {
        const double u = uniform();
        for (size_t i = 0; i < cdf.size(); ++i)
            if (u < cdf[i]) return i;
        // u can only land here through rounding of the last cumulative sum
        for (size_t i = cdf.size(); i-- > 0;)
            if (i == 0 || cdf[i] > cdf[i - 1]) return i;
        return 0;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace payoffset
