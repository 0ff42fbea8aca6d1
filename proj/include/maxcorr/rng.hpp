#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

// Self-contained RNG so that seeded runs are bit-reproducible across
// standard libraries. xoshiro256++ with splitmix64 seeding; normal deviates
// via the polar method.

namespace maxcorr {

struct splitmix64 {
    std::uint64_t state;
    explicit splitmix64(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// Derive an independent child seed from a master seed and a stream counter.
// Replicate t of a run seeded with s always uses seed_stream(s, t), so
// results do not depend on scheduling order.
inline std::uint64_t seed_stream(std::uint64_t master, std::uint64_t stream) {
    splitmix64 sm(master ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    sm.next();
    return sm.next();
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        splitmix64 sm(seed);
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
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

    // uniform in [0,1) with 53 random bits
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, bound), bound >= 1 (Lemire rejection)
    std::uint64_t uniform_below(std::uint64_t bound) {
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t t = -bound % bound;
            while (lo < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Fisher-Yates permutation of 1..n
    void permutation(std::int32_t* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::int32_t>(i + 1);
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = uniform_below(i);
            std::swap(out[i - 1], out[j]);
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace maxcorr
