#pragma once
#include <cmath>
#include <cstdint>
#include <limits>

// Deterministic RNG plumbing.  Every consumer derives its own stream from
// (seed, tags...) with splitmix64 mixing, so replicate results never depend
// on scheduling or on how many draws a sibling consumed.

namespace levyopt {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Order-sensitive mix of up to four 64-bit words into a stream seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0x6a09e667f3bcc909ULL,
                              std::uint64_t c = 0xbb67ae8584caa73bULL,
                              std::uint64_t d = 0x3c6ef372fe94f82bULL) {
    std::uint64_t s = a;
    std::uint64_t out = splitmix64_next(s);
    s ^= b + 0x9e3779b97f4a7c15ULL + (out << 6) + (out >> 2);
    out = splitmix64_next(s);
    s ^= c + 0x9e3779b97f4a7c15ULL + (out << 6) + (out >> 2);
    out = splitmix64_next(s);
    s ^= d + 0x9e3779b97f4a7c15ULL + (out << 6) + (out >> 2);
    return splitmix64_next(s);
}

// xoshiro256++ with splitmix-expanded seeding.
class Rng {
  public:
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    explicit Rng(std::uint64_t seed = 1) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
    }

    result_type operator()() {
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

    // uniform on (0,1): 53-bit mantissa, never exactly 0
    double uniform01() {
        const std::uint64_t u = (*this)() >> 11;
        return (static_cast<double>(u) + 0.5) * 0x1.0p-53;
    }

    double exponential() { return -std::log(uniform01()); }

    // polar Box-Muller with one cached variate
    double normal() {
        if (have_cache_) {
            have_cache_ = false;
            return cache_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cache_ = v * f;
        have_cache_ = true;
        return u * f;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
    double cache_ = 0.0;
    bool have_cache_ = false;
};

} // namespace levyopt
