#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace restartive {

// SplitMix64, used to expand a 64-bit seed into generator state.
// Reference recurrence from Steele, Lea and Flood's java.util.SplittableRandom.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic PRNG: xoshiro256++ seeded via SplitMix64, plus a Box-Muller
// Gaussian sampler that caches its second draw.  The exact recurrences are
// pinned so any implementation with the same seed reproduces the stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
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

    // Uniform on (0,1); the +0.5 offset keeps 0 out of the range.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_gaussian(double mean = 0.0, double stddev = 1.0) {
        if (stddev < 0.0) throw std::invalid_argument("next_gaussian: negative stddev");
        if (stddev == 0.0) return mean;
        return mean + stddev * next_standard_normal();
    }

    // Fisher-Yates with indices drawn from the integer stream, so shuffles are
    // reproducible across standard libraries (std::shuffle is not).
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_u64() % i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    double next_standard_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_normal_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        cached_normal_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool have_cached_ = false;
};

} // namespace restartive
