#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace o2o {

// All randomness flows through this generator (xoshiro256** seeded via
// splitmix64). std::mt19937 + <random> distributions are avoided on
// purpose: their outputs differ across standard libraries, and runs must
// be bit-reproducible everywhere.
class Rng {
public:
    Rng() : Rng(0) {}

    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, bound) without modulo bias (rejection sampling).
    std::uint64_t bounded(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::bounded: bound 0");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    int uniform_int(int lo, int hi) { // inclusive range
        return lo + static_cast<int>(
                        bounded(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Knuth's product-of-uniforms method; fine for the per-tick rates used
    // here (lambda well below ~100).
    int poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        const double limit = std::exp(-lambda);
        double product = uniform01();
        int count = 0;
        while (product > limit) {
            product *= uniform01();
            ++count;
        }
        return count;
    }

    std::array<std::uint64_t, 4> state() const { return state_; }
    void restore(const std::array<std::uint64_t, 4>& s) { state_ = s; }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

// Derive an independent stream for one subsystem ("orders", "movement",
// ...) from the master seed, so order generation stays identical across
// runs that only differ in decision behavior.
inline Rng derive_stream(std::uint64_t master_seed, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t x = master_seed ^ h;
    return Rng(Rng::splitmix64(x));
}

} // namespace o2o
