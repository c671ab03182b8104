#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace tda {

// SplitMix64 finalizer. Used both as the generator step and to derive
// substream keys, so every stream is a pure function of (seed, path).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic splittable generator. Substreams keyed by (seed, path...)
// are independent of evaluation order, which keeps parallel generation
// reproducible.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t key) : state_(key) {}

    static SplitRng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t key = mix64(seed);
        for (std::uint64_t part : path) key = mix64(key ^ mix64(part));
        return SplitRng(key);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random mantissa bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Mean-zero Gaussian via Box-Muller; the spare half of each pair is
    // cached so consecutive draws stay cheap and deterministic.
    double gaussian(double sigma) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_ * sigma;
        }
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a) * sigma;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tda
