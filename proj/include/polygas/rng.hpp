#pragma once

#include <cmath>
#include <cstdint>

namespace polygas {

// 64-bit finalizer (SplitMix64 / Stafford mix13).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Counter-based splittable generator. A draw is a pure function of
// (master seed, stream index, counter), so independent streams can be
// handed to parallel workers and replayed bit-for-bit.
class SplitRng {
public:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    explicit SplitRng(std::uint64_t master_seed, std::uint64_t stream = 0)
        : key_(mix64(master_seed ^ mix64((stream + 1) * golden))) {}

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * golden); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (second value cached).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace polygas
