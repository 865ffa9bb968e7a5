#pragma once

#include <cstdint>
#include <random>

namespace affine {

// mt19937_64; doubles take the top 53 bits, so streams match across platforms
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t next() { return g_(); }
    double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    // integer in [lo, hi]
    std::int64_t integer(std::int64_t lo, std::int64_t hi);
    double normal();  // Box-Muller on uniform()

private:
    std::mt19937_64 g_;
};

}  // namespace affine
