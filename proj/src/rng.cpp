#include "affine/rng.hpp"

#include <cmath>

namespace affine {

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi)
{
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(g_() % span);
}

double Rng::normal()
{
    double u = 1.0 - uniform();  // (0, 1]
    double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

}  // namespace affine
