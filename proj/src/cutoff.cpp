#include "affine/cutoff.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "affine/fft.hpp"

namespace affine {

double smoothStep(double t)
{
    if (t <= 0.0)
        return 0.0;
    if (t >= 1.0)
        return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

CutoffSpec::CutoffSpec(double in, double out) : inner(in), outer(out)
{
    if (!(0.0 < inner && inner < outer && outer <= 0.5))
        throw Error("cutoff: need 0 < inner < outer <= 1/2");
}

double CutoffSpec::profile(double u) const
{
    u = std::abs(u);
    if (u <= inner)
        return 1.0;
    if (u >= outer)
        return 0.0;
    return smoothStep((outer - u) / (outer - inner));
}

double CutoffSpec::operator()(const Point& xi, int d) const
{
    double v = 1.0;
    for (int t = 0; t < d; ++t)
        v *= profile(xi[t]);
    return v;
}

double cutoffInverseL1(const CutoffSpec& cut, int d)
{
    // the 2-d cut-off is a tensor product, so its L1 norm is the square of the 1-d one
    const double L = 2048.0;
    const std::int64_t n = 1 << 18;
    std::vector<std::complex<double>> a(n);
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t l = i < n / 2 ? i : i - n;
        a[i] = cut.profile(static_cast<double>(l) / L);
    }
    dft(a, 1, &n, false);
    double h = L / static_cast<double>(n);
    double s = 0.0;
    for (auto z : a)
        s += std::abs(z) / L;
    s *= h;
    return d == 1 ? s : s * s;
}

}  // namespace affine
