#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "affine/fft.hpp"
#include "affine/sequences.hpp"

namespace affine {

KernelSeq::KernelSeq(int d, std::int64_t K, KernelKind kind) : d_(d), K_(K), kind_(kind)
{
    checkDim(d);
    if (K < 1)
        throw Error("kernel radius must be at least 1");
    std::int64_t w = 2 * K + 1;
    z_.assign(static_cast<size_t>(d == 1 ? w : w * w), VecValue{});
}

std::int64_t KernelSeq::offset(const Index& k) const
{
    for (int t = 0; t < d_; ++t)
        if (k[t] < -K_ || k[t] > K_)
            return -1;
    std::int64_t w = 2 * K_ + 1;
    return d_ == 1 ? k[0] + K_ : (k[0] + K_) * w + (k[1] + K_);
}

VecValue KernelSeq::at(const Index& k) const
{
    auto o = offset(k);
    return o < 0 ? VecValue{} : z_[static_cast<size_t>(o)];
}

void KernelSeq::set(const Index& k, const VecValue& v)
{
    auto o = offset(k);
    if (o < 0)
        throw Error("kernel index outside radius");
    z_[static_cast<size_t>(o)] = v;
}

double KernelSeq::antisymmetryDefect() const
{
    double m = 0.0;
    auto visit = [&](const Index& k) {
        auto a = at(k);
        auto b = at({-k[0], -k[1]});
        for (int t = 0; t < d_; ++t)
            m = std::max(m, std::abs(a[t] + b[t]));
    };
    for (std::int64_t a = -K_; a <= K_; ++a) {
        if (d_ == 1)
            visit({a, 0});
        else
            for (std::int64_t b = -K_; b <= K_; ++b)
                visit({a, b});
    }
    return m;
}

const char* kernelKindName(KernelKind k)
{
    switch (k) {
    case KernelKind::cutoffKernel:
        return "cutoff";
    case KernelKind::discretizedRiesz:
        return "discretized";
    case KernelKind::hilbertSequence:
        return "hilbert";
    }
    return "?";
}

double rieszConstant(int d)
{
    return std::tgamma(0.5 * (d + 1)) * std::pow(M_PI, -0.5 * (d + 1));
}

namespace {

std::int64_t nextPow2(std::int64_t x)
{
    std::int64_t n = 1;
    while (n < x)
        n <<= 1;
    return n;
}

// Fourier coefficients of zeta - g, g(xi) = -i (sign xi - 2 xi) on C0, whose
// coefficients are exactly 1/(pi k); zeta - g is smooth and periodic.
std::vector<double> smoothRemainder(const CutoffSpec& cut, std::int64_t N)
{
    std::vector<Complex> a(static_cast<size_t>(N));
    for (std::int64_t n = 0; n < N; ++n) {
        std::int64_t l = n < N / 2 ? n : n - N;
        double xi = static_cast<double>(l) / static_cast<double>(N);
        double s = xi > 0 ? 1.0 : (xi < 0 ? -1.0 : 0.0);
        a[n] = Complex(0.0, -s * (cut.profile(xi) - 1.0 + 2.0 * std::abs(xi)));
    }
    dft(a, 1, &N, false);
    std::vector<double> c(static_cast<size_t>(N));
    for (std::int64_t n = 0; n < N; ++n)
        c[n] = a[n].real() / static_cast<double>(N);
    return c;
}

KernelSeq kernel1d(const CutoffSpec& cut, const Lattice& lat, std::int64_t K)
{
    std::int64_t N = std::max<std::int64_t>(1024, nextPow2(8 * K));
    auto c1 = smoothRemainder(cut, N);
    auto c2 = smoothRemainder(cut, 2 * N);
    auto idx = [](std::int64_t k, std::int64_t n) { return static_cast<size_t>(((k % n) + n) % n); };
    double gap = 0.0;
    for (std::int64_t k = -K; k <= K; ++k)
        gap = std::max(gap, std::abs(c1[idx(k, N)] - c2[idx(k, 2 * N)]));
    if (gap > 1e-8)
        throw Error("discreteRieszKernel: refinement levels disagree beyond 1e-8");
    double sb = lat.b(0) > 0 ? 1.0 : -1.0;
    KernelSeq z(1, K, KernelKind::cutoffKernel);
    double raw = 0.0;
    for (std::int64_t k = 1; k <= K; ++k) {
        double zp = 1.0 / (M_PI * k) + c2[idx(k, 2 * N)];
        double zm = -1.0 / (M_PI * k) + c2[idx(-k, 2 * N)];
        raw = std::max(raw, std::abs(zp + zm));
        double v = sb * 0.5 * (zp - zm);
        z.set({k, 0}, {Complex(v, 0.0), 0.0});
        z.set({-k, 0}, {Complex(-v, 0.0), 0.0});
    }
    z.cutoff = cut;
    z.b = {lat.b(0)};
    z.resolution = 2 * N;
    z.refinementGap = std::max(gap, raw);
    return z;
}

struct PolarRule {
    std::vector<double> wr;       // weight * r * |det b|
    std::vector<Point> omega;
    std::vector<double> r;
};

// nodes for int over eta in R^2 of F(eta) d eta, F supported where nu(eta b) != 0
PolarRule polarRule(const CutoffSpec& cut, const Lattice& lat, int ntheta, int nsub)
{
    static const int q = 16;
    std::vector<double> gx(q), gw(q);
    for (int i = 0; i < q; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= q; ++k) {
                double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (z * p1 - p0) / (z * z - 1.0);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        gx[i] = 0.5 * (1.0 - z);
        gw[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    PolarRule rule;
    double det = lat.absDet();
    double dth = 2.0 * M_PI / ntheta;
    for (int it = 0; it < ntheta; ++it) {
        double th = (it + 0.5) * dth;
        Point w{std::cos(th), std::sin(th)};
        std::vector<double> br{0.0};
        double rmax = INFINITY;
        for (int t = 0; t < 2; ++t) {
            double s = std::abs(w[t] * lat.b(t));
            if (s < 1e-300)
                continue;
            rmax = std::min(rmax, cut.outer / s);
            br.push_back(cut.inner / s);
            br.push_back(cut.outer / s);
        }
        std::sort(br.begin(), br.end());
        br.erase(std::remove_if(br.begin(), br.end(), [&](double x) { return x > rmax; }), br.end());
        if (br.back() < rmax)
            br.push_back(rmax);
        for (size_t p = 0; p + 1 < br.size(); ++p) {
            double a = br[p], len = (br[p + 1] - br[p]) / nsub;
            if (len <= 0)
                continue;
            for (int s = 0; s < nsub; ++s)
                for (int i = 0; i < q; ++i) {
                    double r = a + (s + gx[i]) * len;
                    double nu = cut({r * w[0] * lat.b(0), r * w[1] * lat.b(1)}, 2);
                    if (nu == 0.0)
                        continue;
                    rule.r.push_back(r);
                    rule.omega.push_back(w);
                    rule.wr.push_back(det * dth * gw[i] * len * r * nu);
                }
        }
    }
    return rule;
}

std::vector<VecValue> polarCoefficients(const PolarRule& rule, const Lattice& lat, std::int64_t K)
{
    std::int64_t w = 2 * K + 1;
    std::vector<VecValue> out(static_cast<size_t>(w * w));
    std::vector<Complex> p0(static_cast<size_t>(w)), p1(static_cast<size_t>(w));
    for (size_t n = 0; n < rule.r.size(); ++n) {
        double r = rule.r[n];
        const Point& om = rule.omega[n];
        // e^{2 pi i r omega . (b k)} = u0^{k0} u1^{k1}
        Complex u0 = std::polar(1.0, 2.0 * M_PI * r * om[0] * lat.b(0));
        Complex u1 = std::polar(1.0, 2.0 * M_PI * r * om[1] * lat.b(1));
        Complex s0 = std::pow(u0, -static_cast<double>(K));
        Complex s1 = std::pow(u1, -static_cast<double>(K));
        for (std::int64_t k = 0; k < w; ++k) {
            p0[k] = s0;
            p1[k] = s1;
            s0 *= u0;
            s1 *= u1;
        }
        double c0 = rule.wr[n] * om[0], c1 = rule.wr[n] * om[1];
        for (std::int64_t a = 0; a < w; ++a)
            for (std::int64_t b = 0; b < w; ++b) {
                // -i omega e^{i x}: real part is omega sin x
                double s = (p0[a] * p1[b]).imag();
                auto& o = out[static_cast<size_t>(a * w + b)];
                o[0] += c0 * s;
                o[1] += c1 * s;
            }
    }
    return out;
}

KernelSeq kernel2d(const CutoffSpec& cut, const Lattice& lat, std::int64_t K)
{
    if (K > 64)
        throw Error("discreteRieszKernel: d = 2 quadrature supports K <= 64");
    int nth = 256, nsub = 4;
    auto a = polarCoefficients(polarRule(cut, lat, nth, nsub), lat, K);
    auto b = polarCoefficients(polarRule(cut, lat, 2 * nth, 2 * nsub), lat, K);
    double gap = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        for (int t = 0; t < 2; ++t)
            gap = std::max(gap, std::abs(a[i][t] - b[i][t]));
    if (gap > 1e-8)
        throw Error("discreteRieszKernel: refinement levels disagree beyond 1e-8");
    KernelSeq z(2, K, KernelKind::cutoffKernel);
    std::int64_t w = 2 * K + 1;
    double raw = 0.0;
    for (std::int64_t k0 = -K; k0 <= K; ++k0)
        for (std::int64_t k1 = -K; k1 <= K; ++k1) {
            auto& v = b[static_cast<size_t>((k0 + K) * w + (k1 + K))];
            auto& m = b[static_cast<size_t>((-k0 + K) * w + (-k1 + K))];
            VecValue e;
            for (int t = 0; t < 2; ++t) {
                raw = std::max(raw, std::abs(v[t] + m[t]));
                e[t] = 0.5 * (v[t] - m[t]);
            }
            z.set({k0, k1}, e);
        }
    z.set({0, 0}, VecValue{});
    z.cutoff = cut;
    z.b = {lat.b(0), lat.b(1)};
    z.resolution = 2 * nth;
    z.refinementGap = std::max(gap, raw);
    return z;
}

}  // namespace

KernelSeq discreteRieszKernel(const CutoffSpec& cut, const Lattice& lat, std::int64_t K)
{
    if (K < 1)
        throw Error("discreteRieszKernel: K must be at least 1");
    return lat.dim() == 1 ? kernel1d(cut, lat, K) : kernel2d(cut, lat, K);
}

KernelSeq discretizedRieszKernel(const Lattice& lat, std::int64_t K)
{
    int d = lat.dim();
    KernelSeq z(d, K, KernelKind::discretizedRiesz);
    double C = rieszConstant(d);
    auto put = [&](const Index& k) {
        if (k[0] == 0 && (d == 1 || k[1] == 0))
            return;
        Point x{lat.b(0) * static_cast<double>(k[0]), d > 1 ? lat.b(1) * static_cast<double>(k[1]) : 0.0};
        double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
        double s = C / std::pow(r, d + 1);
        z.set(k, {Complex(s * x[0], 0.0), Complex(s * x[1], 0.0)});
    };
    for (std::int64_t a = -K; a <= K; ++a) {
        if (d == 1)
            put({a, 0});
        else
            for (std::int64_t b = -K; b <= K; ++b)
                put({a, b});
    }
    z.b.assign(d, 1.0);
    for (int t = 0; t < d; ++t)
        z.b[t] = lat.b(t);
    return z;
}

KernelSeq hilbertSequence(std::int64_t K)
{
    KernelSeq z(1, K, KernelKind::hilbertSequence);
    for (std::int64_t k = 1; k <= K; ++k) {
        double v = 1.0 / (M_PI * static_cast<double>(k));
        z.set({k, 0}, {Complex(v, 0.0), 0.0});
        z.set({-k, 0}, {Complex(-v, 0.0), 0.0});
    }
    z.b = {1.0};
    return z;
}

Complex kernelSymbol(const KernelSeq& z, const Point& xi, int t)
{
    Complex s = 0.0;
    std::int64_t K = z.K();
    if (z.dim() == 1) {
        for (std::int64_t k = -K; k <= K; ++k)
            s += z.at({k, 0})[t] * std::polar(1.0, -2.0 * M_PI * xi[0] * static_cast<double>(k));
        return s;
    }
    for (std::int64_t a = -K; a <= K; ++a)
        for (std::int64_t b = -K; b <= K; ++b)
            s += z.at({a, b})[t] *
                 std::polar(1.0, -2.0 * M_PI * (xi[0] * static_cast<double>(a) + xi[1] * static_cast<double>(b)));
    return s;
}

void writeKernelCsv(const KernelSeq& z, std::ostream& os)
{
    int d = z.dim();
    char buf[96];
    os << "# kind=" << kernelKindName(z.kind()) << "\n";
    std::snprintf(buf, sizeof buf, "# nu_inner=%.17g nu_outer=%.17g\n", z.cutoff.inner, z.cutoff.outer);
    os << buf << "# b=";
    for (size_t t = 0; t < z.b.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%s%.17g", t ? "," : "", z.b[t]);
        os << buf;
    }
    os << "\n# K=" << z.K() << "\n# resolution=" << z.resolution << "\n";
    os << (d == 1 ? "k0" : "k0,k1");
    for (int t = 0; t < d; ++t)
        os << ",re" << t << ",im" << t;
    os << "\n";
    auto row = [&](const Index& k) {
        os << k[0];
        if (d > 1)
            os << "," << k[1];
        auto v = z.at(k);
        for (int t = 0; t < d; ++t) {
            std::snprintf(buf, sizeof buf, ",%.17g,%.17g", v[t].real(), v[t].imag());
            os << buf;
        }
        os << "\n";
    };
    for (std::int64_t a = -z.K(); a <= z.K(); ++a) {
        if (d == 1)
            row({a, 0});
        else
            for (std::int64_t b = -z.K(); b <= z.K(); ++b)
                row({a, b});
    }
}

}  // namespace affine
