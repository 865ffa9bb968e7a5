#include "affine/synthesizers.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "affine/fft.hpp"

namespace affine {

NormParams::NormParams(double pp) : p(pp)
{
    if (!(p >= 1.0))
        throw Error("p out of range");
    if (p == 1.0)
        q = INFINITY;
    else if (std::isinf(p))
        q = 1.0;
    else
        q = p / (p - 1.0);
}

namespace {

constexpr double kGaussRadius = 3.5;    // in units of the width; tail mass ~1e-17
constexpr double kHatRadius = 9.0;
constexpr double kBandRadius = 256.0;   // in units of b; tail mass ~4e-13

struct GaussLegendre {
    std::vector<double> x, w;  // on [0,1]
    explicit GaussLegendre(int n)
    {
        x.resize(n);
        w.resize(n);
        for (int i = 0; i < n; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16)
                    break;
            }
            x[i] = 0.5 * (1.0 - z);
            w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre& gl24()
{
    static const GaussLegendre g(24);
    return g;
}

const GaussLegendre& gl8()
{
    static const GaussLegendre g(8);
    return g;
}

double hermiteScaledGaussDerivative(double u, double w, int r)
{
    // d^r/du^r of w^{-1} exp(-a u^2), a = pi / w^2
    double a = M_PI / (w * w);
    double sa = std::sqrt(a);
    double x = sa * u;
    double h0 = 1.0, h1 = 2.0 * x;
    double hr = r == 0 ? h0 : h1;
    for (int k = 1; k < r; ++k) {
        double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
        hr = h2;
    }
    return std::pow(-sa, r) * hr * std::exp(-a * u * u) / w;
}

double nuCheck(const CutoffSpec& cut, double y)
{
    // 2 int_0^outer nu(xi) cos(2 pi xi y) d xi
    double flat = y == 0.0 ? 2.0 * cut.inner : std::sin(2.0 * M_PI * cut.inner * y) / (M_PI * y);
    const auto& g = gl8();
    const int panels = 64;
    double len = (cut.outer - cut.inner) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        double a = cut.inner + p * len;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double xi = a + len * g.x[i];
            s += g.w[i] * len * cut.profile(xi) * std::cos(2.0 * M_PI * xi * y);
        }
    }
    return flat + 2.0 * s;
}

}  // namespace

double cardinalBSpline(int n, double x)
{
    if (n < 1 || x < 0.0 || x >= n)
        return 0.0;
    std::vector<double> N(n);
    for (int i = 0; i < n; ++i) {
        double u = x - i;
        N[i] = (u >= 0.0 && u < 1.0) ? 1.0 : 0.0;
    }
    for (int k = 2; k <= n; ++k)
        for (int i = 0; i + k <= n; ++i) {
            double u = x - i;
            N[i] = (u * N[i] + (k - u) * N[i + 1]) / (k - 1);
        }
    return N[0];
}

double cardinalBSplineDerivative(int n, double x, int r)
{
    if (r == 0)
        return cardinalBSpline(n, x);
    if (r >= n)
        throw Error("B-spline derivative of order >= n is not a function");
    double s = 0.0, c = 1.0;
    for (int i = 0; i <= r; ++i) {
        s += c * cardinalBSpline(n - r, x - i);
        c = -c * (r - i) / (i + 1);
    }
    return s;
}

Synthesizer Synthesizer::indicator(const Lattice& lat, bool normalized)
{
    Synthesizer s(Kind::indicator, lat.dim());
    s.normalized_ = normalized;
    for (int t = 0; t < lat.dim(); ++t)
        s.cell_[t] = lat.b(t);
    return s;
}

Synthesizer Synthesizer::tent(int d)
{
    checkDim(d);
    return Synthesizer(Kind::tent, d);
}

Synthesizer Synthesizer::gaussian(int d, double width)
{
    checkDim(d);
    if (!(width > 0.0))
        throw Error("gaussian: width must be positive");
    Synthesizer s(Kind::gaussian, d);
    s.width_ = width;
    return s;
}

Synthesizer Synthesizer::mexicanHat()
{
    return Synthesizer(Kind::mexicanHat, 1);
}

Synthesizer Synthesizer::bspline(int m, const Synthesizer& inner, const Lattice& lat)
{
    return bspline(MultiIndex{m, lat.dim() > 1 ? m : 0}, inner, lat);
}

Synthesizer Synthesizer::bspline(const MultiIndex& orders, const Synthesizer& inner, const Lattice& lat)
{
    int d = lat.dim();
    if (inner.dim() != d)
        throw Error("bspline: inner dimension mismatch");
    if (inner.kind() == Kind::bspline || inner.kind() == Kind::bandlimited ||
        inner.kind() == Kind::mexicanHat)
        throw Error("bspline: inner must be indicator, tent or gaussian");
    Synthesizer s(Kind::bspline, d);
    for (int t = 0; t < d; ++t) {
        if (orders[t] < 0)
            throw Error("bspline: negative order");
        if (lat.b(t) <= 0.0)
            throw Error("bspline: cell must be positive");
        if (inner.kind() == Kind::indicator && inner.cell(t) != lat.b(t))
            throw Error("bspline: inner indicator must use the same cell");
        if (inner.kind() == Kind::tent && lat.b(t) != 1.0 && orders[t] > 0)
            throw Error("bspline: tent inner needs b = 1");
        s.orders_[t] = orders[t];
        s.cell_[t] = lat.b(t);
    }
    s.inner_ = std::make_shared<const Synthesizer>(inner);
    return s;
}

Synthesizer Synthesizer::bandlimited(const CutoffSpec& cut, const Lattice& lat)
{
    Synthesizer s(Kind::bandlimited, lat.dim());
    s.cut_ = cut;
    for (int t = 0; t < lat.dim(); ++t)
        s.cell_[t] = lat.b(t);
    return s;
}

bool Synthesizer::compact() const
{
    switch (kind_) {
    case Kind::indicator:
    case Kind::tent:
        return true;
    case Kind::bspline:
        return inner_->compact();
    default:
        return false;
    }
}

const Synthesizer& Synthesizer::inner() const
{
    if (!inner_)
        throw Error("synthesizer has no inner factor");
    return *inner_;
}

std::string Synthesizer::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::indicator:
        os << (normalized_ ? "indicator:normalized" : "indicator");
        break;
    case Kind::tent:
        os << "tent";
        break;
    case Kind::gaussian:
        os << "gaussian:w=" << width_;
        break;
    case Kind::mexicanHat:
        os << "mexican-hat";
        break;
    case Kind::bspline:
        os << "bspline:m=" << orders_[0];
        if (d_ > 1 && orders_[1] != orders_[0])
            os << "," << orders_[1];
        os << ":inner=" << inner_->describe();
        break;
    case Kind::bandlimited:
        os << "bandlimited:inner=" << cut_.inner << ":outer=" << cut_.outer;
        break;
    }
    return os.str();
}

double Synthesizer::bsplineAxis(int t, double u, int r) const
{
    int o = orders_[t];
    double b = cell_[t];
    const Synthesizer& in = *inner_;
    if (o == 0)
        return in.axisDerivative(t, u, r);
    switch (in.kind()) {
    case Kind::indicator: {
        if (r > o)
            throw Error("bspline derivative order exceeds smoothness");
        double s = in.normalized() ? 1.0 / b : 1.0;
        return s * std::pow(b, -r) * cardinalBSplineDerivative(o + 1, u / b, r);
    }
    case Kind::tent:
        if (r > o + 1)
            throw Error("bspline derivative order exceeds smoothness");
        return cardinalBSplineDerivative(o + 2, u, r);
    case Kind::gaussian: {
        // int_0^o N_o(v) g^{(r)}(u - b v) dv, piecewise polynomial N_o
        const auto& g = gl24();
        double R = kGaussRadius * in.width() + 1.0;
        double s = 0.0;
        for (int i = 0; i < o; ++i) {
            double near = std::min(std::abs(u - b * i), std::abs(u - b * (i + 1)));
            if (near > R && (u - b * i) * (u - b * (i + 1)) > 0)
                continue;
            for (size_t q = 0; q < g.x.size(); ++q) {
                double v = i + g.x[q];
                s += g.w[q] * cardinalBSpline(o, v) * hermiteScaledGaussDerivative(u - b * v, in.width(), r);
            }
        }
        return s;
    }
    default:
        throw Error("bspline: unsupported inner");
    }
}

double Synthesizer::axis(int t, double u) const
{
    switch (kind_) {
    case Kind::indicator: {
        double c = cell_[t];
        double lo = std::min(0.0, c), hi = std::max(0.0, c);
        if (u < lo || u >= hi)
            return 0.0;
        return normalized_ ? 1.0 / std::abs(c) : 1.0;
    }
    case Kind::tent:
        return cardinalBSpline(2, u);
    case Kind::gaussian:
        return std::exp(-M_PI * u * u / (width_ * width_)) / width_;
    case Kind::mexicanHat:
        return (1.0 - u * u) * std::exp(-0.5 * u * u);
    case Kind::bspline:
        return bsplineAxis(t, u, 0);
    case Kind::bandlimited: {
        double b = std::abs(cell_[t]);
        return nuCheck(cut_, u / b) / b;
    }
    }
    return 0.0;
}

double Synthesizer::axisDerivative(int t, double u, int r) const
{
    if (r == 0)
        return axis(t, u);
    switch (kind_) {
    case Kind::tent:
        return cardinalBSplineDerivative(2, u, r);
    case Kind::gaussian:
        return hermiteScaledGaussDerivative(u, width_, r);
    case Kind::bspline:
        return bsplineAxis(t, u, r);
    default:
        throw Error("no closed-form derivative for " + describe());
    }
}

Interval Synthesizer::axisSupport(int t) const
{
    switch (kind_) {
    case Kind::indicator:
        return {std::min(0.0, cell_[t]), std::max(0.0, cell_[t])};
    case Kind::tent:
        return {0.0, 2.0};
    case Kind::gaussian:
        return {-kGaussRadius * width_, kGaussRadius * width_};
    case Kind::mexicanHat:
        return {-kHatRadius, kHatRadius};
    case Kind::bspline: {
        Interval in = inner_->axisSupport(t);
        return {in.lo, in.hi + orders_[t] * cell_[t]};
    }
    case Kind::bandlimited: {
        double b = std::abs(cell_[t]);
        return {-kBandRadius * b, kBandRadius * b};
    }
    }
    return {0.0, 0.0};
}

double Synthesizer::evaluate(const Point& x) const
{
    double v = 1.0;
    for (int t = 0; t < d_ && v != 0.0; ++t)
        v *= axis(t, x[t]);
    return v;
}

double Synthesizer::derivative(const Point& x, const MultiIndex& rho) const
{
    double v = 1.0;
    for (int t = 0; t < d_ && v != 0.0; ++t)
        v *= axisDerivative(t, x[t], rho[t]);
    return v;
}

double Synthesizer::integral() const
{
    switch (kind_) {
    case Kind::indicator: {
        double v = 1.0;
        for (int t = 0; t < d_; ++t)
            v *= normalized_ ? 1.0 : std::abs(cell_[t]);
        return v;
    }
    case Kind::tent:
    case Kind::gaussian:
    case Kind::bandlimited:
        return 1.0;
    case Kind::mexicanHat:
        return 0.0;
    case Kind::bspline:
        return inner_->integral();
    }
    return 0.0;
}

Box Synthesizer::supportBox() const
{
    Point lo{0, 0}, hi{1, 1};
    for (int t = 0; t < d_; ++t) {
        auto s = axisSupport(t);
        lo[t] = s.lo;
        hi[t] = s.hi;
    }
    return Box(d_, lo, hi);
}

namespace {

// wrapped sum |b| sum_k |s_t(u - b k)| on M left-endpoint samples of the cell
std::vector<double> wrappedAxis(const Synthesizer& s, int t, double b, int M)
{
    std::vector<double> Q(M);
    double ab = std::abs(b);
    double clo = std::min(0.0, b);
    if (s.kind() == Kind::bandlimited) {
        double L = 2.0 * kBandRadius * ab * 4.0;
        std::int64_t n = static_cast<std::int64_t>(std::llround(L / ab)) * M;
        std::vector<std::complex<double>> a(n);
        for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t l = i < n / 2 ? i : i - n;
            a[i] = s.cutoff().profile(static_cast<double>(l) / L * s.cell(t));
        }
        dft(a, 1, &n, false);
        for (std::int64_t m = 0; m < n; ++m)
            Q[m % M] += std::abs(a[m]) / L;
        // x = m ab / M agrees with clo + i ab / M modulo the cell when m = i mod M
        for (auto& q : Q)
            q *= ab;
        return Q;
    }
    Interval sup = s.axisSupport(t);
    for (int i = 0; i < M; ++i) {
        double u = clo + ab * i / M;
        auto k0 = static_cast<std::int64_t>(std::floor((u - sup.hi) / ab)) - 1;
        auto k1 = static_cast<std::int64_t>(std::ceil((u - sup.lo) / ab)) + 1;
        double sum = 0.0;
        for (auto k = k0; k <= k1; ++k)
            sum += std::abs(s.axis(t, u - ab * static_cast<double>(k)));
        Q[i] = ab * sum;
    }
    return Q;
}

}  // namespace

double periodizationMajorantNorm(const Synthesizer& s, const Lattice& lat, double p)
{
    if (!(p >= 1.0))
        throw Error("p out of range");
    if (lat.dim() != s.dim())
        throw Error("periodizationMajorantNorm: dimension mismatch");
    int M = s.kind() == Kind::bandlimited ? 1024 : 4096;
    if (s.kind() == Kind::bspline && s.inner().kind() == Kind::gaussian)
        M = 1024;
    double total = 1.0;
    for (int t = 0; t < s.dim(); ++t) {
        auto Q = wrappedAxis(s, t, lat.b(t), M);
        double v;
        if (std::isinf(p)) {
            v = *std::max_element(Q.begin(), Q.end());
        } else {
            double acc = 0.0;
            for (double q : Q)
                acc += std::pow(q, p);
            v = std::pow(acc * std::abs(lat.b(t)) / M, 1.0 / p);
        }
        total *= v;
    }
    return total;
}

Synthesizer etaRho(const MultiIndex& rho, int m, const Synthesizer& eta, const Lattice& lat)
{
    if (order(rho) > m)
        throw Error("etaRho: |rho| exceeds m");
    MultiIndex o{0, 0};
    for (int t = 0; t < lat.dim(); ++t)
        o[t] = m - rho[t];
    return Synthesizer::bspline(o, eta, lat);
}

namespace {

double keyValue(std::string_view spec, std::string_view key, double fallback)
{
    std::string k = std::string(key) + "=";
    auto pos = spec.find(k);
    if (pos == std::string_view::npos)
        return fallback;
    auto rest = spec.substr(pos + k.size());
    auto end = rest.find(':');
    std::string v(rest.substr(0, end));
    try {
        size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size())
            throw Error("");
        return x;
    } catch (...) {
        throw Error("synthesizer spec: bad value for " + std::string(key) + " in '" + std::string(spec) + "'");
    }
}

}  // namespace

Synthesizer parseSynthesizer(std::string_view spec, const Lattice& lat)
{
    int d = lat.dim();
    auto head = spec.substr(0, spec.find(':'));
    if (head == "indicator")
        return Synthesizer::indicator(lat, spec.find("normalized") != std::string_view::npos);
    if (head == "tent")
        return Synthesizer::tent(d);
    if (head == "gaussian")
        return Synthesizer::gaussian(d, keyValue(spec, "w", 1.0));
    if (head == "mexican-hat") {
        if (d != 1)
            throw Error("mexican-hat is one-dimensional");
        return Synthesizer::mexicanHat();
    }
    if (head == "bandlimited") {
        CutoffSpec c(keyValue(spec, "inner", 0.125), keyValue(spec, "outer", 0.375));
        return Synthesizer::bandlimited(c, lat);
    }
    if (head == "bspline") {
        auto ip = spec.find("inner=");
        if (ip == std::string_view::npos)
            throw Error("bspline spec needs inner=<spec>");
        double m = keyValue(spec.substr(0, ip), "m", -1.0);
        if (m < 0 || m != std::floor(m))
            throw Error("bspline spec needs integer m >= 0");
        auto inner = parseSynthesizer(spec.substr(ip + 6), lat);
        return Synthesizer::bspline(static_cast<int>(m), inner, lat);
    }
    throw Error("unknown synthesizer spec '" + std::string(spec) + "'");
}

}  // namespace affine
