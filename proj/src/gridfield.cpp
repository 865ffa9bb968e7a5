#include "affine/gridfield.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "affine/fft.hpp"

namespace affine {

namespace {

bool isPow2(std::int64_t n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

bool nearInteger(double x, double tol = 1e-9)
{
    return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

}  // namespace

Grid::Grid(const Box& box, std::array<std::int64_t, kMaxDim> n) : box_(box)
{
    for (int t = 0; t < box_.d; ++t) {
        if (!isPow2(n[t]))
            throw Error("grid: samples per axis must be a power of two");
        n_[t] = n[t];
        h_[t] = box_.side(t) / static_cast<double>(n[t]);
    }
}

Grid::Grid(const Box& box, std::int64_t n) : Grid(box, {n, box.d > 1 ? n : 1})
{
}

double Grid::cellVolume() const
{
    double v = 1.0;
    for (int t = 0; t < dim(); ++t)
        v *= h_[t];
    return v;
}

std::int64_t Grid::size() const
{
    std::int64_t s = 1;
    for (int t = 0; t < dim(); ++t)
        s *= n_[t];
    return s;
}

double Grid::freq(int t, std::int64_t i) const
{
    std::int64_t l = i < n_[t] / 2 ? i : i - n_[t];
    return static_cast<double>(l) / box_.side(t);
}

bool Grid::operator==(const Grid& o) const
{
    if (dim() != o.dim())
        return false;
    for (int t = 0; t < dim(); ++t)
        if (box_.lo[t] != o.box_.lo[t] || box_.hi[t] != o.box_.hi[t] || n_[t] != o.n_[t])
            return false;
    return true;
}

GridField::GridField(const Grid& g, std::string meta)
    : grid_(g), v_(static_cast<size_t>(g.size())), meta_(std::move(meta))
{
}

GridField::GridField(const Grid& g, std::vector<Complex> values, std::string meta)
    : grid_(g), v_(std::move(values)), meta_(std::move(meta))
{
    if (static_cast<std::int64_t>(v_.size()) != g.size())
        throw Error("gridfield: value count does not match grid");
    for (auto& z : v_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error("gridfield: non-finite sample");
}

GridField GridField::sample(const Grid& g, const std::function<Complex(const Point&)>& f,
                            std::string meta)
{
    GridField r(g, std::move(meta));
    if (g.dim() == 1) {
        for (std::int64_t i = 0; i < g.n(0); ++i)
            r.v_[i] = f({g.coord(0, i), 0.0});
    } else {
        for (std::int64_t i = 0; i < g.n(0); ++i)
            for (std::int64_t k = 0; k < g.n(1); ++k)
                r.v_[g.flat(i, k)] = f({g.coord(0, i), g.coord(1, k)});
    }
    for (auto& v : r.v_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error("gridfield: non-finite sample");
    return r;
}

GridField& GridField::operator+=(const GridField& o)
{
    if (!(grid_ == o.grid_))
        throw Error("gridfield: grids differ");
    for (size_t i = 0; i < v_.size(); ++i)
        v_[i] += o.v_[i];
    return *this;
}

GridField& GridField::operator-=(const GridField& o)
{
    if (!(grid_ == o.grid_))
        throw Error("gridfield: grids differ");
    for (size_t i = 0; i < v_.size(); ++i)
        v_[i] -= o.v_[i];
    return *this;
}

GridField& GridField::operator*=(Complex s)
{
    for (auto& z : v_)
        z *= s;
    return *this;
}

Complex GridField::integral() const
{
    Complex s = 0.0;
    for (auto z : v_)
        s += z;
    return s * grid_.cellVolume();
}

GridField operator+(GridField a, const GridField& b)
{
    a += b;
    return a;
}

GridField operator-(GridField a, const GridField& b)
{
    a -= b;
    return a;
}

GridField operator*(Complex s, GridField a)
{
    a *= s;
    return a;
}

GridField VectorField::length() const
{
    GridField r(grid(), "length");
    auto& out = r.values();
    for (auto& c : components)
        for (size_t i = 0; i < out.size(); ++i)
            out[i] += std::norm(c[static_cast<std::int64_t>(i)]);
    for (auto& z : out)
        z = std::sqrt(z.real());
    return r;
}

static double lpOfValues(const std::vector<Complex>& v, double dv, double p)
{
    if (!(p >= 1.0))
        throw Error("p out of range");
    if (std::isinf(p)) {
        double m = 0.0;
        for (auto z : v)
            m = std::max(m, std::abs(z));
        return m;
    }
    double s = 0.0;
    if (p == 1.0) {
        for (auto z : v)
            s += std::abs(z);
        return s * dv;
    }
    if (p == 2.0) {
        for (auto z : v)
            s += std::norm(z);
        return std::sqrt(s * dv);
    }
    for (auto z : v)
        s += std::pow(std::abs(z), p);
    return std::pow(s * dv, 1.0 / p);
}

double lpNorm(const GridField& f, double p)
{
    return lpOfValues(f.values(), f.grid().cellVolume(), p);
}

double lpNorm(const VectorField& f, double p)
{
    if (f.components.size() == 1)
        return lpNorm(f.components[0], p);
    return lpNorm(f.length(), p);
}

GridField periodize(const GridField& f, const Lattice& lat)
{
    const Grid& g = f.grid();
    int d = g.dim();
    if (lat.dim() != d)
        throw Error("periodize: dimension mismatch");
    Point clo{0, 0}, chi{1, 1};
    std::array<std::int64_t, kMaxDim> nc{1, 1};
    for (int t = 0; t < d; ++t) {
        double b = lat.b(t);
        clo[t] = std::min(0.0, b);
        chi[t] = std::max(0.0, b);
        double cells = std::abs(b) / g.h(t);
        if (!nearInteger(cells) || !nearInteger(g.box().lo[t] / g.h(t)))
            throw Error("periodize: lattice incommensurate with grid spacing");
        nc[t] = std::llround(cells);
        if (!isPow2(nc[t]))
            throw Error("periodize: cell must hold a power-of-two sample count");
    }
    Grid cg(Box(d, clo, chi), nc);
    GridField r(cg, "periodization");
    auto& out = r.values();
    double scale = lat.absDet();
    std::array<std::int64_t, kMaxDim> off{0, 0};
    for (int t = 0; t < d; ++t)
        off[t] = std::llround((g.box().lo[t] - clo[t]) / g.h(t));
    auto wrap = [](std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; };
    if (d == 1) {
        for (std::int64_t i = 0; i < g.n(0); ++i)
            out[wrap(i + off[0], nc[0])] += f[i];
    } else {
        for (std::int64_t i = 0; i < g.n(0); ++i) {
            std::int64_t a = wrap(i + off[0], nc[0]);
            for (std::int64_t k = 0; k < g.n(1); ++k)
                out[cg.flat(a, wrap(k + off[1], nc[1]))] += f[g.flat(i, k)];
        }
    }
    for (auto& z : out)
        z *= scale;
    return r;
}

namespace {

std::vector<Complex> spectrum(const GridField& f)
{
    auto a = f.values();
    dft(a, f.grid().dim(), f.grid().nData(), true);
    return a;
}

GridField applyMultiplier(const Grid& g, const std::vector<Complex>& spec, const Multiplier& m,
                          std::string meta)
{
    std::vector<Complex> a(spec.size());
    if (g.dim() == 1) {
        for (std::int64_t i = 0; i < g.n(0); ++i)
            a[i] = spec[i] * m({g.freq(0, i), 0.0});
    } else {
        for (std::int64_t i = 0; i < g.n(0); ++i) {
            double x0 = g.freq(0, i);
            for (std::int64_t k = 0; k < g.n(1); ++k) {
                auto idx = g.flat(i, k);
                a[idx] = spec[idx] * m({x0, g.freq(1, k)});
            }
        }
    }
    dft(a, g.dim(), g.nData(), false);
    double inv = 1.0 / static_cast<double>(g.size());
    for (auto& z : a)
        z *= inv;
    return GridField(g, std::move(a), std::move(meta));
}

}  // namespace

GridField fourierMultiplier(const GridField& f, const Multiplier& m)
{
    return applyMultiplier(f.grid(), spectrum(f), m, f.meta());
}

VectorField fourierMultiplier(const GridField& f, const std::vector<Multiplier>& m)
{
    auto spec = spectrum(f);
    VectorField r;
    for (size_t t = 0; t < m.size(); ++t)
        r.components.push_back(applyMultiplier(f.grid(), spec, m[t], "component " + std::to_string(t)));
    return r;
}

Complex rieszSymbol(const Point& xi, int d, int t)
{
    double len = 0.0;
    for (int s = 0; s < d; ++s)
        len += xi[s] * xi[s];
    if (len == 0.0)
        return 0.0;
    return Complex(0.0, -xi[t] / std::sqrt(len));
}

VectorField rieszTransform(const GridField& f)
{
    int d = f.grid().dim();
    std::vector<Multiplier> m;
    for (int t = 0; t < d; ++t)
        m.push_back([d, t](const Point& xi) { return rieszSymbol(xi, d, t); });
    auto r = fourierMultiplier(f, m);
    for (int t = 0; t < d; ++t)
        r.components[t].setMeta("vector component " + std::to_string(t) + " of Rf");
    return r;
}

HardyNorm h1Norm(const GridField& f, double tolerance)
{
    HardyNorm r;
    r.l1 = lpNorm(f, 1.0);
    r.riesz = lpNorm(rieszTransform(f), 1.0);
    r.value = r.l1 + r.riesz;
    r.mean = f.integral();
    r.meanWarning = std::abs(r.mean) > tolerance * r.l1;
    return r;
}

static Complex derivativeSymbol(const Point& xi, const MultiIndex& rho, int d)
{
    Complex s = 1.0;
    for (int t = 0; t < d; ++t)
        for (int r = 0; r < rho[t]; ++r)
            s *= Complex(0.0, 2.0 * M_PI * xi[t]);
    return s;
}

GridField spectralDerivative(const GridField& f, const MultiIndex& rho)
{
    int d = f.grid().dim();
    if (order(rho) == 0)
        return f;
    return fourierMultiplier(f, [&](const Point& xi) { return derivativeSymbol(xi, rho, d); });
}

std::vector<MultiIndex> multiIndices(int d, int m)
{
    std::vector<MultiIndex> out;
    for (int k = 0; k <= m; ++k) {
        if (d == 1) {
            out.push_back({k, 0});
        } else {
            for (int a = k; a >= 0; --a)
                out.push_back({a, k - a});
        }
    }
    return out;
}

double sobolevNorm(const GridField& f, int m, double p)
{
    if (m < 0)
        throw Error("sobolevNorm: m must be nonnegative");
    int d = f.grid().dim();
    double s = lpNorm(f, p);
    if (m == 0)
        return s;
    auto spec = spectrum(f);
    for (auto& rho : multiIndices(d, m)) {
        if (order(rho) == 0)
            continue;
        auto g = applyMultiplier(f.grid(), spec,
                                 [&](const Point& xi) { return derivativeSymbol(xi, rho, d); }, "");
        s += lpNorm(g, p);
    }
    return s;
}

GridField rescaleMb(const GridField& f, const Lattice& lat, bool inverse)
{
    const Grid& g = f.grid();
    int d = g.dim();
    if (lat.dim() != d)
        throw Error("rescaleMb: dimension mismatch");
    Point lo = g.box().lo, hi = g.box().hi;
    for (int t = 0; t < d; ++t) {
        double b = lat.b(t);
        if (b < 0)
            throw Error("rescaleMb: negative lattice entries would reverse the half-open grid");
        lo[t] = inverse ? lo[t] * b : lo[t] / b;
        hi[t] = inverse ? hi[t] * b : hi[t] / b;
    }
    Grid ng(Box(d, lo, hi), {g.n(0), g.n(1)});
    double s = inverse ? 1.0 / lat.absDet() : lat.absDet();
    std::vector<Complex> v = f.values();
    for (auto& z : v)
        z *= s;
    return GridField(ng, std::move(v), f.meta());
}

GridField shiftZeroFill(const GridField& f, int t, std::int64_t s)
{
    const Grid& g = f.grid();
    GridField r(g, f.meta());
    if (g.dim() == 1) {
        for (std::int64_t i = 0; i < g.n(0); ++i) {
            std::int64_t src = i - s;
            if (src >= 0 && src < g.n(0))
                r[i] = f[src];
        }
        return r;
    }
    for (std::int64_t i = 0; i < g.n(0); ++i)
        for (std::int64_t k = 0; k < g.n(1); ++k) {
            std::int64_t a = i, b = k;
            (t == 0 ? a : b) -= s;
            if (a >= 0 && a < g.n(0) && b >= 0 && b < g.n(1))
                r[g.flat(i, k)] = f[g.flat(a, b)];
        }
    return r;
}

namespace {

const char kMagic[4] = {'A', 'F', 'G', 'F'};

void putU64(std::ostream& os, std::uint64_t x)
{
    char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
    os.write(b, 8);
}

void putF64(std::ostream& os, double x)
{
    putU64(os, std::bit_cast<std::uint64_t>(x));
}

std::uint64_t getU64(std::istream& is)
{
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8))
        throw Error("readBinary: truncated stream");
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i)
        x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return x;
}

double getF64(std::istream& is)
{
    return std::bit_cast<double>(getU64(is));
}

}  // namespace

void writeBinary(const GridField& f, std::ostream& os)
{
    const Grid& g = f.grid();
    os.write(kMagic, 4);
    putU64(os, 1);
    putU64(os, static_cast<std::uint64_t>(g.dim()));
    for (int t = 0; t < g.dim(); ++t) {
        putF64(os, g.box().lo[t]);
        putF64(os, g.box().hi[t]);
        putU64(os, static_cast<std::uint64_t>(g.n(t)));
    }
    putU64(os, f.meta().size());
    os.write(f.meta().data(), static_cast<std::streamsize>(f.meta().size()));
    for (auto z : f.values()) {
        putF64(os, z.real());
        putF64(os, z.imag());
    }
    if (!os)
        throw Error("writeBinary: stream failure");
}

GridField readBinary(std::istream& is)
{
    char m[4];
    if (!is.read(m, 4) || std::memcmp(m, kMagic, 4) != 0)
        throw Error("readBinary: bad magic");
    if (getU64(is) != 1)
        throw Error("readBinary: unsupported version");
    int d = static_cast<int>(getU64(is));
    checkDim(d);
    Point lo{0, 0}, hi{1, 1};
    std::array<std::int64_t, kMaxDim> n{1, 1};
    for (int t = 0; t < d; ++t) {
        lo[t] = getF64(is);
        hi[t] = getF64(is);
        n[t] = static_cast<std::int64_t>(getU64(is));
    }
    Grid g(Box(d, lo, hi), n);
    std::string meta(getU64(is), '\0');
    is.read(meta.data(), static_cast<std::streamsize>(meta.size()));
    std::vector<Complex> v(static_cast<size_t>(g.size()));
    for (auto& z : v) {
        double re = getF64(is);
        z = Complex(re, getF64(is));
    }
    return GridField(g, std::move(v), std::move(meta));
}

void writeCsv(const GridField& f, std::ostream& os)
{
    const Grid& g = f.grid();
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    os << "# d=" << g.dim() << "\n# box=";
    for (int t = 0; t < g.dim(); ++t)
        os << (t ? "," : "") << num(g.box().lo[t]) << "," << num(g.box().hi[t]);
    os << "\n# n=";
    for (int t = 0; t < g.dim(); ++t)
        os << (t ? "," : "") << g.n(t);
    os << "\n# meta=" << f.meta() << "\nre,im\n";
    for (auto z : f.values())
        os << num(z.real()) << "," << num(z.imag()) << "\n";
}

GridField readCsv(std::istream& is)
{
    std::string line;
    int d = 0;
    Point lo{0, 0}, hi{1, 1};
    std::array<std::int64_t, kMaxDim> n{1, 1};
    std::string meta;
    auto values = [](const std::string& s) {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ','))
            out.push_back(std::stod(tok));
        return out;
    };
    while (std::getline(is, line)) {
        if (line.rfind("# d=", 0) == 0) {
            d = std::stoi(line.substr(4));
        } else if (line.rfind("# box=", 0) == 0) {
            auto v = values(line.substr(6));
            for (int t = 0; t < d; ++t) {
                lo[t] = v.at(2 * t);
                hi[t] = v.at(2 * t + 1);
            }
        } else if (line.rfind("# n=", 0) == 0) {
            auto v = values(line.substr(4));
            for (int t = 0; t < d; ++t)
                n[t] = static_cast<std::int64_t>(v.at(t));
        } else if (line.rfind("# meta=", 0) == 0) {
            meta = line.substr(7);
        } else if (line == "re,im") {
            break;
        }
    }
    checkDim(d);
    Grid g(Box(d, lo, hi), n);
    std::vector<Complex> v;
    v.reserve(static_cast<size_t>(g.size()));
    while (std::getline(is, line) && !line.empty()) {
        auto p = values(line);
        v.emplace_back(p.at(0), p.at(1));
    }
    return GridField(g, std::move(v), std::move(meta));
}

}  // namespace affine
