#include "affine/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "affine/fft.hpp"

namespace affine {

void setEntry(SeqMap& s, const Index& k, Complex v)
{
    if (v == Complex(0.0, 0.0))
        s.erase(k);
    else
        s[k] = v;
}

double seqNorm(const SeqMap& s, double p)
{
    if (!(p >= 1.0))
        throw Error("p out of range");
    if (std::isinf(p)) {
        double m = 0.0;
        for (auto& [k, v] : s)
            m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (auto& [k, v] : s)
        acc += p == 1.0 ? std::abs(v) : std::pow(std::abs(v), p);
    return p == 1.0 ? acc : std::pow(acc, 1.0 / p);
}

double seqNorm(const VecSeq& s, double p, int d)
{
    SeqMap len;
    for (auto& [k, v] : s) {
        double a = 0.0;
        for (int t = 0; t < d; ++t)
            a += std::norm(v[t]);
        len[k] = std::sqrt(a);
    }
    return seqNorm(len, p);
}

CoeffArray::CoeffArray(int d, int J) : d_(d), scales_(static_cast<size_t>(J))
{
    checkDim(d);
    if (J < 1)
        throw Error("coefficient array needs J >= 1");
}

void CoeffArray::setScale(int j, SeqMap s)
{
    for (auto it = s.begin(); it != s.end();)
        it = it->second == Complex(0.0, 0.0) ? s.erase(it) : std::next(it);
    scales_.at(j - 1) = std::move(s);
}

Complex CoeffArray::get(int j, const Index& k) const
{
    auto& s = scales_.at(j - 1);
    auto it = s.find(k);
    return it == s.end() ? Complex(0.0, 0.0) : it->second;
}

void CoeffArray::set(int j, const Index& k, Complex v)
{
    setEntry(scales_.at(j - 1), k, v);
}

std::size_t CoeffArray::nnz() const
{
    std::size_t n = 0;
    for (auto& s : scales_)
        n += s.size();
    return n;
}

CoeffArray& CoeffArray::operator*=(Complex s)
{
    for (auto& m : scales_) {
        for (auto& [k, v] : m)
            v *= s;
        if (s == Complex(0.0, 0.0))
            m.clear();
    }
    return *this;
}

double mixedNorm(const CoeffArray& c, double p)
{
    double s = 0.0;
    for (int j = 1; j <= c.J(); ++j)
        s += seqNorm(c.scale(j), p);
    return s;
}

double supMixedNorm(const CoeffArray& c, double p)
{
    double s = 0.0;
    for (int j = 1; j <= c.J(); ++j)
        s = std::max(s, seqNorm(c.scale(j), p));
    return s;
}

SeqMap difference(const SeqMap& s, const MultiIndex& rho)
{
    SeqMap cur = s;
    for (int t = 0; t < kMaxDim; ++t)
        for (int r = 0; r < rho[t]; ++r) {
            SeqMap next;
            for (auto& [k, v] : cur) {
                next[k] += v;
                Index kk = k;
                kk[t] += 1;
                next[kk] -= v;
            }
            for (auto it = next.begin(); it != next.end();)
                it = it->second == Complex(0.0, 0.0) ? next.erase(it) : std::next(it);
            cur = std::move(next);
        }
    return cur;
}

double sobolevSeqNorm(const CoeffArray& c, int m, double p, const DilationSchedule& sched)
{
    if (c.J() > sched.J())
        throw Error("sobolevSeqNorm: more scales than the schedule holds");
    double s = 0.0;
    for (int j = 1; j <= c.J(); ++j) {
        double a = std::abs(sched.alpha(j));
        for (auto& rho : multiIndices(c.dim(), m))
            s += std::pow(a, order(rho)) * seqNorm(difference(c.scale(j), rho), p);
    }
    return s;
}

VecSeq convolveSeq(const SeqMap& s, const KernelSeq& z)
{
    VecSeq out;
    if (s.empty())
        return out;
    int d = z.dim();
    std::int64_t K = z.K();
    Index lo{0, 0}, hi{0, 0};
    lo = hi = s.begin()->first;
    for (auto& [k, v] : s)
        for (int t = 0; t < d; ++t) {
            lo[t] = std::min(lo[t], k[t]);
            hi[t] = std::max(hi[t], k[t]);
        }
    std::array<std::int64_t, kMaxDim> w{1, 1};
    for (int t = 0; t < d; ++t) {
        lo[t] -= K;
        hi[t] += K;
        w[t] = hi[t] - lo[t] + 1;
    }
    std::vector<VecValue> buf(static_cast<size_t>(w[0] * w[1]));
    auto at = [&](const Index& k) -> VecValue& {
        return buf[static_cast<size_t>((k[0] - lo[0]) * w[1] + (d > 1 ? k[1] - lo[1] : 0))];
    };
    if (d == 1) {
        for (auto& [m, sv] : s)
            for (std::int64_t l = -K; l <= K; ++l) {
                Complex zl = z.at({l, 0})[0];
                at({m[0] + l, 0})[0] += zl * sv;
            }
    } else {
        for (auto& [m, sv] : s)
            for (std::int64_t l0 = -K; l0 <= K; ++l0)
                for (std::int64_t l1 = -K; l1 <= K; ++l1) {
                    auto zl = z.at({l0, l1});
                    auto& o = at({m[0] + l0, m[1] + l1});
                    o[0] += zl[0] * sv;
                    o[1] += zl[1] * sv;
                }
    }
    for (std::int64_t a = 0; a < w[0]; ++a)
        for (std::int64_t b = 0; b < w[1]; ++b) {
            auto& v = buf[static_cast<size_t>(a * w[1] + b)];
            if (v[0] != Complex(0.0, 0.0) || v[1] != Complex(0.0, 0.0))
                out[{lo[0] + a, d > 1 ? lo[1] + b : 0}] = v;
        }
    return out;
}

MeanCheck meanZeroCheck(const SeqMap& s, double tolerance)
{
    Complex m = 0.0;
    double mass = 0.0;
    for (auto& [k, v] : s) {
        m += v;
        mass += std::abs(v);
    }
    return {m, std::abs(m) <= tolerance * mass};
}

HardySeqNorm h1SeqNorm(const SeqMap& s, const KernelSeq& z)
{
    HardySeqNorm r;
    if (s.empty())
        return r;
    int d = z.dim();
    r.l1 = seqNorm(s, 1.0);
    r.conv = seqNorm(convolveSeq(s, z), 1.0, d);
    r.value = r.l1 + r.conv;
    r.meanZero = meanZeroCheck(s).isZero;
    if (!r.meanZero) {
        r.tail = std::numeric_limits<double>::infinity();
        return r;
    }
    // dipole estimate: |(s*z)_k| <~ (d+1) A W / |k|^{d+1}, with A the edge amplitude of z
    std::array<double, kMaxDim> c{0, 0};
    double mass = 0.0;
    for (auto& [k, v] : s) {
        for (int t = 0; t < d; ++t)
            c[t] += std::abs(v) * static_cast<double>(k[t]);
        mass += std::abs(v);
    }
    for (int t = 0; t < d; ++t)
        c[t] /= mass;
    double W = 0.0, rs = 0.0;
    for (auto& [k, v] : s) {
        double e = 0.0;
        for (int t = 0; t < d; ++t) {
            double dx = static_cast<double>(k[t]) - c[t];
            e += dx * dx;
            rs = std::max(rs, std::abs(dx));
        }
        W += std::abs(v) * std::sqrt(e);
    }
    double K = static_cast<double>(z.K());
    auto edge = z.at({z.K(), 0});
    double A = 0.0;
    for (int t = 0; t < d; ++t)
        A += std::norm(edge[t]);
    A = std::sqrt(A) * std::pow(K, d);
    double R = K - rs;
    if (R <= 0.0) {
        r.tail = std::numeric_limits<double>::infinity();
        return r;
    }
    double sigma = d == 1 ? 2.0 : 2.0 * M_PI;
    r.tail = sigma * A * (d + 1) * W / R;
    return r;
}

HardySeqNorm h1MixedNorm(const CoeffArray& c, const KernelSeq& z)
{
    HardySeqNorm r;
    for (int j = 1; j <= c.J(); ++j) {
        auto h = h1SeqNorm(c.scale(j), z);
        r.value += h.value;
        r.l1 += h.l1;
        r.conv += h.conv;
        r.tail += h.tail;
        r.meanZero = r.meanZero && h.meanZero;
    }
    return r;
}

GridField cutoffField(const CutoffSpec& cut, const Lattice& lat, double alpha, const Grid& grid)
{
    int d = grid.dim();
    for (int t = 0; t < d; ++t) {
        double nyquist = 0.5 / grid.h(t);
        double top = cut.outer * std::abs(alpha / lat.b(t));
        // the symbol must vanish before the Nyquist row
        if (cut.profile(nyquist * lat.b(t) / alpha) > 1e-8 || top >= nyquist)
            throw Error("spectralHelpers: cut-off spectrum leaks past the grid Nyquist frequency");
    }
    std::vector<Complex> a(static_cast<size_t>(grid.size()));
    auto fill = [&](std::int64_t idx, const Point& xi) {
        Point e{0, 0};
        double phase = 0.0;
        for (int t = 0; t < d; ++t) {
            e[t] = xi[t] * lat.b(t) / alpha;
            phase += xi[t] * grid.box().lo[t];
        }
        a[idx] = cut(e, d) * std::polar(1.0, 2.0 * M_PI * phase);
    };
    if (d == 1) {
        for (std::int64_t i = 0; i < grid.n(0); ++i)
            fill(i, {grid.freq(0, i), 0.0});
    } else {
        for (std::int64_t i = 0; i < grid.n(0); ++i)
            for (std::int64_t k = 0; k < grid.n(1); ++k)
                fill(grid.flat(i, k), {grid.freq(0, i), grid.freq(1, k)});
    }
    dft(a, d, grid.nData(), false);
    double vol = grid.box().volume();
    for (auto& z : a)
        z /= vol;
    return GridField(grid, std::move(a), "cut-off kernel");
}

SpectralHelpers spectralHelpers(const CutoffSpec& cut, const Lattice& lat, int j,
                                const DilationSchedule& sched, const Grid& grid)
{
    if (lat.dim() != grid.dim())
        throw Error("spectralHelpers: dimension mismatch");
    auto mu = cutoffField(cut, lat, 1.0, grid);
    mu.setMeta("mu");
    auto lambda = mu;
    lambda.setMeta("lambda");
    auto muJ = cutoffField(cut, lat, sched.alpha(j), grid);
    muJ.setMeta("mu_j");
    return {std::move(mu), std::move(lambda), std::move(muJ)};
}

}  // namespace affine
