#include "affine/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "affine/fft.hpp"

namespace affine {

namespace {

bool nearInteger(double x, double tol = 1e-9)
{
    return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

double powerFactor(double alpha, int d, double r)
{
    // |alpha|^{d/r}, with r = inf giving 1
    if (std::isinf(r))
        return 1.0;
    return std::pow(std::abs(alpha), d / r);
}

using AxisFn = std::function<double(int t, double u)>;

struct AxisWindow {
    std::int64_t i0 = 0, i1 = -1;
    std::vector<double> v;
};

// grid samples of axisFn(alpha x - b k) over the translate of [slo, shi)
bool axisWindow(const Grid& g, int t, const AxisFn& fn, Interval sup, double alpha, double bk, AxisWindow& w)
{
    double xa = (sup.lo + bk) / alpha, xb = (sup.hi + bk) / alpha;
    if (xa > xb)
        std::swap(xa, xb);
    const Box& box = g.box();
    if (!(xa < box.hi[t] && box.lo[t] < xb))
        return false;
    double h = g.h(t);
    w.i0 = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((xa - box.lo[t]) / h)) - 1);
    w.i1 = std::min<std::int64_t>(g.n(t) - 1, static_cast<std::int64_t>(std::ceil((xb - box.lo[t]) / h)) + 1);
    w.v.resize(static_cast<size_t>(w.i1 - w.i0 + 1));
    for (auto i = w.i0; i <= w.i1; ++i)
        w.v[static_cast<size_t>(i - w.i0)] = fn(t, alpha * g.coord(t, i) - bk);
    return true;
}

void accumulate(const OperatorContext& ctx, const AxisFn& fn, const Synthesizer& shape, double alpha,
                const SeqMap& s, GridField& out)
{
    const Grid& g = out.grid();
    int d = g.dim();
    if (shape.dim() != d)
        throw Error("synthesis: synthesizer dimension differs from grid");
    double factor = powerFactor(alpha, d, ctx.norm.p);
    std::array<Interval, kMaxDim> sup;
    for (int t = 0; t < d; ++t)
        sup[t] = shape.axisSupport(t);
    std::array<AxisWindow, kMaxDim> w;
    auto& v = out.values();
    for (auto& [k, sk] : s) {
        for (int t = 0; t < d; ++t)
            if (!axisWindow(g, t, fn, sup[t], alpha, ctx.lat.b(t) * static_cast<double>(k[t]), w[t]))
                throw Error("synthesis: coefficient at a translate wholly outside the grid box (mass loss)");
        Complex c = sk * factor;
        if (d == 1) {
            for (auto i = w[0].i0; i <= w[0].i1; ++i)
                v[static_cast<size_t>(i)] += c * w[0].v[static_cast<size_t>(i - w[0].i0)];
        } else {
            for (auto i = w[0].i0; i <= w[0].i1; ++i) {
                double a = w[0].v[static_cast<size_t>(i - w[0].i0)];
                if (a == 0.0)
                    continue;
                Complex ca = c * a;
                for (auto k2 = w[1].i0; k2 <= w[1].i1; ++k2)
                    v[static_cast<size_t>(g.flat(i, k2))] += ca * w[1].v[static_cast<size_t>(k2 - w[1].i0)];
            }
        }
    }
}

double contextAlpha(const OperatorContext& ctx, int j)
{
    return j == 0 ? 1.0 : ctx.sched.alpha(j);
}

SeqMap analyzeBandlimited(const OperatorContext& ctx, double alpha, const GridField& f)
{
    const Grid& g = f.grid();
    int d = g.dim();
    const Synthesizer& phi = ctx.phi;
    std::array<std::int64_t, kMaxDim> step{0, 0}, off{0, 0};
    for (int t = 0; t < d; ++t) {
        double st = ctx.lat.b(t) / (alpha * g.h(t));
        if (!nearInteger(st) || !nearInteger(g.box().lo[t] / g.h(t)))
            throw Error("analysis: band-limited sample positions b k / alpha are not grid points");
        step[t] = std::llround(st);
        off[t] = std::llround(g.box().lo[t] / g.h(t));
        if (phi.cutoff().outer * std::abs(alpha / phi.cell(t)) >= 0.5 / g.h(t))
            throw Error("analysis: dilated analyzer spectrum exceeds the grid Nyquist frequency");
    }
    double scale = std::pow(std::abs(alpha), -d);
    auto conv = fourierMultiplier(f, [&](const Point& xi) {
        Point e{0, 0};
        for (int t = 0; t < d; ++t)
            e[t] = xi[t] * phi.cell(t) / alpha;
        return Complex(scale * phi.cutoff()(e, d), 0.0);
    });
    double factor = ctx.lat.absDet() * powerFactor(alpha, d, ctx.norm.q);
    // k with 0 <= k step - off < n
    std::array<IndexRange, kMaxDim> r;
    for (int t = 0; t < d; ++t) {
        std::int64_t s = step[t];
        double a = static_cast<double>(off[t]) / static_cast<double>(s);
        double b = static_cast<double>(off[t] + g.n(t) - 1) / static_cast<double>(s);
        if (a > b)
            std::swap(a, b);
        r[t].lo = static_cast<std::int64_t>(std::ceil(a - 1e-12));
        r[t].hi = static_cast<std::int64_t>(std::floor(b + 1e-12));
    }
    SeqMap out;
    for (auto k0 = r[0].lo; k0 <= r[0].hi; ++k0) {
        std::int64_t i0 = k0 * step[0] - off[0];
        if (d == 1) {
            setEntry(out, {k0, 0}, factor * conv[i0]);
            continue;
        }
        for (auto k1 = r[1].lo; k1 <= r[1].hi; ++k1) {
            std::int64_t i1 = k1 * step[1] - off[1];
            setEntry(out, {k0, k1}, factor * conv[g.flat(i0, i1)]);
        }
    }
    return out;
}

}  // namespace

OperatorContext::OperatorContext(Synthesizer p, Synthesizer f, Lattice l, DilationSchedule s, NormParams n,
                                 Grid g)
    : psi(std::move(p)), phi(std::move(f)), lat(std::move(l)), sched(std::move(s)), norm(n), grid(std::move(g))
{
    int d = grid.dim();
    if (lat.dim() != d || psi.dim() != d || phi.dim() != d)
        throw Error("operator context: dimension mismatch");
    for (int t = 0; t < d; ++t)
        if (!nearInteger(lat.b(t) / grid.h(t)))
            throw Error("operator context: lattice incommensurate with grid spacing");
}

OperatorContext OperatorContext::withPsi(const Synthesizer& s) const
{
    auto c = *this;
    c.psi = s;
    return c;
}

OperatorContext OperatorContext::withPhi(const Synthesizer& s) const
{
    auto c = *this;
    c.phi = s;
    return c;
}

OperatorContext OperatorContext::withNorm(double p) const
{
    auto c = *this;
    c.norm = NormParams(p);
    return c;
}

OperatorContext OperatorContext::withGrid(const Grid& g) const
{
    return OperatorContext(psi, phi, lat, sched, norm, g);
}

OperatorContext OperatorContext::withSchedule(const DilationSchedule& s) const
{
    auto c = *this;
    c.sched = s;
    return c;
}

GridField synthesizeScaleWith(const OperatorContext& ctx, const Synthesizer& psi, double alpha, const SeqMap& s)
{
    GridField out(ctx.grid, "synthesis");
    accumulate(ctx, [&](int t, double u) { return psi.axis(t, u); }, psi, alpha, s, out);
    return out;
}

GridField synthesizeScale(const OperatorContext& ctx, int j, const SeqMap& s)
{
    return synthesizeScaleWith(ctx, ctx.psi, contextAlpha(ctx, j), s);
}

Synthesis synthesizeWithPartials(const OperatorContext& ctx, const CoeffArray& c)
{
    if (c.J() > ctx.sched.J())
        throw Error("synthesize: more scales than the schedule holds");
    Synthesis r{GridField(ctx.grid, "synthesis"), {}};
    for (int j = 1; j <= c.J(); ++j) {
        r.field += synthesizeScale(ctx, j, c.scale(j));
        r.partial.push_back(r.field);
    }
    return r;
}

GridField synthesize(const OperatorContext& ctx, const CoeffArray& c)
{
    return synthesizeWithPartials(ctx, c).field;
}

SeqMap analyzeScale(const OperatorContext& ctx, int j, const GridField& f)
{
    const Grid& g = f.grid();
    int d = g.dim();
    if (d != ctx.lat.dim())
        throw Error("analysis: dimension mismatch");
    double alpha = contextAlpha(ctx, j);
    const Synthesizer& phi = ctx.phi;
    if (phi.kind() == Kind::bandlimited)
        return analyzeBandlimited(ctx, alpha, f);
    double factor = ctx.lat.absDet() * powerFactor(alpha, d, ctx.norm.q) * g.cellVolume();
    std::array<IndexRange, kMaxDim> r;
    std::array<Interval, kMaxDim> sup;
    for (int t = 0; t < d; ++t) {
        sup[t] = phi.axisSupport(t);
        r[t] = touchingRange(ctx.lat.b(t), alpha, sup[t].lo, sup[t].hi, g.box().lo[t], g.box().hi[t]);
        if (r[t].empty())
            return {};
    }
    AxisFn fn = [&](int t, double u) { return phi.axis(t, u); };
    SeqMap out;
    std::vector<std::pair<Index, Complex>> partial;
    double peak = 0.0;
    std::array<AxisWindow, kMaxDim> w;
    auto inside = [&](int t, double bk) {
        double xa = (sup[t].lo + bk) / alpha, xb = (sup[t].hi + bk) / alpha;
        if (xa > xb)
            std::swap(xa, xb);
        return xa >= g.box().lo[t] && xb <= g.box().hi[t];
    };
    const auto& v = f.values();
    auto one = [&](const Index& k) {
        bool full = true;
        for (int t = 0; t < d; ++t) {
            double bk = ctx.lat.b(t) * static_cast<double>(k[t]);
            axisWindow(g, t, fn, sup[t], alpha, bk, w[t]);
            full = full && inside(t, bk);
        }
        Complex s = 0.0;
        if (d == 1) {
            for (auto i = w[0].i0; i <= w[0].i1; ++i)
                s += v[static_cast<size_t>(i)] * w[0].v[static_cast<size_t>(i - w[0].i0)];
        } else {
            for (auto i = w[0].i0; i <= w[0].i1; ++i) {
                double a = w[0].v[static_cast<size_t>(i - w[0].i0)];
                if (a == 0.0)
                    continue;
                Complex row = 0.0;
                for (auto k2 = w[1].i0; k2 <= w[1].i1; ++k2)
                    row += v[static_cast<size_t>(g.flat(i, k2))] * w[1].v[static_cast<size_t>(k2 - w[1].i0)];
                s += a * row;
            }
        }
        s *= factor;
        if (full)
            peak = std::max(peak, std::abs(s));
        else
            partial.emplace_back(k, s);
        setEntry(out, k, s);
    };
    for (auto k0 = r[0].lo; k0 <= r[0].hi; ++k0) {
        if (d == 1)
            one({k0, 0});
        else
            for (auto k1 = r[1].lo; k1 <= r[1].hi; ++k1)
                one({k0, k1});
    }
    for (auto& [k, s] : partial)
        if (std::abs(s) > 1e-12 * std::max(peak, 1e-300))
            throw Error("analysis: analyzer translates not covered by the grid carry non-negligible mass");
    return out;
}

CoeffArray analyze(const OperatorContext& ctx, const GridField& f, int J)
{
    if (J > ctx.sched.J())
        throw Error("analyze: more scales than the schedule holds");
    CoeffArray c(ctx.grid.dim(), J);
    for (int j = 1; j <= J; ++j)
        c.setScale(j, analyzeScale(ctx, j, f));
    return c;
}

Approximation scaleAveragedApprox(const OperatorContext& ctx, const GridField& f, int J)
{
    Approximation r{GridField(ctx.grid, "scale-averaged"), {}};
    if (!ctx.sched.exponential())
        r.warnings.push_back("dilation schedule is not flagged as exponentially expanding");
    for (int j = 1; j <= J; ++j)
        r.field += synthesizeScale(ctx, j, analyzeScale(ctx, j, f));
    r.field *= 1.0 / J;
    return r;
}

CoeffArray constructCoefficients(const OperatorContext& ctx, const GridField& f, int J)
{
    auto c = analyze(ctx.withPhi(Synthesizer::indicator(ctx.lat, true)), f, J);
    c *= 1.0 / J;
    return c;
}

CoeffArray maskAdapted(const OperatorContext& ctx, const CoeffArray& c, const Box& omega)
{
    if (!ctx.psi.compact())
        throw Error("maskAdapted: synthesizer must have compact support");
    int d = c.dim();
    CoeffArray out(d, c.J());
    for (int j = 1; j <= c.J(); ++j) {
        double alpha = ctx.sched.alpha(j);
        SeqMap kept;
        for (auto& [k, v] : c.scale(j)) {
            bool in = true;
            for (int t = 0; t < d && in; ++t) {
                auto s = ctx.psi.axisSupport(t);
                double bk = ctx.lat.b(t) * static_cast<double>(k[t]);
                double xa = (s.lo + bk) / alpha, xb = (s.hi + bk) / alpha;
                if (xa > xb)
                    std::swap(xa, xb);
                in = xa >= omega.lo[t] && xb <= omega.hi[t];
            }
            if (in)
                kept[k] = v;
        }
        out.setScale(j, std::move(kept));
    }
    return out;
}

double rieszSynthCommutatorResidual(const OperatorContext& ctx, const SeqMap& s, const RieszSynthOptions& opt)
{
    const Grid& g = ctx.grid;
    if (g.dim() != 1)
        throw Error("rieszSynthCommutatorResidual: implemented for d = 1");
    if (s.empty())
        return 0.0;
    if (!meanZeroCheck(s).isZero)
        throw Error("rieszSynthCommutatorResidual: s must have zero mean");
    double b = ctx.lat.b(0);
    std::int64_t K = opt.K > 0 ? opt.K : g.n(0) / 2;
    auto z = discreteRieszKernel(opt.cut, ctx.lat, K);
    const CutoffSpec& cut = opt.cut;

    // left: R applied to sum_k s_k (psi * lambda * mu)(x - bk)
    auto F = synthesizeScaleWith(ctx, ctx.psi, 1.0, s);
    auto left = fourierMultiplier(F, [&](const Point& xi) {
        double nu = cut.profile(xi[0] * b);
        return rieszSymbol(xi, 1, 0) * nu * nu;
    });

    // right: sum_k (z*s)_k (psi * lambda)(x - bk) as a cyclic grid convolution
    double step = b / g.h(0);
    if (!nearInteger(step))
        throw Error("rieszSynthCommutatorResidual: b is not a multiple of the grid step");
    auto w = convolveSeq(s, z);
    std::int64_t n = g.n(0);
    std::vector<Complex> A(static_cast<size_t>(n));
    std::int64_t st = std::llround(step);
    for (auto& [k, v] : w)
        A[static_cast<size_t>((((k[0] * st) % n) + n) % n)] += v[0];
    SeqMap delta{{Index{0, 0}, Complex(1.0, 0.0)}};
    auto G = synthesizeScaleWith(ctx, ctx.psi, 1.0, delta);
    // G sampled on the box; rotate so index 0 is x = 0
    std::int64_t o = std::llround(-g.box().lo[0] / g.h(0));
    std::vector<Complex> Gr(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        Gr[static_cast<size_t>(i)] = G[(i + o) % n];
    dft(Gr, 1, g.nData(), true);
    dft(A, 1, g.nData(), true);
    std::vector<Complex> R(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        R[static_cast<size_t>(i)] = Gr[static_cast<size_t>(i)] * A[static_cast<size_t>(i)] *
                                    cut.profile(g.freq(0, i) * b);
    dft(R, 1, g.nData(), false);
    // R[m] holds the value at x = m h; move back to box order
    GridField right(g);
    for (std::int64_t i = 0; i < n; ++i)
        right[i] = R[static_cast<size_t>(((i - o) % n + n) % n)] / static_cast<double>(n);
    double den = lpNorm(left, 1.0);
    if (den == 0.0)
        return 0.0;
    return lpNorm(left - right, 1.0) / den;
}

double rieszAnalysisCommutatorResidual(const OperatorContext& ctx, const GridField& f, int j,
                                       const RieszAnalysisOptions& opt)
{
    const Grid& g = f.grid();
    if (g.dim() != 1)
        throw Error("rieszAnalysisCommutatorResidual: implemented for d = 1");
    if (ctx.phi.kind() != Kind::bandlimited)
        throw Error("rieszAnalysisCommutatorResidual: analyzer must be band-limited");
    if (opt.padding < 1 || (opt.padding & (opt.padding - 1)) != 0)
        throw Error("rieszAnalysisCommutatorResidual: padding must be a power of two");
    double alpha = ctx.sched.alpha(j);
    auto T = analyzeScale(ctx, j, f);
    if (T.empty())
        return 0.0;
    std::int64_t klo = T.begin()->first[0], khi = T.rbegin()->first[0];
    auto z = discreteRieszKernel(opt.cut, ctx.lat, std::max<std::int64_t>(1, khi - klo));
    auto lhs = convolveSeq(T, z);

    // right: sign(alpha) T_j R(mu_j * f) on a zero-padded box
    double L = g.box().side(0), c = 0.5 * (g.box().lo[0] + g.box().hi[0]);
    double P = opt.padding;
    Grid pg(Box(1, {c - 0.5 * P * L, 0}, {c + 0.5 * P * L, 0}), g.n(0) * opt.padding);
    GridField fp(pg);
    std::int64_t o = std::llround((g.box().lo[0] - pg.box().lo[0]) / g.h(0));
    for (std::int64_t i = 0; i < g.n(0); ++i)
        fp[i + o] = f[i];
    double b = ctx.lat.b(0);
    if (opt.cut.outer * std::abs(alpha / b) >= 0.5 / g.h(0))
        throw Error("rieszAnalysisCommutatorResidual: mu_j spectrum exceeds the grid Nyquist frequency");
    auto Rmu = fourierMultiplier(fp, [&](const Point& xi) {
        return rieszSymbol(xi, 1, 0) * opt.cut.profile(xi[0] * b / alpha);
    });
    auto rhsAll = analyzeScale(ctx.withGrid(pg), j, Rmu);
    double sg = opt.includeSign && alpha < 0 ? -1.0 : 1.0;
    double num = 0.0, den = 0.0;
    for (auto k = klo; k <= khi; ++k) {
        auto it = lhs.find({k, 0});
        Complex l = it == lhs.end() ? Complex(0.0, 0.0) : it->second[0];
        auto jt = rhsAll.find({k, 0});
        Complex r = jt == rhsAll.end() ? Complex(0.0, 0.0) : sg * jt->second;
        num += std::abs(l - r);
        den += std::abs(l);
    }
    return den == 0.0 ? 0.0 : num / den;
}

GridField differenceQuotient(const GridField& f, double alpha, const MultiIndex& rho)
{
    const Grid& g = f.grid();
    GridField cur = f;
    for (int t = 0; t < g.dim(); ++t) {
        if (rho[t] == 0)
            continue;
        double s = 1.0 / (alpha * g.h(t));
        if (!(alpha > 0) || !nearInteger(s))
            throw Error("difference quotient: shift 1/alpha is not a whole number of grid steps");
        auto st = std::llround(s);
        for (int r = 0; r < rho[t]; ++r) {
            auto sh = shiftZeroFill(cur, t, st);
            cur -= sh;
            cur *= alpha;
        }
    }
    return cur;
}

double diffAnalysisCommutatorResidual(const OperatorContext& ctx, const GridField& f, int j, const MultiIndex& rho)
{
    if (!ctx.lat.isIdentity())
        throw Error("diffAnalysisCommutatorResidual: requires b = I");
    double alpha = ctx.sched.alpha(j);
    auto T = analyzeScale(ctx, j, f);
    auto rhs = analyzeScale(ctx, j, differenceQuotient(f, alpha, rho));
    auto lhsAll = difference(T, rho);
    double w = std::pow(alpha, order(rho));
    SeqMap diff, lhs;
    for (auto& [k, v] : T) {
        auto it = lhsAll.find(k);
        Complex l = it == lhsAll.end() ? Complex(0.0, 0.0) : w * it->second;
        auto jt = rhs.find(k);
        Complex r = jt == rhs.end() ? Complex(0.0, 0.0) : jt->second;
        setEntry(lhs, k, l);
        setEntry(diff, k, l - r);
    }
    double den = seqNorm(lhs, ctx.norm.p);
    return den == 0.0 ? 0.0 : seqNorm(diff, ctx.norm.p) / den;
}

double derivSynthCommutatorResidual(const OperatorContext& ctx, const MultiIndex& rho, const CoeffArray& c,
                                    DerivativeRoute route)
{
    const Synthesizer& psi = ctx.psi;
    if (psi.kind() != Kind::bspline)
        throw Error("derivSynthCommutatorResidual: synthesizer must have the convolution form");
    if (!ctx.lat.isIdentity())
        throw Error("derivSynthCommutatorResidual: requires b = I");
    int d = ctx.grid.dim();
    int m = psi.order(0);
    for (int t = 1; t < d; ++t)
        if (psi.order(t) != m)
            throw Error("derivSynthCommutatorResidual: orders must agree across axes");
    if (order(rho) > m)
        throw Error("derivSynthCommutatorResidual: |rho| exceeds m");
    auto eta = etaRho(rho, m, psi.inner(), ctx.lat);

    GridField left(ctx.grid), right(ctx.grid);
    if (order(rho) == 0) {
        left = synthesize(ctx, c);
        right = synthesize(ctx.withPsi(eta), c);
    } else {
        for (int j = 1; j <= c.J(); ++j) {
            double alpha = ctx.sched.alpha(j);
            double w = std::pow(alpha, order(rho));
            SeqMap cd;
            for (auto& [k, v] : difference(c.scale(j), rho))
                cd[k] = w * v;
            right += synthesizeScaleWith(ctx, eta, alpha, cd);
        }
        if (route == DerivativeRoute::spectral) {
            left = spectralDerivative(synthesize(ctx, c), rho);
        } else {
            for (int j = 1; j <= c.J(); ++j) {
                double alpha = ctx.sched.alpha(j);
                SeqMap cw;
                for (auto& [k, v] : c.scale(j))
                    cw[k] = std::pow(alpha, order(rho)) * v;
                accumulate(ctx, [&](int t, double u) { return psi.axisDerivative(t, u, rho[t]); }, psi, alpha,
                           cw, left);
            }
        }
    }
    double den = lpNorm(right, ctx.norm.p);
    double num = lpNorm(left - right, ctx.norm.p);
    return den == 0.0 ? num : num / den;
}

FrameResult frameReconstruct(const OperatorContext& ctx, const GridField& f, int J)
{
    FrameResult r{GridField(ctx.grid, "frame reconstruction"), {}};
    GridField acc(ctx.grid);
    for (int j = 1; j <= J; ++j) {
        acc += synthesizeScale(ctx, j, analyzeScale(ctx, j, f));
        auto avg = (1.0 / j) * acc;
        r.cesaroTrace.push_back(lpNorm(avg - f, ctx.norm.p));
        if (j == J)
            r.approx = avg;
    }
    return r;
}

GridField sobolevScaleAveraged(const OperatorContext& ctx, const GridField& f, int J, int m, double p)
{
    if (!ctx.lat.isIdentity())
        throw Error("sobolevScaleAveraged: requires b = I");
    if (m > 0) {
        if (ctx.psi.kind() != Kind::bspline)
            throw Error("sobolevScaleAveraged: synthesizer must have the convolution form");
        for (int t = 0; t < ctx.grid.dim(); ++t)
            if (ctx.psi.order(t) < m)
                throw Error("sobolevScaleAveraged: spline order below m");
    }
    return scaleAveragedApprox(ctx.withNorm(p), f, J).field;
}

Approximation hardyScaleAveraged(const OperatorContext& ctx, const GridField& f, int J, HardyMode mode)
{
    Approximation r{GridField(ctx.grid, "hardy approximation"), {}};
    double l1 = lpNorm(f, 1.0);
    if (std::abs(f.integral()) > 1e-8 * l1)
        r.warnings.push_back("input has non-negligible mean");
    if (ctx.norm.p != 1.0)
        r.warnings.push_back("Hardy approximation expects p = 1 normalization");
    if (ctx.phi.kind() != Kind::bandlimited)
        r.warnings.push_back("analyzer is not band-limited");
    if (mode == HardyMode::constantPeriodization) {
        r.field = synthesizeScale(ctx, J, analyzeScale(ctx, J, f));
        return r;
    }
    auto a = scaleAveragedApprox(ctx, f, J);
    r.field = a.field;
    for (auto& w : a.warnings)
        r.warnings.push_back(w);
    return r;
}

}  // namespace affine
