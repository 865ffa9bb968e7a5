#include "affine/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace affine {

void checkDim(int d)
{
    if (d < 1 || d > kMaxDim)
        throw Error("dimension must be 1 or 2, got " + std::to_string(d));
}

int order(const MultiIndex& rho)
{
    return rho[0] + rho[1];
}

Lattice::Lattice(std::vector<double> diag) : d_(static_cast<int>(diag.size()))
{
    checkDim(d_);
    det_ = 1.0;
    for (int t = 0; t < d_; ++t) {
        if (diag[t] == 0.0 || !std::isfinite(diag[t]))
            throw Error("lattice: diagonal entries must be finite and nonzero");
        b_[t] = diag[t];
        det_ *= diag[t];
    }
}

Lattice Lattice::identity(int d)
{
    return Lattice(std::vector<double>(d, 1.0));
}

double Lattice::absDet() const
{
    return std::abs(det_);
}

bool Lattice::isIdentity() const
{
    for (int t = 0; t < d_; ++t)
        if (b_[t] != 1.0)
            return false;
    return true;
}

Box::Box(int dim, Point l, Point h) : d(dim), lo(l), hi(h)
{
    checkDim(d);
    for (int t = 0; t < d; ++t)
        if (!(lo[t] < hi[t]))
            throw Error("box: lo must be below hi on every axis");
    for (int t = d; t < kMaxDim; ++t) {
        lo[t] = 0.0;
        hi[t] = 1.0;
    }
}

Box Box::cube(int dim, double l, double h)
{
    return Box(dim, {l, l}, {h, h});
}

double Box::volume() const
{
    double v = 1.0;
    for (int t = 0; t < d; ++t)
        v *= side(t);
    return v;
}

bool Box::contains(const Point& x) const
{
    for (int t = 0; t < d; ++t)
        if (x[t] < lo[t] || x[t] >= hi[t])
            return false;
    return true;
}

bool Box::containsBox(const Box& o) const
{
    for (int t = 0; t < d; ++t)
        if (o.lo[t] < lo[t] || o.hi[t] > hi[t])
            return false;
    return true;
}

bool Box::intersects(const Box& o) const
{
    for (int t = 0; t < d; ++t)
        if (!(o.lo[t] < hi[t] && lo[t] < o.hi[t]))
            return false;
    return true;
}

Box Box::intersect(const Box& o) const
{
    Box r = *this;
    for (int t = 0; t < d; ++t) {
        r.lo[t] = std::max(lo[t], o.lo[t]);
        r.hi[t] = std::min(hi[t], o.hi[t]);
    }
    return r;
}

static double maxRatio(const std::vector<double>& a)
{
    double m = 0.0;
    for (size_t j = 0; j + 1 < a.size(); ++j)
        m = std::max(m, std::abs(a[j] / a[j + 1]));
    return m;
}

DilationSchedule::DilationSchedule(std::vector<double> alphas, double delta)
    : alphas_(std::move(alphas)), delta_(delta)
{
    if (alphas_.empty())
        throw Error("schedule: need at least one scale");
    for (size_t j = 0; j < alphas_.size(); ++j) {
        if (alphas_[j] == 0.0 || !std::isfinite(alphas_[j]))
            throw Error("schedule: dilations must be finite and nonzero");
        if (j > 0 && !(std::abs(alphas_[j]) > std::abs(alphas_[j - 1])))
            throw Error("schedule: |alpha_j| must be strictly increasing");
    }
    exponential_ = delta_ < 1.0 && maxRatio(alphas_) <= delta_;
}

DilationSchedule::DilationSchedule(std::vector<double> alphas)
    : DilationSchedule(std::move(alphas), 1.0)
{
}

DilationSchedule dyadicSchedule(double delta, int J)
{
    if (!(delta > 1.0))
        throw Error("dyadicSchedule: delta must exceed 1");
    if (J < 1)
        throw Error("dyadicSchedule: J must be positive");
    std::vector<double> a(J);
    double x = 1.0;
    for (int j = 0; j < J; ++j) {
        x *= delta;
        a[j] = x;
    }
    double r = 1.0 / delta;
    // ratios of non-dyadic powers can round a few ulps above 1/delta
    double m = maxRatio(a);
    return DilationSchedule(std::move(a), std::max(r, m));
}

ExpansionCheck checkExponentialExpansion(const DilationSchedule& sched)
{
    if (sched.J() < 2)
        throw Error("checkExponentialExpansion: need J >= 2");
    double m = maxRatio(sched.alphas());
    return {m < 1.0, m};
}

IndexRange touchingRange(double b, double alpha, double slo, double shi, double lo, double hi)
{
    double cmin = (alpha > 0 ? slo : shi) / alpha;
    double cmax = (alpha > 0 ? shi : slo) / alpha;
    double sigma = b / alpha;
    double a, c;
    if (sigma > 0) {
        a = (lo - cmax) / sigma;
        c = (hi - cmin) / sigma;
    } else {
        a = (hi - cmin) / sigma;
        c = (lo - cmax) / sigma;
    }
    IndexRange r;
    r.lo = static_cast<std::int64_t>(std::floor(a)) + 1;
    r.hi = static_cast<std::int64_t>(std::ceil(c)) - 1;
    return r;
}

std::vector<Index> latticePointsTouching(const Lattice& lat, const Box& box, const Box& support,
                                         int j, const DilationSchedule& sched)
{
    int d = lat.dim();
    if (box.d != d || support.d != d)
        throw Error("latticePointsTouching: dimension mismatch");
    double alpha = sched.alpha(j);
    std::array<IndexRange, kMaxDim> r;
    for (int t = 0; t < d; ++t) {
        r[t] = touchingRange(lat.b(t), alpha, support.lo[t], support.hi[t], box.lo[t], box.hi[t]);
        if (r[t].empty())
            return {};
    }
    std::vector<Index> out;
    if (d == 1) {
        for (auto k = r[0].lo; k <= r[0].hi; ++k)
            out.push_back({k, 0});
    } else {
        for (auto k0 = r[0].lo; k0 <= r[0].hi; ++k0)
            for (auto k1 = r[1].lo; k1 <= r[1].hi; ++k1)
                out.push_back({k0, k1});
    }
    return out;
}

}  // namespace affine
