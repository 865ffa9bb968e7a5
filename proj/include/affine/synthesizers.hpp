#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "affine/cutoff.hpp"
#include "affine/geometry.hpp"

namespace affine {

struct NormParams {
    double p;
    double q;

    explicit NormParams(double p);
};

struct Interval {
    double lo;
    double hi;
};

enum class Kind { indicator, tent, gaussian, mexicanHat, bspline, bandlimited };

// Separable synthesizer/analyzer: a product of one-axis profiles.
//   indicator    1_{bC}, or |bC|^{-1} 1_{bC} when normalized
//   tent         N_2 per axis, supported on [0,2)^d
//   gaussian     w^{-d} exp(-pi |x|^2 / w^2)
//   mexicanHat   (1 - x^2) exp(-x^2/2), d = 1 only
//   bspline      beta^{*o_t} * inner per axis, beta the normalized cell indicator
//   bandlimited  inverse transform of nu(xi b)
class Synthesizer {
public:
    static Synthesizer indicator(const Lattice& lat, bool normalized = false);
    static Synthesizer tent(int d);
    static Synthesizer gaussian(int d, double width);
    static Synthesizer mexicanHat();
    static Synthesizer bspline(int m, const Synthesizer& inner, const Lattice& lat);
    static Synthesizer bspline(const MultiIndex& orders, const Synthesizer& inner, const Lattice& lat);
    static Synthesizer bandlimited(const CutoffSpec& cut, const Lattice& lat);

    Kind kind() const { return kind_; }
    int dim() const { return d_; }
    bool compact() const;
    bool normalized() const { return normalized_; }
    double width() const { return width_; }
    int order(int t) const { return orders_[t]; }
    const Synthesizer& inner() const;
    const CutoffSpec& cutoff() const { return cut_; }
    double cell(int t) const { return cell_[t]; }
    std::string describe() const;

    double axis(int t, double u) const;
    double axisDerivative(int t, double u, int r) const;
    Interval axisSupport(int t) const;

    double evaluate(const Point& x) const;
    double derivative(const Point& x, const MultiIndex& rho) const;
    double integral() const;
    Box supportBox() const;

private:
    Synthesizer(Kind k, int d) : kind_(k), d_(d) {}
    double bsplineAxis(int t, double u, int r) const;

    Kind kind_;
    int d_;
    bool normalized_ = false;
    double width_ = 1.0;
    std::array<double, kMaxDim> cell_{1.0, 1.0};
    MultiIndex orders_{0, 0};
    std::shared_ptr<const Synthesizer> inner_;
    CutoffSpec cut_;
};

// cardinal B-spline N_n on [0,n), Cox-de Boor recursion; N_1 = 1_{[0,1)}
double cardinalBSpline(int n, double x);
// r-th derivative as a difference of lower-order splines, r < n
double cardinalBSplineDerivative(int n, double x, int r);

// ||P|s| ||_{L^p(bC)} by fine-grid quadrature of the wrapped sum
double periodizationMajorantNorm(const Synthesizer& s, const Lattice& lat, double p);

Synthesizer etaRho(const MultiIndex& rho, int m, const Synthesizer& eta, const Lattice& lat);

// "indicator", "indicator:normalized", "tent", "gaussian:w=1", "mexican-hat",
// "bspline:m=2:inner=indicator", "bandlimited[:inner=0.125:outer=0.375]"
Synthesizer parseSynthesizer(std::string_view spec, const Lattice& lat);

}  // namespace affine
