#pragma once

#include "affine/geometry.hpp"

namespace affine {

// Smooth cut-off nu: 1 for |xi|_inf <= inner, 0 beyond outer, tensor product of
// the e^{-1/t} ramp across the annulus.
struct CutoffSpec {
    double inner = 0.125;
    double outer = 0.375;

    CutoffSpec() = default;
    CutoffSpec(double in, double out);

    double profile(double u) const;  // one axis, u = xi_t
    double operator()(const Point& xi, int d) const;
};

// S(t) = f(t) / (f(t) + f(1-t)), f(t) = e^{-1/t} for t > 0
double smoothStep(double t);

// ||nu-check||_1 by a fine inverse DFT
double cutoffInverseL1(const CutoffSpec& cut, int d);

}  // namespace affine
