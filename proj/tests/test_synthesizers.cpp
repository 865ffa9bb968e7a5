#include <doctest.h>

#include <cmath>

#include "affine/cutoff.hpp"
#include "affine/synthesizers.hpp"

using namespace affine;

TEST_SUITE("synthesizers")
{
    TEST_CASE("norm parameters")
    {
        CHECK(NormParams(2.0).q == 2.0);
        CHECK(NormParams(1.0).q == INFINITY);
        CHECK(NormParams(INFINITY).q == 1.0);
        CHECK(NormParams(4.0).q == doctest::Approx(4.0 / 3.0));
        CHECK_THROWS_WITH(NormParams(0.5), "p out of range");
    }

    TEST_CASE("cardinal B-splines")
    {
        CHECK(cardinalBSpline(1, 0.0) == 1.0);
        CHECK(cardinalBSpline(1, 1.0) == 0.0);
        CHECK(cardinalBSpline(2, 1.0) == doctest::Approx(1.0));
        CHECK(cardinalBSpline(3, 1.5) == doctest::Approx(0.75));
        CHECK(cardinalBSpline(4, 2.0) == doctest::Approx(2.0 / 3.0));
        CHECK(cardinalBSpline(4, -0.1) == 0.0);
        CHECK(cardinalBSplineDerivative(3, 0.5, 1) == doctest::Approx(0.5));
        CHECK(cardinalBSplineDerivative(3, 2.5, 1) == doctest::Approx(-0.5));
        CHECK(cardinalBSplineDerivative(3, 1.2, 2) == doctest::Approx(-2.0));
    }

    TEST_CASE("shapes and integrals")
    {
        auto ind = Synthesizer::indicator(Lattice({2.0}), true);
        CHECK(ind.evaluate({1.0, 0.0}) == doctest::Approx(0.5));
        CHECK(ind.integral() == doctest::Approx(1.0));
        auto neg = Synthesizer::indicator(Lattice({-2.0}));
        CHECK(neg.evaluate({-1.0, 0.0}) == 1.0);
        CHECK(neg.evaluate({1.0, 0.0}) == 0.0);
        auto tent = Synthesizer::tent(1);
        CHECK(tent.evaluate({1.0, 0.0}) == doctest::Approx(1.0));
        CHECK(tent.evaluate({0.5, 0.0}) == doctest::Approx(0.5));
        auto g = Synthesizer::gaussian(2, 1.0);
        CHECK(g.integral() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_FALSE(g.compact());
        auto mh = Synthesizer::mexicanHat();
        CHECK(mh.evaluate({0.0, 0.0}) == 1.0);
        CHECK_THROWS_AS(parseSynthesizer("mexican-hat", Lattice({1.0, 1.0})), Error);
    }

    TEST_CASE("convolution-form synthesizers")
    {
        Lattice l({1.0});
        auto ind = Synthesizer::indicator(l);
        auto b1 = Synthesizer::bspline(1, ind, l);
        for (double x : {0.1, 0.7, 1.3, 1.9})
            CHECK(b1.evaluate({x, 0.0}) == doctest::Approx(cardinalBSpline(2, x)));
        auto b2 = Synthesizer::bspline(2, ind, l);
        CHECK(b2.evaluate({1.5, 0.0}) == doctest::Approx(0.75));
        CHECK(b2.derivative({0.5, 0.0}, {1, 0}) == doctest::Approx(0.5));
        auto e = etaRho({1, 0}, 2, ind, l);
        CHECK(e.order(0) == 1);
        CHECK_THROWS_AS(etaRho({3, 0}, 2, ind, l), Error);
        // gaussian inner: beta * g integrates to one
        auto bg = Synthesizer::bspline(1, Synthesizer::gaussian(1, 1.0), l);
        CHECK(bg.integral() == doctest::Approx(1.0).epsilon(1e-9));
        // beta * g at 1/2 equals int_0^1 g(1/2 - v) dv = erf(sqrt(pi)/2)
        CHECK(bg.evaluate({0.5, 0.0}) == doctest::Approx(std::erf(std::sqrt(M_PI) / 2.0)).epsilon(1e-12));
    }

    TEST_CASE("band-limited analyzer")
    {
        Lattice l({1.0});
        auto b = Synthesizer::bandlimited(CutoffSpec(), l);
        // phi(0) = int nu = 2 (1/8 + 1/8) by the ramp symmetry
        CHECK(b.evaluate({0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(b.integral() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_THROWS_AS(CutoffSpec(0.4, 0.3), Error);
        CHECK(cutoffInverseL1(CutoffSpec(), 1) == doctest::Approx(1.4478454934).epsilon(1e-4));
        CHECK(smoothStep(0.5) == doctest::Approx(0.5));
        CHECK(smoothStep(0.0) == 0.0);
        CHECK(smoothStep(1.0) == 1.0);
    }

    TEST_CASE("periodization majorant norms")
    {
        Lattice l({1.0});
        CHECK(periodizationMajorantNorm(Synthesizer::indicator(l), l, 2.0) == doctest::Approx(1.0));
        CHECK(periodizationMajorantNorm(Synthesizer::tent(1), l, 4.0) == doctest::Approx(1.0));
        auto g = Synthesizer::gaussian(1, 1.0);
        // sup of sum_k exp(-pi (x-k)^2) is the theta value pi^{1/4} / Gamma(3/4)
        CHECK(periodizationMajorantNorm(g, l, INFINITY) == doctest::Approx(1.086434811213308).epsilon(1e-12));
        CHECK(periodizationMajorantNorm(g, l, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        Lattice l2({0.5, 2.0});
        // P of the cell indicator is |det b| = 1
        CHECK(periodizationMajorantNorm(Synthesizer::indicator(l2), l2, 2.0) == doctest::Approx(1.0));
        CHECK_THROWS_WITH(periodizationMajorantNorm(g, l, 0.9), "p out of range");
    }

    TEST_CASE("spec strings")
    {
        Lattice l({1.0});
        CHECK(parseSynthesizer("indicator:normalized", l).normalized());
        CHECK(parseSynthesizer("gaussian:w=2", l).width() == 2.0);
        CHECK(parseSynthesizer("bspline:m=2:inner=gaussian:w=1", l).order(0) == 2);
        CHECK(parseSynthesizer("bandlimited:inner=0.1:outer=0.3", l).cutoff().outer == 0.3);
        CHECK_THROWS_AS(parseSynthesizer("sinc", l), Error);
        CHECK_THROWS_AS(parseSynthesizer("gaussian:w=-1", l), Error);
    }
}
