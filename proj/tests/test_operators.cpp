#include <doctest.h>

#include <cmath>

#include "affine/operators.hpp"
#include "affine/rng.hpp"

using namespace affine;

namespace {

OperatorContext indicatorContext(const Grid& g, double p, int J = 4)
{
    Lattice l({1.0});
    return OperatorContext(Synthesizer::indicator(l), Synthesizer::indicator(l, true), l, dyadicSchedule(2.0, J),
                           NormParams(p), g);
}

GridField gauss(const Grid& g, double c = 0.0)
{
    return GridField::sample(g, [c](const Point& x) { return Complex(std::exp(-M_PI * (x[0] - c) * (x[0] - c)), 0.0); });
}

GridField atom(const Grid& g)
{
    return gauss(g, -0.5) - gauss(g, 0.5);
}

}  // namespace

TEST_SUITE("operators")
{
    TEST_CASE("single-scale synthesis values")
    {
        Grid g(Box::cube(1, 0.0, 4.0), 64);
        auto ctx = indicatorContext(g, 2.0);
        SeqMap s{{Index{3, 0}, 1.0}};
        auto f = synthesizeScale(ctx, 1, s);
        // |2|^{1/2} on [3/2, 2)
        CHECK(f[24].real() == doctest::Approx(std::sqrt(2.0)));
        CHECK(f[31].real() == doctest::Approx(std::sqrt(2.0)));
        CHECK(f[32].real() == 0.0);
        CHECK(lpNorm(f, 2.0) == doctest::Approx(1.0));
        CHECK(lpNorm(synthesizeScale(ctx, 1, {}), 2.0) == 0.0);
        SeqMap far{{Index{50, 0}, 1.0}};
        CHECK_THROWS_AS(synthesizeScale(ctx, 1, far), Error);
    }

    TEST_CASE("indicator analysis is exact on cell averages")
    {
        Grid g(Box::cube(1, 0.0, 4.0), 64);
        auto ctx = indicatorContext(g, 1.0);
        auto f = GridField::sample(g, [](const Point& x) { return Complex(x[0] < 1.0 ? 2.0 : 0.0, 0.0); });
        auto T = analyzeScale(ctx, 1, f);
        // p = 1: T_k = <f, 1_{[0,1)}(2x - k)> |2|^0 = 2 * 1/2 on k = 0, 1
        CHECK(T.size() == 2);
        CHECK(T.at({0, 0}).real() == doctest::Approx(1.0));
        CHECK(T.at({1, 0}).real() == doctest::Approx(1.0));
        // S_j T_j reproduces piecewise constants on the dyadic cells
        auto r = synthesizeScale(ctx, 1, T);
        CHECK(lpNorm(r - f, 1.0) < 1e-14);
    }

    TEST_CASE("partial translates with mass are refused")
    {
        Grid g(Box::cube(1, 0.0, 4.0), 64);
        Lattice l({1.0});
        OperatorContext ctx(Synthesizer::tent(1), Synthesizer::tent(1), l, dyadicSchedule(2.0, 2), NormParams(2.0), g);
        auto one = GridField::sample(g, [](const Point&) { return Complex(1.0, 0.0); });
        CHECK_THROWS_AS(analyzeScale(ctx, 1, one), Error);
        auto inner = GridField::sample(g, [](const Point& x) { return Complex(std::exp(-40 * (x[0] - 2) * (x[0] - 2)), 0.0); });
        CHECK_NOTHROW(analyzeScale(ctx, 1, inner));
    }

    TEST_CASE("homogeneity")
    {
        Grid g(Box::cube(1, -8.0, 8.0), 1024);
        auto ctx = indicatorContext(g, 2.0);
        auto f = gauss(g);
        auto a = analyze(ctx, 3.0 * f, 3);
        auto b = analyze(ctx, f, 3);
        b *= 3.0;
        for (int j = 1; j <= 3; ++j)
            for (auto& [k, v] : b.scale(j))
                CHECK(std::abs(a.get(j, k) - v) <= 1e-15 * std::abs(v) + 1e-300);
        auto sa = scaleAveragedApprox(ctx, 3.0 * f, 3).field;
        auto sb = 3.0 * scaleAveragedApprox(ctx, f, 3).field;
        CHECK(lpNorm(sa - sb, INFINITY) < 1e-14);
    }

    TEST_CASE("synthesis bound for a random sequence")
    {
        Grid g(Box::cube(1, -16.0, 16.0), 2048);
        Lattice l({1.0});
        OperatorContext ctx(Synthesizer::tent(1), Synthesizer::indicator(l, true), l, dyadicSchedule(2.0, 3),
                            NormParams(4.0), g);
        Rng rng(7);
        CoeffArray c(1, 3);
        for (int j = 1; j <= 3; ++j)
            for (int i = 0; i < 6; ++i)
                c.set(j, {rng.integer(-10, 10), 0}, rng.normal());
        double Q = periodizationMajorantNorm(ctx.psi, l, 4.0);
        CHECK(lpNorm(synthesize(ctx, c), 4.0) <= Q * mixedNorm(c, 4.0) * (1 + 1e-6));
        auto parts = synthesizeWithPartials(ctx, c);
        CHECK(parts.partial.size() == 3);
        CHECK(lpNorm(parts.partial.back() - parts.field, INFINITY) == 0.0);
    }

    TEST_CASE("coefficients for the Cesaro mean")
    {
        Grid g(Box::cube(1, -8.0, 8.0), 2048);
        auto ctx = indicatorContext(g, 2.0, 4);
        auto f = gauss(g);
        auto c = constructCoefficients(ctx, f, 4);
        auto s = synthesize(ctx, c);
        auto a = scaleAveragedApprox(ctx, f, 4);
        CHECK(lpNorm(s - a.field, INFINITY) < 1e-14);
        CHECK(a.warnings.empty());
        auto lin = ctx.withSchedule(DilationSchedule({2.0, 3.0, 4.0, 5.0}));
        CHECK_FALSE(scaleAveragedApprox(lin, f, 2).warnings.empty());
    }

    TEST_CASE("masking keeps synthesis inside the region")
    {
        Grid g(Box::cube(1, -4.0, 4.0), 512);
        Lattice l({1.0});
        OperatorContext ctx(Synthesizer::tent(1), Synthesizer::indicator(l, true), l, dyadicSchedule(2.0, 3),
                            NormParams(2.0), g);
        auto f = gauss(g);
        auto c = constructCoefficients(ctx, f, 3);
        Box omega = Box::cube(1, -1.0, 1.0);
        auto m = maskAdapted(ctx, c, omega);
        CHECK(m.nnz() < c.nnz());
        auto s = synthesize(ctx, m);
        for (std::int64_t i = 0; i < g.n(0); ++i)
            if (!omega.contains({g.coord(0, i), 0.0}))
                CHECK(s[i] == Complex(0.0, 0.0));
        CHECK_THROWS_AS(maskAdapted(ctx.withPsi(Synthesizer::gaussian(1, 1.0)), c, omega), Error);
    }

    TEST_CASE("Riesz commutators")
    {
        Grid g(Box::cube(1, -32.0, 32.0), 4096);
        Lattice l({1.0});
        OperatorContext ctx(Synthesizer::gaussian(1, 1.0), Synthesizer::bandlimited(CutoffSpec(), l), l,
                            dyadicSchedule(2.0, 2), NormParams(2.0), g);
        SeqMap s{{Index{0, 0}, 1.0}, {Index{1, 0}, -2.0}, {Index{3, 0}, 1.0}};
        CHECK(rieszSynthCommutatorResidual(ctx, s) < 2e-3);
        CHECK(rieszSynthCommutatorResidual(ctx, {}) == 0.0);
        SeqMap bad{{Index{0, 0}, 1.0}};
        CHECK_THROWS_AS(rieszSynthCommutatorResidual(ctx, bad), Error);
        auto f = atom(g);
        CHECK(rieszAnalysisCommutatorResidual(ctx, f, 1) < 1e-3);
        CHECK_THROWS_AS(rieszAnalysisCommutatorResidual(ctx.withPhi(Synthesizer::indicator(l, true)), f, 1), Error);
        RieszAnalysisOptions o;
        o.padding = 3;
        CHECK_THROWS_AS(rieszAnalysisCommutatorResidual(ctx, f, 1, o), Error);
    }

    TEST_CASE("difference and derivative commutators")
    {
        Grid g(Box::cube(1, -16.0, 16.0), 2048);
        Lattice l({1.0});
        OperatorContext ctx(Synthesizer::bspline(2, Synthesizer::indicator(l), l), Synthesizer::indicator(l, true), l,
                            dyadicSchedule(2.0, 3), NormParams(2.0), g);
        auto f = gauss(g, 0.2);
        for (int j = 1; j <= 3; ++j)
            CHECK(diffAnalysisCommutatorResidual(ctx, f, j, {1, 0}) < 1e-12);
        CoeffArray c(1, 3);
        c.set(1, {0, 0}, 1.0);
        c.set(2, {3, 0}, -0.5);
        c.set(3, {-7, 0}, 2.0);
        CHECK(derivSynthCommutatorResidual(ctx, {0, 0}, c) == 0.0);
        CHECK(derivSynthCommutatorResidual(ctx, {1, 0}, c) < 1e-12);
        CHECK(derivSynthCommutatorResidual(ctx, {2, 0}, c) < 1e-12);
        CHECK_THROWS_AS(derivSynthCommutatorResidual(ctx, {3, 0}, c), Error);
        CHECK_THROWS_AS(derivSynthCommutatorResidual(ctx.withPsi(Synthesizer::tent(1)), {1, 0}, c), Error);
        // Delta_alpha of exp(-pi x^2) against its exact difference quotient
        auto dq = differenceQuotient(gauss(g), 4.0, {1, 0});
        auto ex = GridField::sample(g, [](const Point& x) {
            return Complex(4.0 * (std::exp(-M_PI * x[0] * x[0]) - std::exp(-M_PI * (x[0] - 0.25) * (x[0] - 0.25))), 0.0);
        });
        CHECK(lpNorm(dq - ex, INFINITY) < 1e-14);
        CHECK_THROWS_AS(differenceQuotient(f, 3.0, {1, 0}), Error);
    }

    TEST_CASE("frame reconstruction and Hardy approximation")
    {
        Grid g(Box::cube(1, -8.0, 8.0), 4096);
        auto ctx = indicatorContext(g, 2.0, 6);
        auto f = gauss(g);
        auto fr = frameReconstruct(ctx, f, 6);
        CHECK(fr.cesaroTrace.size() == 6);
        for (size_t i = 1; i < fr.cesaroTrace.size(); ++i)
            CHECK(fr.cesaroTrace[i] < fr.cesaroTrace[i - 1]);
        CHECK(lpNorm(fr.approx - scaleAveragedApprox(ctx, f, 6).field, INFINITY) < 1e-14);

        Grid gh(Box::cube(1, -32.0, 32.0), 4096);
        Lattice l({1.0});
        OperatorContext hc(Synthesizer::tent(1), Synthesizer::bandlimited(CutoffSpec(), l), l, dyadicSchedule(2.0, 4),
                           NormParams(1.0), gh);
        CHECK(hardyScaleAveraged(hc, atom(gh), 3, HardyMode::constantPeriodization).warnings.empty());
        CHECK_FALSE(hardyScaleAveraged(hc, gauss(gh), 3, HardyMode::scaleAveraged).warnings.empty());
        auto zero = hardyScaleAveraged(hc, GridField(gh), 2, HardyMode::scaleAveraged);
        CHECK(lpNorm(zero.field, 1.0) == 0.0);
    }

    TEST_CASE("Sobolev scale averaging")
    {
        Grid g(Box::cube(1, -8.0, 8.0), 2048);
        Lattice l({1.0});
        OperatorContext ctx(Synthesizer::bspline(1, Synthesizer::indicator(l), l), Synthesizer::indicator(l, true), l,
                            dyadicSchedule(2.0, 4), NormParams(2.0), g);
        auto f = gauss(g);
        auto m0 = sobolevScaleAveraged(ctx, f, 3, 0, 2.0);
        CHECK(m0.values() == scaleAveragedApprox(ctx, f, 3).field.values());
        CHECK_THROWS_AS(sobolevScaleAveraged(ctx, f, 3, 2, 2.0), Error);
        double e2 = sobolevNorm(sobolevScaleAveraged(ctx, f, 2, 1, 2.0) - f, 1, 2.0);
        double e4 = sobolevNorm(sobolevScaleAveraged(ctx, f, 4, 1, 2.0) - f, 1, 2.0);
        CHECK(e4 < e2);
    }
}
