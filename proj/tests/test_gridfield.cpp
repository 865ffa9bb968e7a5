#include <doctest.h>

#include <cmath>
#include <sstream>

#include "affine/gridfield.hpp"

using namespace affine;

namespace {

GridField gauss(const Grid& g)
{
    return GridField::sample(g, [](const Point& x) { return Complex(std::exp(-M_PI * x[0] * x[0]), 0.0); });
}

}  // namespace

TEST_SUITE("gridfield")
{
    TEST_CASE("grid geometry")
    {
        Grid g(Box::cube(1, -2.0, 2.0), 8);
        CHECK(g.h(0) == 0.5);
        CHECK(g.coord(0, 3) == -0.5);
        CHECK(g.freq(0, 1) == 0.25);
        CHECK(g.freq(0, 4) == -1.0);  // Nyquist on the negative side
        CHECK(g.freq(0, 7) == -0.25);
        CHECK_THROWS_AS(Grid(Box::cube(1, 0, 1), 6), Error);
        Grid g2(Box::cube(2, 0, 1), 4);
        CHECK(g2.size() == 16);
        CHECK(g2.cellVolume() == doctest::Approx(1.0 / 16));
    }

    TEST_CASE("non-finite samples are rejected")
    {
        Grid g(Box::cube(1, 0, 1), 4);
        CHECK_THROWS_AS(GridField::sample(g, [](const Point&) { return Complex(NAN, 0.0); }), Error);
    }

    TEST_CASE("lp norms")
    {
        Grid g(Box::cube(1, 0.0, 2.0), 64);
        auto one = GridField::sample(g, [](const Point&) { return Complex(1.0, 0.0); });
        CHECK(lpNorm(one, 1.0) == doctest::Approx(2.0));
        CHECK(lpNorm(one, 2.0) == doctest::Approx(std::sqrt(2.0)));
        CHECK(lpNorm(one, INFINITY) == 1.0);
        CHECK_THROWS_WITH(lpNorm(one, 0.5), "p out of range");
        CHECK(lpNorm(GridField(g), 3.0) == 0.0);
    }

    TEST_CASE("spectral derivative and Riesz transform of trigonometric fields")
    {
        Grid g(Box::cube(1, 0.0, 1.0), 64);
        auto c = GridField::sample(g, [](const Point& x) { return Complex(std::cos(2 * M_PI * x[0]), 0.0); });
        auto s = GridField::sample(g, [](const Point& x) { return Complex(std::sin(2 * M_PI * x[0]), 0.0); });
        auto ds = spectralDerivative(s, {1, 0});
        CHECK(lpNorm(ds - 2 * M_PI * c, INFINITY) < 1e-12);
        auto rc = rieszTransform(c);
        REQUIRE(rc.components.size() == 1);
        CHECK(lpNorm(rc.components[0] - s, INFINITY) < 1e-14);
    }

    TEST_CASE("Hardy norm flags a nonzero mean")
    {
        Grid g(Box::cube(1, -16.0, 16.0), 4096);
        auto f = gauss(g);
        auto h = h1Norm(f);
        CHECK(h.meanWarning);
        CHECK(h.mean.real() == doctest::Approx(1.0));
        auto a = GridField::sample(g, [](const Point& x) {
            return Complex(std::exp(-M_PI * (x[0] + 0.5) * (x[0] + 0.5)) - std::exp(-M_PI * (x[0] - 0.5) * (x[0] - 0.5)),
                           0.0);
        });
        auto ha = h1Norm(a);
        CHECK_FALSE(ha.meanWarning);
        CHECK(ha.value == doctest::Approx(ha.l1 + ha.riesz));
    }

    TEST_CASE("Sobolev norm of a Gaussian")
    {
        // ||g||_2 + ||g'||_2 for g = exp(-pi x^2), closed form 2^{-1/4} + (pi / sqrt 2)^{1/2}
        Grid g(Box::cube(1, -8.0, 8.0), 1024);
        CHECK(sobolevNorm(gauss(g), 1, 2.0) == doctest::Approx(2.3313465046828048).epsilon(1e-12));
        CHECK(sobolevNorm(gauss(g), 0, 2.0) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-12));
        auto idx = multiIndices(2, 2);
        CHECK(idx.size() == 6);
        CHECK(idx[0] == MultiIndex{0, 0});
    }

    TEST_CASE("periodization")
    {
        Grid g(Box::cube(1, -4.0, 4.0), 256);
        auto f = gauss(g);
        auto p = periodize(f, Lattice({1.0}));
        CHECK(p.grid().n(0) == 32);
        // P g = sum_k exp(-pi (x-k)^2), theta value at x = 0
        CHECK(p[0].real() == doctest::Approx(1.086434811213308).epsilon(1e-12));
        CHECK_THROWS_AS(periodize(f, Lattice({0.3})), Error);
        auto q = periodize(f, Lattice({-1.0}));
        CHECK(q.grid().box().lo[0] == -1.0);
    }

    TEST_CASE("rescaling by the lattice")
    {
        Grid g(Box::cube(1, -4.0, 4.0), 64);
        auto f = gauss(g);
        Lattice b({2.0});
        auto m = rescaleMb(f, b, false);
        CHECK(m.grid().box().lo[0] == -2.0);
        auto back = rescaleMb(m, b, true);
        CHECK(back.values() == f.values());
        CHECK_THROWS_AS(rescaleMb(f, Lattice({-1.0}), false), Error);
    }

    TEST_CASE("zero-filled shifts")
    {
        Grid g(Box::cube(1, 0.0, 1.0), 8);
        auto f = GridField::sample(g, [](const Point& x) { return Complex(x[0] + 1.0, 0.0); });
        auto s = shiftZeroFill(f, 0, 2);
        CHECK(s[0] == Complex(0.0, 0.0));
        CHECK(s[2] == f[0]);
        auto u = shiftZeroFill(f, 0, -1);
        CHECK(u[0] == f[1]);
        CHECK(u[7] == Complex(0.0, 0.0));
    }

    TEST_CASE("binary and CSV round trips are exact")
    {
        Grid g(Box(2, {-1.0, 0.0}, {1.0, 0.5}), {4, 8});
        auto f = GridField::sample(g, [](const Point& x) { return Complex(std::sin(x[0] * 3.1), x[1] / 3.0); }, "demo");
        std::stringstream bin;
        writeBinary(f, bin);
        auto a = readBinary(bin);
        CHECK(a.grid() == g);
        CHECK(a.values() == f.values());
        CHECK(a.meta() == "demo");
        std::stringstream csv;
        writeCsv(f, csv);
        auto b = readCsv(csv);
        CHECK(b.grid() == g);
        CHECK(b.values() == f.values());
        std::stringstream bad("XXXX");
        CHECK_THROWS_AS(readBinary(bad), Error);
    }

    TEST_CASE("homogeneity of multipliers")
    {
        Grid g(Box::cube(1, -8.0, 8.0), 512);
        auto f = gauss(g);
        auto a = rieszTransform(3.0 * f).components[0];
        auto b = 3.0 * rieszTransform(f).components[0];
        CHECK(lpNorm(a - b, INFINITY) < 1e-14);
    }
}
