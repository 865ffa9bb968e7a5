#include <doctest.h>

#include "affine/geometry.hpp"

using namespace affine;

TEST_SUITE("geometry")
{
    TEST_CASE("lattice determinant and identity")
    {
        Lattice l({2.0, -0.5});
        CHECK(l.dim() == 2);
        CHECK(l.det() == doctest::Approx(-1.0));
        CHECK(l.absDet() == doctest::Approx(1.0));
        CHECK_FALSE(l.isIdentity());
        CHECK(Lattice::identity(1).isIdentity());
        CHECK_THROWS_AS(Lattice({0.0}), Error);
        CHECK_THROWS_AS(Lattice({1.0, 1.0, 1.0}), Error);
    }

    TEST_CASE("half-open boxes")
    {
        auto b = Box::cube(2, -1.0, 1.0);
        CHECK(b.volume() == doctest::Approx(4.0));
        CHECK(b.contains({-1.0, 0.0}));
        CHECK_FALSE(b.contains({1.0, 0.0}));
        auto c = Box::cube(2, 0.0, 3.0);
        CHECK(b.intersects(c));
        auto i = b.intersect(c);
        CHECK(i.lo[0] == 0.0);
        CHECK(i.hi[1] == 1.0);
        CHECK_FALSE(b.intersects(Box::cube(2, 1.0, 2.0)));
        CHECK(Box::cube(1, -4, 4).containsBox(Box::cube(1, -1, 1)));
        CHECK_THROWS_AS(Box(1, {1.0, 0.0}, {0.0, 0.0}), Error);
    }

    TEST_CASE("dilation schedules")
    {
        auto s = dyadicSchedule(2.0, 4);
        CHECK(s.J() == 4);
        CHECK(s.alpha(1) == 2.0);
        CHECK(s.alpha(4) == 16.0);
        CHECK(s.delta() == 0.5);
        CHECK(s.exponential());
        auto e = checkExponentialExpansion(s);
        CHECK(e.holds);
        CHECK(e.delta == doctest::Approx(0.5));

        DilationSchedule lin({1.0, 2.0, 3.0, 4.0});
        CHECK_FALSE(lin.exponential());
        CHECK(checkExponentialExpansion(lin).delta == doctest::Approx(0.75));

        CHECK_THROWS_AS(DilationSchedule({2.0, 2.0}), Error);
        CHECK_THROWS_AS(DilationSchedule({2.0, -1.0}), Error);
        CHECK_THROWS_AS(checkExponentialExpansion(DilationSchedule({2.0})), Error);
        DilationSchedule neg({-2.0, -4.0});
        CHECK(neg.alpha(1) == -2.0);
    }

    TEST_CASE("touching ranges use open intersection")
    {
        // (k, k+1)/2 meets (0, 1) for k = 0, 1
        auto r = touchingRange(1.0, 2.0, 0.0, 1.0, 0.0, 1.0);
        CHECK(r.lo == 0);
        CHECK(r.hi == 1);
        // tent translates (k, k+2) meeting (-1, 1)
        auto t = touchingRange(1.0, 1.0, 0.0, 2.0, -1.0, 1.0);
        CHECK(t.lo == -2);
        CHECK(t.hi == 0);
        // negative dilation reverses the translate
        auto n = touchingRange(1.0, -2.0, 0.0, 1.0, 0.0, 1.0);
        CHECK(n.lo == -2);
        CHECK(n.hi == -1);
    }

    TEST_CASE("lattice points touching, row-major")
    {
        Lattice l({1.0, 1.0});
        auto s = dyadicSchedule(2.0, 1);
        auto pts = latticePointsTouching(l, Box::cube(2, 0.0, 1.0), Box::cube(2, 0.0, 1.0), 1, s);
        REQUIRE(pts.size() == 4);
        CHECK(pts[0] == Index{0, 0});
        CHECK(pts[1] == Index{0, 1});
        CHECK(pts[2] == Index{1, 0});
        CHECK(pts[3] == Index{1, 1});
    }
}
