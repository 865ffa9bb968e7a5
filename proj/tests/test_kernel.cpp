#include <doctest.h>

#include <cmath>
#include <sstream>

#include "affine/sequences.hpp"

using namespace affine;

TEST_SUITE("kernel")
{
    TEST_CASE("one-dimensional coefficients against quadrature")
    {
        auto z = discreteRieszKernel(CutoffSpec(), Lattice({1.0}), 64);
        CHECK(z.at({0, 0})[0] == Complex(0.0, 0.0));
        CHECK(z.antisymmetryDefect() <= 1e-12);
        CHECK(z.refinementGap <= 1e-8);
        // 2 int nu(xi) sin(2 pi k xi), 30-digit quadrature
        CHECK(z.at({1, 0})[0].real() == doctest::Approx(0.31830988618379067).epsilon(1e-12));
        CHECK(z.at({2, 0})[0].real() == doctest::Approx(0.29815587793149134).epsilon(1e-12));
        CHECK(z.at({3, 0})[0].real() == doctest::Approx(0.10610329539459689).epsilon(1e-12));
        CHECK(z.at({10, 0})[0].real() == doctest::Approx(0.028837225875782968).epsilon(1e-11));
        CHECK(z.at({-2, 0})[0].real() == doctest::Approx(-0.29815587793149134).epsilon(1e-12));
        CHECK(std::abs(z.at({5, 0})[0].imag()) < 1e-15);
        CHECK(z.at({65, 0})[0] == Complex(0.0, 0.0));
    }

    TEST_CASE("lattice sign and scale")
    {
        auto z1 = discreteRieszKernel(CutoffSpec(), Lattice({1.0}), 16);
        auto z2 = discreteRieszKernel(CutoffSpec(), Lattice({2.0}), 16);
        auto zm = discreteRieszKernel(CutoffSpec(), Lattice({-1.0}), 16);
        for (std::int64_t k = -16; k <= 16; ++k) {
            CHECK(z2.at({k, 0})[0] == z1.at({k, 0})[0]);
            CHECK(zm.at({k, 0})[0] == -z1.at({k, 0})[0]);
        }
    }

    TEST_CASE("symbol reproduces the Riesz multiplier inside the plateau")
    {
        auto z = discreteRieszKernel(CutoffSpec(), Lattice({1.0}), 1024);
        // the truncated sum oscillates like the Fourier series of a jump; away from 0 it is close
        CHECK(std::abs(kernelSymbol(z, {0.1, 0.0}, 0) - Complex(0.0, -1.0)) < 5e-3);
        CHECK(std::abs(kernelSymbol(z, {-0.1, 0.0}, 0) - Complex(0.0, 1.0)) < 5e-3);
        CHECK(std::abs(kernelSymbol(z, {0.45, 0.0}, 0)) < 5e-3);
    }

    TEST_CASE("two-dimensional coefficients against quadrature")
    {
        auto z = discreteRieszKernel(CutoffSpec(), Lattice({1.0, 1.0}), 4);
        CHECK(z.antisymmetryDefect() <= 1e-12);
        CHECK(z.refinementGap <= 1e-8);
        // adaptive Cartesian quadrature of eta_t/|eta| nu(eta) sin(2 pi eta.k)
        CHECK(z.at({1, 0})[0].real() == doctest::Approx(0.11935249364370738).epsilon(1e-8));
        CHECK(std::abs(z.at({1, 0})[1]) < 1e-12);
        CHECK(z.at({1, 1})[0].real() == doctest::Approx(0.08179571480187775).epsilon(1e-8));
        CHECK(z.at({2, 1})[1].real() == doctest::Approx(0.01740078688130084).epsilon(1e-7));
        CHECK(z.at({2, 1})[0].real() == doctest::Approx(0.07024330715264977).epsilon(1e-8));
        CHECK(z.at({1, 2})[1].real() == doctest::Approx(0.07024330715264977).epsilon(1e-8));
    }

    TEST_CASE("discretized kernels")
    {
        auto h = hilbertSequence(8);
        CHECK(h.at({4, 0})[0].real() == doctest::Approx(1.0 / (4 * M_PI)));
        auto d1 = discretizedRieszKernel(Lattice({1.0}), 8);
        CHECK(d1.at({3, 0})[0] == h.at({3, 0})[0]);
        CHECK(rieszConstant(2) == doctest::Approx(1.0 / (2 * M_PI)));
        auto d2 = discretizedRieszKernel(Lattice({1.0, 1.0}), 3);
        CHECK(d2.at({1, 0})[0].real() == doctest::Approx(1.0 / (2 * M_PI)));
        CHECK(d2.at({0, 0})[1] == Complex(0.0, 0.0));
        CHECK_THROWS_AS(discreteRieszKernel(CutoffSpec(), Lattice({1.0}), 0), Error);
    }

    TEST_CASE("CSV export carries provenance")
    {
        auto z = discreteRieszKernel(CutoffSpec(), Lattice({1.0}), 2);
        std::ostringstream os;
        writeKernelCsv(z, os);
        auto s = os.str();
        CHECK(s.find("# kind=cutoff") == 0);
        CHECK(s.find("# K=2") != std::string::npos);
        CHECK(s.find("k0,re0,im0") != std::string::npos);
        CHECK(s.find("\n-2,") != std::string::npos);
    }
}
