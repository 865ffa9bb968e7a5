#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "affine/geometry.hpp"

namespace affine {

using Complex = std::complex<double>;

// Uniform grid on a half-open box, n a power of two per axis.
class Grid {
public:
    Grid(const Box& box, std::array<std::int64_t, kMaxDim> n);
    Grid(const Box& box, std::int64_t n);

    int dim() const { return box_.d; }
    const Box& box() const { return box_; }
    std::int64_t n(int t) const { return n_[t]; }
    const std::int64_t* nData() const { return n_.data(); }
    double h(int t) const { return h_[t]; }
    double cellVolume() const;
    std::int64_t size() const;

    double coord(int t, std::int64_t i) const { return box_.lo[t] + static_cast<double>(i) * h_[t]; }
    // frequency l/L of DFT index i, Nyquist mapped to the negative side
    double freq(int t, std::int64_t i) const;
    std::int64_t flat(std::int64_t i0, std::int64_t i1) const { return i0 * n_[1] + i1; }

    bool operator==(const Grid& o) const;

private:
    Box box_;
    std::array<std::int64_t, kMaxDim> n_{1, 1};
    Point h_{1.0, 1.0};
};

class GridField {
public:
    explicit GridField(const Grid& g, std::string meta = {});
    GridField(const Grid& g, std::vector<Complex> values, std::string meta = {});

    // samples of a function on the grid
    static GridField sample(const Grid& g, const std::function<Complex(const Point&)>& f,
                            std::string meta = {});

    const Grid& grid() const { return grid_; }
    const std::vector<Complex>& values() const { return v_; }
    std::vector<Complex>& values() { return v_; }
    Complex& operator[](std::int64_t i) { return v_[i]; }
    Complex operator[](std::int64_t i) const { return v_[i]; }
    const std::string& meta() const { return meta_; }
    void setMeta(std::string m) { meta_ = std::move(m); }

    GridField& operator+=(const GridField& o);
    GridField& operator-=(const GridField& o);
    GridField& operator*=(Complex s);
    Complex integral() const;

private:
    Grid grid_;
    std::vector<Complex> v_;
    std::string meta_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(Complex s, GridField a);

struct VectorField {
    std::vector<GridField> components;

    const Grid& grid() const { return components.at(0).grid(); }
    // pointwise Euclidean length
    GridField length() const;
};

double lpNorm(const GridField& f, double p);
double lpNorm(const VectorField& f, double p);

GridField periodize(const GridField& f, const Lattice& lat);

using Multiplier = std::function<Complex(const Point& xi)>;

GridField fourierMultiplier(const GridField& f, const Multiplier& m);
VectorField fourierMultiplier(const GridField& f, const std::vector<Multiplier>& m);

Complex rieszSymbol(const Point& xi, int d, int t);
VectorField rieszTransform(const GridField& f);

struct HardyNorm {
    double value = 0.0;
    double l1 = 0.0;
    double riesz = 0.0;
    Complex mean{0.0, 0.0};
    bool meanWarning = false;
};

HardyNorm h1Norm(const GridField& f, double tolerance = 1e-6);

GridField spectralDerivative(const GridField& f, const MultiIndex& rho);
std::vector<MultiIndex> multiIndices(int d, int m);  // all |rho| <= m, graded order
double sobolevNorm(const GridField& f, int m, double p);

GridField rescaleMb(const GridField& f, const Lattice& lat, bool inverse);

// shift by s grid steps along axis t: g(x) = f(x - s h), zero filled
GridField shiftZeroFill(const GridField& f, int t, std::int64_t s);

void writeBinary(const GridField& f, std::ostream& os);
GridField readBinary(std::istream& is);
void writeCsv(const GridField& f, std::ostream& os);
GridField readCsv(std::istream& is);

}  // namespace affine
