#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace affine {

constexpr int kMaxDim = 2;

using Index = std::array<std::int64_t, kMaxDim>;
using Point = std::array<double, kMaxDim>;
using MultiIndex = std::array<int, kMaxDim>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void checkDim(int d);
int order(const MultiIndex& rho);

// Diagonal translation matrix b.
class Lattice {
public:
    explicit Lattice(std::vector<double> diag);
    static Lattice identity(int d);

    int dim() const { return d_; }
    double b(int t) const { return b_[t]; }
    double det() const { return det_; }
    double absDet() const;
    bool isIdentity() const;

private:
    int d_;
    std::array<double, kMaxDim> b_{1.0, 1.0};
    double det_;
};

// Half-open box [lo, hi).
struct Box {
    int d = 1;
    Point lo{0.0, 0.0};
    Point hi{1.0, 1.0};

    Box() = default;
    Box(int dim, Point l, Point h);
    static Box cube(int dim, double l, double h);

    double side(int t) const { return hi[t] - lo[t]; }
    double volume() const;
    bool contains(const Point& x) const;
    bool containsBox(const Box& o) const;
    bool intersects(const Box& o) const;
    Box intersect(const Box& o) const;
};

// a_j = alpha_j I, j = 1..J
class DilationSchedule {
public:
    DilationSchedule(std::vector<double> alphas, double delta);
    explicit DilationSchedule(std::vector<double> alphas);

    int J() const { return static_cast<int>(alphas_.size()); }
    double alpha(int j) const { return alphas_.at(j - 1); }
    const std::vector<double>& alphas() const { return alphas_; }
    double delta() const { return delta_; }
    bool exponential() const { return exponential_; }

private:
    std::vector<double> alphas_;
    double delta_;
    bool exponential_;
};

DilationSchedule dyadicSchedule(double delta, int J);

struct ExpansionCheck {
    bool holds;
    double delta;
};

ExpansionCheck checkExponentialExpansion(const DilationSchedule& sched);

// k with (support + bk)/alpha_j meeting box; open intersection, row-major order
std::vector<Index> latticePointsTouching(const Lattice& lat, const Box& box, const Box& support,
                                         int j, const DilationSchedule& sched);

struct IndexRange {
    std::int64_t lo = 0;
    std::int64_t hi = -1;  // inclusive
    bool empty() const { return hi < lo; }
    std::int64_t size() const { return empty() ? 0 : hi - lo + 1; }
};

// per-axis integer range behind latticePointsTouching
IndexRange touchingRange(double b, double alpha, double slo, double shi, double lo, double hi);

}  // namespace affine
