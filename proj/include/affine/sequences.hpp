#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "affine/cutoff.hpp"
#include "affine/geometry.hpp"
#include "affine/gridfield.hpp"

namespace affine {

// finitely supported sequence on Z^d; unused trailing index components are 0
using SeqMap = std::map<Index, Complex>;
using VecValue = std::array<Complex, kMaxDim>;
using VecSeq = std::map<Index, VecValue>;

void setEntry(SeqMap& s, const Index& k, Complex v);  // erases zeros
double seqNorm(const SeqMap& s, double p);
double seqNorm(const VecSeq& s, double p, int d);  // Euclidean length per entry

// c_{j,k}, j = 1..J
class CoeffArray {
public:
    CoeffArray(int d, int J);

    int dim() const { return d_; }
    int J() const { return static_cast<int>(scales_.size()); }
    const SeqMap& scale(int j) const { return scales_.at(j - 1); }
    void setScale(int j, SeqMap s);
    Complex get(int j, const Index& k) const;
    void set(int j, const Index& k, Complex v);
    std::size_t nnz() const;
    CoeffArray& operator*=(Complex s);

private:
    int d_;
    std::vector<SeqMap> scales_;
};

double mixedNorm(const CoeffArray& c, double p);
double supMixedNorm(const CoeffArray& c, double p);

SeqMap difference(const SeqMap& s, const MultiIndex& rho);
double sobolevSeqNorm(const CoeffArray& c, int m, double p, const DilationSchedule& sched);

enum class KernelKind { cutoffKernel, discretizedRiesz, hilbertSequence };

// z_k for |k|_inf <= K, stored densely; d components per entry
class KernelSeq {
public:
    KernelSeq(int d, std::int64_t K, KernelKind kind);

    int dim() const { return d_; }
    std::int64_t K() const { return K_; }
    KernelKind kind() const { return kind_; }
    VecValue at(const Index& k) const;  // zero outside the radius
    void set(const Index& k, const VecValue& v);
    double antisymmetryDefect() const;

    // provenance recorded in exports
    CutoffSpec cutoff;
    std::vector<double> b;
    std::int64_t resolution = 0;
    double refinementGap = 0.0;

private:
    std::int64_t offset(const Index& k) const;
    int d_;
    std::int64_t K_;
    KernelKind kind_;
    std::vector<VecValue> z_;
};

const char* kernelKindName(KernelKind k);

KernelSeq discreteRieszKernel(const CutoffSpec& cut, const Lattice& lat, std::int64_t K);
KernelSeq discretizedRieszKernel(const Lattice& lat, std::int64_t K);
KernelSeq hilbertSequence(std::int64_t K);
double rieszConstant(int d);  // C_d = Gamma((d+1)/2) pi^{-(d+1)/2}

// sum_k z_k e^{-2 pi i xi k}, component t
Complex kernelSymbol(const KernelSeq& z, const Point& xi, int t);

void writeKernelCsv(const KernelSeq& z, std::ostream& os);

VecSeq convolveSeq(const SeqMap& s, const KernelSeq& z);

struct MeanCheck {
    Complex mean;
    bool isZero;
};

MeanCheck meanZeroCheck(const SeqMap& s, double tolerance = 1e-12);

struct HardySeqNorm {
    double value = 0.0;  // ||s||_1 + ||s*z||_1 over the computed range
    double l1 = 0.0;
    double conv = 0.0;
    double tail = 0.0;   // estimate of the mass of s*z beyond the computed range
    bool meanZero = true;
};

HardySeqNorm h1SeqNorm(const SeqMap& s, const KernelSeq& z);
HardySeqNorm h1MixedNorm(const CoeffArray& c, const KernelSeq& z);

struct SpectralHelpers {
    GridField mu;
    GridField lambda;
    GridField muJ;
};

// mu^(xi) = nu(xi b), lambda^ = nu rescaled into C0 b^{-1}, mu_j^(xi) = nu(xi b / alpha_j)
SpectralHelpers spectralHelpers(const CutoffSpec& cut, const Lattice& lat, int j,
                                const DilationSchedule& sched, const Grid& grid);
GridField cutoffField(const CutoffSpec& cut, const Lattice& lat, double alpha, const Grid& grid);

}  // namespace affine
