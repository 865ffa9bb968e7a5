#pragma once

#include <string>
#include <vector>

#include "affine/geometry.hpp"
#include "affine/gridfield.hpp"
#include "affine/sequences.hpp"
#include "affine/synthesizers.hpp"

namespace affine {

struct OperatorContext {
    Synthesizer psi;
    Synthesizer phi;
    Lattice lat;
    DilationSchedule sched;
    NormParams norm;
    Grid grid;

    OperatorContext(Synthesizer psi, Synthesizer phi, Lattice lat, DilationSchedule sched, NormParams norm,
                    Grid grid);
    OperatorContext withPsi(const Synthesizer& s) const;
    OperatorContext withPhi(const Synthesizer& s) const;
    OperatorContext withNorm(double p) const;
    OperatorContext withGrid(const Grid& g) const;
    OperatorContext withSchedule(const DilationSchedule& s) const;
};

// sum_k s_k |alpha_j|^{d/p} psi(alpha_j x - bk); j = 0 means alpha = 1
GridField synthesizeScale(const OperatorContext& ctx, int j, const SeqMap& s);
GridField synthesizeScaleWith(const OperatorContext& ctx, const Synthesizer& psi, double alpha, const SeqMap& s);

struct Synthesis {
    GridField field;
    std::vector<GridField> partial;  // running sums over j
};

Synthesis synthesizeWithPartials(const OperatorContext& ctx, const CoeffArray& c);
GridField synthesize(const OperatorContext& ctx, const CoeffArray& c);

SeqMap analyzeScale(const OperatorContext& ctx, int j, const GridField& f);
CoeffArray analyze(const OperatorContext& ctx, const GridField& f, int J);

struct Approximation {
    GridField field;
    std::vector<std::string> warnings;
};

Approximation scaleAveragedApprox(const OperatorContext& ctx, const GridField& f, int J);
CoeffArray constructCoefficients(const OperatorContext& ctx, const GridField& f, int J);
CoeffArray maskAdapted(const OperatorContext& ctx, const CoeffArray& c, const Box& omega);

struct RieszSynthOptions {
    std::int64_t K = 0;  // 0: n/2
    CutoffSpec cut;
};

double rieszSynthCommutatorResidual(const OperatorContext& ctx, const SeqMap& s,
                                    const RieszSynthOptions& opt = {});

struct RieszAnalysisOptions {
    int padding = 8;       // zero-padding factor for the right-hand side
    bool includeSign = true;
    CutoffSpec cut;
};

double rieszAnalysisCommutatorResidual(const OperatorContext& ctx, const GridField& f, int j,
                                       const RieszAnalysisOptions& opt = {});

enum class DerivativeRoute { closedForm, spectral };

double derivSynthCommutatorResidual(const OperatorContext& ctx, const MultiIndex& rho, const CoeffArray& c,
                                    DerivativeRoute route = DerivativeRoute::closedForm);
double diffAnalysisCommutatorResidual(const OperatorContext& ctx, const GridField& f, int j,
                                      const MultiIndex& rho);

// Delta^rho_alpha f by exact grid shifts, zero filled
GridField differenceQuotient(const GridField& f, double alpha, const MultiIndex& rho);

struct FrameResult {
    GridField approx;
    std::vector<double> cesaroTrace;
};

FrameResult frameReconstruct(const OperatorContext& ctx, const GridField& f, int J);

GridField sobolevScaleAveraged(const OperatorContext& ctx, const GridField& f, int J, int m, double p);

enum class HardyMode { constantPeriodization, scaleAveraged };

Approximation hardyScaleAveraged(const OperatorContext& ctx, const GridField& f, int J, HardyMode mode);

}  // namespace affine
