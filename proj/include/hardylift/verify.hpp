#pragma once

#include <vector>

#include "hardylift/lift.hpp"
#include "hardylift/series.hpp"

namespace hardylift {

/// Two-variable kernel difference F(z, w) = K_t(z, w) - K_s(z, w) with
/// K(z, w) = G(w) G(rz)^* / (1 - r conj(z) w), sampled on a Jz x Jw grid.
/// The source series are kept so refinement oracles can resample.
struct KernelDiff {
    double r;
    int tIndex;
    int sIndex;
    int Jz;
    int Jw;
    MatrixLaurentSeries gt;
    MatrixLaurentSeries gs;
    std::vector<double> gridNorms;  // operator norm per sample, z-major
    double maxNorm;
};

/// sqrt(n / (1 - r^2)): the constant of the kernel bound.
double kernelBoundConstant(int n, double r);

KernelDiff kernelDiffSeries(const MatrixLaurentSeries& gt, const MatrixLaurentSeries& gs,
                            double r, int Jz, int Jw, int threads = 0);

KernelDiff kernelDiff(const LiftResult& lift, int tIndex, int sIndex, double r,
                      int J = 256, int threads = 0);

struct SectionSupremum {
    double planarMax;     // ||F||_inf on the grid
    double sectionSup;    // sup_z ||F(z, .)||_inf on the same grid
    double gap;           // zero by construction on equal grids
    double refinedShift;  // relative movement of the planar max under a 4x
                          // refinement of the z-grid
};

/// Grid witness of the section-supremum identity: the two grid quantities
/// coincide, and a 4x z-refinement moves the planar max by < 1e-3 relative.
SectionSupremum sectionSupremumCheck(const KernelDiff& f, int threads = 0);

struct KernelBoundRecord {
    double fStarInf;  // equals the grid ||F||_inf: adjoints share op norms
    double bound;     // sqrt(n / (1 - r^2)) * ||p_t - p_s||
    double margin;    // bound * slack - fStarInf
    bool pass;
};

KernelBoundRecord kernelBoundCheck(const KernelDiff& f, double projectionDistance,
                                   double slack = 1.05);

struct PairRecord {
    int tIndex;
    int sIndex;
    double r;
    double dp;                  // ||p_t - p_s||
    double fInf;                // grid planar max
    double fStarInf;            // same value, listed under the adjoint label
    double sectionSup;          // sup_z of section sups (grid)
    double sectionRefinedShift;
    double kernelBound;
    double kernelMargin;
    bool kernelPass;
    double eta;                 // etaFloor of the pair's cover interval
    double interiorTerm;        // ||gTilde_t(r lambda) - gTilde_s(r lambda)||
    double supDist;             // supNormDistance(gTilde_t, gTilde_s)
    double ceiling;             // [(1+r) bound dp + interior] / eta * slack
    bool chainPass;
};

struct ContinuityReport {
    double r;
    double slackBound;
    double slackChain;
    int kernelGrid;
    int thetaGrid;
    std::vector<PairRecord> records;
    bool allPass;
};

struct VerifyOptions {
    double slackBound = 1.05;
    double slackChain = 1.1;
    int kernelGrid = 256;
    int thetaGrid = 1024;
    bool checkSections = true;
    int threads = 0;
};

/// Runs the kernel bound and main-theorem chain over every adjacent pair of
/// the lifted family at one interior radius r.
ContinuityReport mainTheoremCheck(const LiftResult& lift, double r,
                                  const VerifyOptions& opts = {});

}  // namespace hardylift
