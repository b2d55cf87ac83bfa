#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardylift/hardy.hpp"
#include "hardylift/series.hpp"

namespace hardylift {

/// Stage-tagged failure of the lift pipeline.
class LiftError : public std::runtime_error {
public:
    LiftError(std::string stage, int tIndex, const std::string& detail)
        : std::runtime_error("lift[" + stage + "] at t index " +
                             std::to_string(tIndex) + ": " + detail),
          stage_(std::move(stage)),
          tIndex_(tIndex) {}

    const std::string& stage() const { return stage_; }
    int tIndex() const { return tIndex_; }

private:
    std::string stage_;
    int tIndex_;
};

/// Columns of the projected reproducing kernel at an interior base point:
/// column j of values(z) is p applied to k_lambda e_j, k_lambda(z) =
/// 1/(1 - conj(lambda) z) truncated at degree D.
struct LambdaMatrix {
    CirclePoint basePoint;       // r < 1
    MatrixLaurentSeries values;  // n x n analytic
    double tailBound;            // |lambda|^{D+1} / (1 - |lambda|)
};

/// Top-m eigenpairs of the base gram, descending, with near-degenerate
/// clusters grouped.
struct EigenFrame {
    Eigen::VectorXd eigenvalues;           // descending, length m
    Matrix eigenvectors;                   // n x m orthonormal
    std::vector<std::vector<int>> clusterPartition;
};

struct CoverInterval {
    CirclePoint lambda;
    int beginIndex = 0;   // inclusive t-grid indices
    int endIndex = 0;
    double etaFloor = 0.0;  // min over the interval of sigma_m(G_t(lambda))
};

struct LiftDiagnostics {
    std::vector<double> certificateDefects;  // per t
    std::vector<double> roundTripResiduals;  // per t
    std::vector<double> baseConsistency;     // per t
    std::vector<double> pathModulus;         // per step
    std::vector<double> supModuli;           // per step, sup-norm of gTilde diff
    std::vector<double> junctionJumps;       // per junction
};

struct LiftResult {
    int m = 0;
    std::vector<double> tGrid;
    int columnCap = 0;
    std::vector<MatrixLaurentSeries> gTilde;  // one n x m series per t
    std::vector<CoverInterval> cover;
    std::vector<Matrix> patchUnitaries;       // one m x m unitary per junction
    LiftDiagnostics diagnostics;

    /// Index of the cover interval containing both endpoints of step
    /// (tIndex, tIndex + 1).
    int intervalOfStep(int tIndex) const;
};

struct LiftOptions {
    double tolInner = 1e-6;
    double tolInv = 1e-6;
    double tolLift = 1e-6;
    double etaMin = 1e-3;
    double etaAdmitFraction = 0.25;  // admission floor fraction of lattice best
    double deltaEigRel = 1e-6;
    double rankRel = 1e-8;
    int thetaGrid = 1024;
    int certGrid = 512;
    std::vector<double> latticeRadii = {0.0, 0.3, 0.6};
    int latticePhases = 8;
    int threads = 0;  // 0 = all hardware threads
};

/// Candidate base points: one point at each radius 0 plus `phases` points on
/// each positive ring, ordered radius-ascending then phase-ascending.
std::vector<CirclePoint> candidateLattice(const std::vector<double>& radii, int phases);

LambdaMatrix lambdaMatrix(const OrthoProjection& P, const CirclePoint& lambda,
                          const TruncatedHardyModel& model);

struct GramAtBase {
    Matrix gram;  // Hermitian PSD n x n: (1 - |lambda|^2) * Herm(values(lambda))
    double asymmetryDefect;
};

GramAtBase gramAtBase(const LambdaMatrix& lambda);

struct PsdSqrtResult {
    EigenFrame frame;
    Matrix root;  // Hermitian PSD square root of rank m
};

/// Eigendecomposition square root keeping the top m eigenpairs. Throws a
/// LiftError("rank") when the numerical rank differs from m (cover failure:
/// the caller must move the base point).
PsdSqrtResult psdSqrt(const Matrix& gramSquared, int m, double rankRel = 1e-8,
                      double deltaEigRel = 1e-6);

struct CanonicalBase {
    LambdaMatrix lambda;
    Matrix gram;
    double gramAsymmetry;
    Matrix baseG;  // n x m, the canonical value of gTilde at the base point
    EigenFrame frame;
};

/// Canonical base-point value. For m = n this is the Hermitian PSD root.
/// For m < n it is V diag(sqrt(mu)) right-rotated: aligned to the previous
/// base by an orthogonal-Procrustes polar factor (which realizes the
/// entry/exit interpolation discretely and preserves the gram exactly), or,
/// at the first point, gauge-fixed by making the largest component of each
/// eigenvector real positive.
CanonicalBase canonicalAtBase(const OrthoProjection& P, const CirclePoint& lambda,
                              int m, const TruncatedHardyModel& model,
                              const Matrix* previousBase = nullptr,
                              const LiftOptions& opts = {});

/// G(z) = (1 - conj(lambda) z) * Lambda(z) * R with R the frame
/// pseudo-inverse carrying gram * R = baseG, truncated at degree D.
MatrixLaurentSeries extendToCircle(const LambdaMatrix& lambda, const Matrix& baseG,
                                   const EigenFrame& frame);

/// Greedy sweep assigning a base point to maximal runs of the t-grid.
/// Smaller radii are preferred among candidates whose sigma_m clears
/// max(etaMin, etaAdmitFraction * best over the lattice); an interval closes
/// when its current candidate drops below etaMin. Consecutive intervals
/// share one grid point.
std::vector<CoverInterval> coverPath(const ProjectionPath& path, int m,
                                     const LiftOptions& opts = {});

/// Unitary polar factor of the coefficient cross-Gram between two series
/// spanning the same subspace; used to splice segments at a junction.
Matrix junctionUnitary(const MatrixLaurentSeries& next, const MatrixLaurentSeries& prev);

/// Full pipeline: gates, wandering dimension, cover, per-interval canonical
/// extension with frame tracking, patching, diagnostics.
LiftResult lift(const ProjectionPath& path, const LiftOptions& opts = {});

/// Max deviation over theta and t of W = pinv(gTilde') * gTilde from its
/// value at the first sample; small iff the two lifts differ by one constant
/// unitary.
double gaugeVariance(const LiftResult& a, const LiftResult& b, int J = 256);

}  // namespace hardylift
