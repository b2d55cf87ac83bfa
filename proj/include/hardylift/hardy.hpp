#pragma once

#include <optional>
#include <vector>

#include "hardylift/series.hpp"

namespace hardylift {

/// Finite-dimensional model of H^2(C^n) truncated at degree D. Basis index
/// (degree k, channel i) maps to k*n + i, for k in 0..D and i in 0..n-1.
struct TruncatedHardyModel {
    int n;
    int D;

    int dim() const { return n * (D + 1); }
    int index(int degree, int channel) const { return degree * n + channel; }
};

/// Hermitian idempotent on the truncated space, with its measured defects.
struct OrthoProjection {
    Matrix matrix;
    double hermitianDefect = 0.0;
    double idempotentDefect = 0.0;

    static OrthoProjection fromMatrix(const Matrix& p);
};

struct ProjectionPath {
    TruncatedHardyModel model;
    std::vector<double> tGrid;           // strictly increasing, 0 to 1
    std::vector<OrthoProjection> projections;
    std::optional<int> columnCap;        // common Toeplitz degree cap, when known

    void validate() const;
};

/// Operator norm of a Hermitian matrix via its extreme eigenvalues.
double hermitianOperatorNorm(const Matrix& a);

/// Number of eigenvalues of a Hermitian PSD-ish matrix above
/// relThreshold * max eigenvalue.
int numericalRankHermitian(const Matrix& a, double relThreshold = 1e-8);

/// The truncated unilateral shift: (k, i) -> (k+1, i), degree D maps to zero.
Matrix shiftMatrix(const TruncatedHardyModel& model);

/// Block lower-triangular Toeplitz matrix of multiplication by the analytic
/// series G, from degrees 0..D of H^2(C^m) into the model space. Columns of
/// input degree k hold z^k G truncated at degree D.
Matrix toeplitzMatrix(const MatrixLaurentSeries& G, const TruncatedHardyModel& model);

/// Smallest k such that sum_{j>k} ||G_j||_HS^2 <= tailTol^2 over the stored
/// coefficients; the retained Toeplitz columns (input degree <= D - degTail)
/// then carry truncation error at most tailTol each.
int degTail(const MatrixLaurentSeries& G, double tailTol = 3.2e-7);

/// Orthogonal projection onto the span of the Toeplitz columns of G with
/// input degree <= degreeCap (default D - degTail(G)).
OrthoProjection projectionFromInner(const InnerCertificate& G,
                                    const TruncatedHardyModel& model,
                                    double tolInner = 1e-6,
                                    std::optional<int> degreeCap = std::nullopt);

/// ||(I - P) S P R|| with R the restriction to degrees <= D/4: shift
/// invariance measured on the low-degree block, where truncation of the
/// retained column range cannot interfere.
double invarianceDefect(const OrthoProjection& P, const TruncatedHardyModel& model);

/// Dimension of M (-) SM: count of positive eigenvalues of P - S P S^*
/// above the rank threshold, computed on the sub-block of degrees <= D-1.
/// Requires invarianceDefect(P) <= tolInv.
int wanderingDimension(const OrthoProjection& P, const TruncatedHardyModel& model,
                       double tolInv = 1e-6);

/// Operator norms of consecutive projection differences along the path.
std::vector<double> pathModulus(const ProjectionPath& path);

}  // namespace hardylift
