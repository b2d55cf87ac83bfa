#include "hardylift/hardy.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

namespace hardylift {

OrthoProjection OrthoProjection::fromMatrix(const Matrix& p) {
    if (p.rows() != p.cols())
        throw std::invalid_argument("projection: matrix must be square");
    OrthoProjection out;
    out.matrix = p;
    out.hermitianDefect = operatorNorm(p - p.adjoint());
    out.idempotentDefect = operatorNorm(p * p - p);
    return out;
}

void ProjectionPath::validate() const {
    if (tGrid.size() < 2 || tGrid.size() != projections.size())
        throw std::invalid_argument("path: tGrid/projection count mismatch");
    if (tGrid.front() != 0.0 || tGrid.back() != 1.0)
        throw std::invalid_argument("path: tGrid must run from 0 to 1");
    for (size_t i = 1; i < tGrid.size(); ++i)
        if (tGrid[i] <= tGrid[i - 1])
            throw std::invalid_argument("path: tGrid must be strictly increasing");
    for (const OrthoProjection& p : projections) {
        if (p.matrix.rows() != model.dim())
            throw std::invalid_argument("path: projection dimension mismatch");
        if (p.hermitianDefect > 1e-10)
            throw std::invalid_argument("path: projection not Hermitian enough");
        if (p.idempotentDefect > 1e-8)
            throw std::invalid_argument("path: projection not idempotent enough");
    }
}

double hermitianOperatorNorm(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

int numericalRankHermitian(const Matrix& a, double relThreshold) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double top = ev(ev.size() - 1);
    if (top <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > relThreshold * top) ++rank;
    return rank;
}

Matrix shiftMatrix(const TruncatedHardyModel& model) {
    Matrix s = Matrix::Zero(model.dim(), model.dim());
    for (int k = 0; k < model.D; ++k)
        for (int i = 0; i < model.n; ++i)
            s(model.index(k + 1, i), model.index(k, i)) = 1.0;
    return s;
}

Matrix toeplitzMatrix(const MatrixLaurentSeries& G, const TruncatedHardyModel& model) {
    if (!G.analytic())
        throw std::invalid_argument("toeplitz: series must be analytic");
    if (G.rows() != model.n)
        throw std::invalid_argument("toeplitz: channel dimension mismatch");
    const int m = G.cols();
    Matrix t = Matrix::Zero(model.dim(), m * (model.D + 1));
    for (int k = 0; k <= model.D; ++k) {          // input degree
        for (int d = k; d <= model.D; ++d) {      // output degree
            const Matrix block = G.coeff(d - k);
            if (block.isZero(0.0)) continue;
            t.block(d * model.n, k * m, model.n, m) = block;
        }
    }
    return t;
}

int degTail(const MatrixLaurentSeries& G, double tailTol) {
    const double budget = tailTol * tailTol;
    const int hi = G.hi();
    double tail = 0.0;
    int k = hi;
    // walk down while the accumulated tail stays within budget
    while (k > std::max(G.lo(), 0)) {
        tail += G.coeff(k).squaredNorm();
        if (tail > budget) break;
        --k;
    }
    return std::max(k, 0);
}

OrthoProjection projectionFromInner(const InnerCertificate& G,
                                    const TruncatedHardyModel& model,
                                    double tolInner,
                                    std::optional<int> degreeCap) {
    if (!G.valid(tolInner))
        throw std::invalid_argument("projectionFromInner: certificate rejected, defect " +
                                    std::to_string(G.isometryDefect));
    const int cap = degreeCap.value_or(model.D - degTail(G.series));
    if (cap < 0)
        throw std::invalid_argument("projectionFromInner: no faithful columns at this degree");
    const int m = G.series.cols();
    const Matrix full = toeplitzMatrix(G.series, model);
    const Matrix cols = full.leftCols(static_cast<Eigen::Index>(m) * (cap + 1));

    // Orthonormal basis of the column span via column-pivoted QR with rank cut.
    Eigen::ColPivHouseholderQR<Matrix> qr(cols);
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    Matrix q = qr.householderQ() * Matrix::Identity(cols.rows(), rank);
    return OrthoProjection::fromMatrix(q * q.adjoint());
}

namespace {

// Restriction to degrees <= maxDegree as a diagonal 0/1 matrix action:
// zero out all rows below the cut. Returns a copy of `a` with high-degree
// columns removed from the right-hand side.
Matrix restrictColumns(const Matrix& a, const TruncatedHardyModel& model, int maxDegree) {
    const int keep = model.n * (maxDegree + 1);
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    out.leftCols(keep) = a.leftCols(keep);
    return out;
}

}  // namespace

double invarianceDefect(const OrthoProjection& P, const TruncatedHardyModel& model) {
    const int testDegree = std::max(model.D / 4, 0);
    const Matrix s = shiftMatrix(model);
    const Matrix sp = s * P.matrix;
    const Matrix residual = sp - P.matrix * sp;   // (I - P) S P
    return operatorNorm(restrictColumns(residual, model, testDegree));
}

int wanderingDimension(const OrthoProjection& P, const TruncatedHardyModel& model,
                       double tolInv) {
    const double defect = invarianceDefect(P, model);
    if (defect > tolInv)
        throw std::invalid_argument("wanderingDimension: projection not invariant, defect " +
                                    std::to_string(defect));
    const Matrix s = shiftMatrix(model);
    Matrix w = P.matrix - s * P.matrix * s.adjoint();
    // sub-block of degrees <= D-1, where the shift is exactly isometric
    const int keep = model.n * model.D;
    Matrix sub = w.topLeftCorner(keep, keep);
    sub = (sub + sub.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(sub, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double top = ev(ev.size() - 1);
    if (top <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 1e-8 * top) ++rank;   // positive side only; the negative
    return rank;                           // directions are truncation images
}

std::vector<double> pathModulus(const ProjectionPath& path) {
    std::vector<double> out;
    out.reserve(path.projections.size() - 1);
    for (size_t i = 0; i + 1 < path.projections.size(); ++i) {
        Matrix diff = path.projections[i + 1].matrix - path.projections[i].matrix;
        diff = (diff + diff.adjoint()) / 2.0;
        out.push_back(hermitianOperatorNorm(diff));
    }
    return out;
}

}  // namespace hardylift
