#include "hardylift/lift.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "hardylift/threading.hpp"

namespace hardylift {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

int LiftResult::intervalOfStep(int tIndex) const {
    for (size_t k = 0; k < cover.size(); ++k)
        if (cover[k].beginIndex <= tIndex && tIndex + 1 <= cover[k].endIndex)
            return static_cast<int>(k);
    return -1;
}

std::vector<CirclePoint> candidateLattice(const std::vector<double>& radii, int phases) {
    std::vector<CirclePoint> out;
    for (double r : radii) {
        if (r == 0.0) {
            out.push_back(CirclePoint{0.0, 0.0});
            continue;
        }
        for (int j = 0; j < phases; ++j)
            out.push_back(CirclePoint{kTwoPi * j / phases, r});
    }
    return out;
}

LambdaMatrix lambdaMatrix(const OrthoProjection& P, const CirclePoint& lambda,
                          const TruncatedHardyModel& model) {
    if (lambda.r >= 1.0)
        throw std::invalid_argument("lambdaMatrix: base point must be interior");
    const int n = model.n;
    const int D = model.D;
    const Complex lbar = std::conj(lambda.value());

    // kernel coefficient vectors, one per channel, projected through P
    Matrix kernels = Matrix::Zero(model.dim(), n);
    Complex power = 1.0;
    for (int k = 0; k <= D; ++k) {
        for (int j = 0; j < n; ++j) kernels(model.index(k, j), j) = power;
        power *= lbar;
    }
    const Matrix projected = P.matrix * kernels;

    std::vector<Matrix> coeffs(static_cast<size_t>(D) + 1, Matrix::Zero(n, n));
    for (int k = 0; k <= D; ++k)
        coeffs[static_cast<size_t>(k)] = projected.block(k * n, 0, n, n);

    const double tail =
        lambda.r > 0.0 ? std::pow(lambda.r, D + 1) / (1.0 - lambda.r) : 0.0;
    return LambdaMatrix{lambda, MatrixLaurentSeries(n, n, 0, std::move(coeffs)), tail};
}

GramAtBase gramAtBase(const LambdaMatrix& lambda) {
    const Matrix value = eval(lambda.values, lambda.basePoint);
    const double weight = 1.0 - lambda.basePoint.r * lambda.basePoint.r;
    const Matrix raw = weight * value;
    const Matrix herm = (raw + raw.adjoint()) / 2.0;
    const double asym = operatorNorm(raw - herm);
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -1e-8)
        throw std::runtime_error("gramAtBase: negative eigenvalue " +
                                 std::to_string(es.eigenvalues()(0)));
    return GramAtBase{herm, asym};
}

PsdSqrtResult psdSqrt(const Matrix& gramSquared, int m, double rankRel,
                      double deltaEigRel) {
    const Matrix herm = (gramSquared + gramSquared.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    const int n = static_cast<int>(herm.rows());
    const auto& evAsc = es.eigenvalues();
    const double top = evAsc(n - 1);

    int rank = 0;
    for (int i = 0; i < n; ++i)
        if (evAsc(i) > rankRel * top) ++rank;
    if (top <= 0.0 || rank != m)
        throw LiftError("rank", -1,
                        "numerical rank " + std::to_string(top <= 0.0 ? 0 : rank) +
                            " != m = " + std::to_string(m));

    EigenFrame frame;
    frame.eigenvalues.resize(m);
    frame.eigenvectors.resize(n, m);
    for (int i = 0; i < m; ++i) {
        frame.eigenvalues(i) = evAsc(n - 1 - i);
        frame.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    const double delta = deltaEigRel * frame.eigenvalues(0);
    std::vector<int> current{0};
    for (int i = 1; i < m; ++i) {
        if (frame.eigenvalues(i - 1) - frame.eigenvalues(i) <= delta) {
            current.push_back(i);
        } else {
            frame.clusterPartition.push_back(current);
            current = {i};
        }
    }
    frame.clusterPartition.push_back(current);

    Matrix root = frame.eigenvectors *
                  frame.eigenvalues.array().sqrt().matrix().asDiagonal() *
                  frame.eigenvectors.adjoint();
    return PsdSqrtResult{std::move(frame), std::move(root)};
}

namespace {

// Gauge fix at the start of a run: rotate each eigenvector so its largest
// component is real positive.
Matrix phaseFixedFrame(const Matrix& vectors) {
    Matrix out = vectors;
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            const double mag = std::abs(out(i, c));
            if (mag > best) {
                best = mag;
                imax = i;
            }
        }
        if (best > 0.0) out.col(c) *= std::conj(out(imax, c)) / best;
    }
    return out;
}

Matrix polarUnitary(const Matrix& a, double* smallestSingular = nullptr) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (smallestSingular) {
        const auto& sv = svd.singularValues();
        *smallestSingular = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    }
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

CanonicalBase canonicalAtBase(const OrthoProjection& P, const CirclePoint& lambda,
                              int m, const TruncatedHardyModel& model,
                              const Matrix* previousBase, const LiftOptions& opts) {
    LambdaMatrix lam = lambdaMatrix(P, lambda, model);
    GramAtBase gram = gramAtBase(lam);
    PsdSqrtResult sqrtRes = psdSqrt(gram.gram, m, opts.rankRel, opts.deltaEigRel);

    Matrix baseG;
    if (m == model.n) {
        baseG = sqrtRes.root;  // Case 1: the Hermitian PSD root, no convention
    } else {
        const Matrix scaled =
            sqrtRes.frame.eigenvectors *
            sqrtRes.frame.eigenvalues.array().sqrt().matrix().asDiagonal();
        if (previousBase == nullptr) {
            const Matrix fixed = phaseFixedFrame(sqrtRes.frame.eigenvectors);
            baseG = fixed * sqrtRes.frame.eigenvalues.array().sqrt().matrix().asDiagonal();
        } else {
            double smin = 0.0;
            const Matrix cross = scaled.adjoint() * (*previousBase);
            const Matrix omega = polarUnitary(cross, &smin);
            const double scale = operatorNorm(cross);
            if (scale <= 0.0 || smin < 1e-3 * scale)
                throw LiftError("frame-alignment", -1,
                                "cluster assignment ambiguous: cross-gram "
                                "smallest singular value " +
                                    std::to_string(smin));
            baseG = scaled * omega;
        }
    }
    return CanonicalBase{std::move(lam), std::move(gram.gram), gram.asymmetryDefect,
                         std::move(baseG), std::move(sqrtRes.frame)};
}

MatrixLaurentSeries extendToCircle(const LambdaMatrix& lambda, const Matrix& baseG,
                                   const EigenFrame& frame) {
    // frame pseudo-inverse of the gram applied to baseG
    const Matrix pinv = frame.eigenvectors *
                        frame.eigenvalues.array().inverse().matrix().asDiagonal() *
                        frame.eigenvectors.adjoint();
    const Matrix right = pinv * baseG;

    const MatrixLaurentSeries& lam = lambda.values;
    const Complex lbar = std::conj(lambda.basePoint.value());
    const int D = lam.hi();
    std::vector<Matrix> coeffs(static_cast<size_t>(D) + 1);
    for (int k = 0; k <= D; ++k) {
        Matrix c = lam.coeff(k);
        if (k > 0) c -= lbar * lam.coeff(k - 1);
        coeffs[static_cast<size_t>(k)] = c * right;
    }
    return MatrixLaurentSeries(lam.rows(), static_cast<int>(right.cols()), 0,
                               std::move(coeffs));
}

namespace {

// sigma_m(G_t(lambda)) for every grid point x candidate, from the gram.
struct CoverTable {
    std::vector<CirclePoint> candidates;
    // sigma[t][c]
    std::vector<std::vector<double>> sigma;
};

CoverTable buildCoverTable(const ProjectionPath& path, int m, const LiftOptions& opts) {
    CoverTable table;
    table.candidates = candidateLattice(opts.latticeRadii, opts.latticePhases);
    const size_t T = path.projections.size();
    const size_t C = table.candidates.size();
    table.sigma.assign(T, std::vector<double>(C, 0.0));
    parallelFor(T, opts.threads, [&](size_t ti) {
        for (size_t c = 0; c < C; ++c) {
            const LambdaMatrix lam =
                lambdaMatrix(path.projections[ti], table.candidates[c], path.model);
            const GramAtBase gram = gramAtBase(lam);
            Eigen::SelfAdjointEigenSolver<Matrix> es(gram.gram, Eigen::EigenvaluesOnly);
            const double mu = es.eigenvalues()(path.model.n - m);  // m-th from top
            table.sigma[ti][c] = mu > 0.0 ? std::sqrt(mu) : 0.0;
        }
    });
    return table;
}

}  // namespace

std::vector<CoverInterval> coverPath(const ProjectionPath& path, int m,
                                     const LiftOptions& opts) {
    const CoverTable table = buildCoverTable(path, m, opts);
    const size_t T = path.projections.size();
    const size_t C = table.candidates.size();

    auto pick = [&](size_t ti) -> int {
        double best = 0.0;
        for (size_t c = 0; c < C; ++c) best = std::max(best, table.sigma[ti][c]);
        const double floorSigma = std::max(opts.etaMin, opts.etaAdmitFraction * best);
        for (size_t c = 0; c < C; ++c)
            if (table.sigma[ti][c] >= floorSigma) return static_cast<int>(c);
        return -1;
    };

    std::vector<CoverInterval> cover;
    int cand = pick(0);
    if (cand < 0)
        throw LiftError("cover", 0, "no candidate base point reaches the eta floor");
    CoverInterval current{table.candidates[static_cast<size_t>(cand)], 0, 0,
                          table.sigma[0][static_cast<size_t>(cand)]};
    size_t candIdx = static_cast<size_t>(cand);

    for (size_t j = 1; j < T; ++j) {
        const double s = table.sigma[j][candIdx];
        if (s >= opts.etaMin) {
            current.endIndex = static_cast<int>(j);
            current.etaFloor = std::min(current.etaFloor, s);
            continue;
        }
        cover.push_back(current);
        const size_t junction = j - 1;
        int next = pick(j);
        if (next < 0 || table.sigma[junction][static_cast<size_t>(next)] < opts.etaMin)
            next = pick(junction);
        if (next < 0 || table.sigma[j][static_cast<size_t>(next)] < opts.etaMin ||
            table.sigma[junction][static_cast<size_t>(next)] < opts.etaMin)
            throw LiftError("cover", static_cast<int>(j),
                            "no admissible base point across the junction");
        candIdx = static_cast<size_t>(next);
        current = CoverInterval{table.candidates[candIdx], static_cast<int>(junction),
                                static_cast<int>(j),
                                std::min(table.sigma[junction][candIdx],
                                         table.sigma[j][candIdx])};
    }
    cover.push_back(current);
    return cover;
}

Matrix junctionUnitary(const MatrixLaurentSeries& next, const MatrixLaurentSeries& prev) {
    if (next.rows() != prev.rows() || next.cols() != prev.cols())
        throw std::invalid_argument("junctionUnitary: shape mismatch");
    Matrix cross = Matrix::Zero(next.cols(), prev.cols());
    for (int k = std::min(next.lo(), prev.lo()); k <= std::max(next.hi(), prev.hi()); ++k)
        cross += next.coeff(k).adjoint() * prev.coeff(k);
    double smin = 0.0;
    const Matrix u = polarUnitary(cross, &smin);
    const double scale = operatorNorm(cross);
    if (scale <= 0.0 || smin < 1e-3 * scale)
        throw std::runtime_error(
            "junctionUnitary: cross-gram nearly singular, subspaces disagree");
    return u;
}

LiftResult lift(const ProjectionPath& path, const LiftOptions& opts) {
    path.validate();
    const TruncatedHardyModel& model = path.model;
    const size_t T = path.projections.size();

    // gates: invariance at every t, modulus < 1 along the path
    std::vector<double> defects(T, 0.0);
    parallelFor(T, opts.threads, [&](size_t ti) {
        defects[ti] = invarianceDefect(path.projections[ti], model);
    });
    for (size_t ti = 0; ti < T; ++ti)
        if (defects[ti] > opts.tolInv)
            throw LiftError("invariance", static_cast<int>(ti),
                            "defect " + std::to_string(defects[ti]));
    std::vector<double> moduli = pathModulus(path);
    for (size_t j = 0; j < moduli.size(); ++j)
        if (moduli[j] >= 1.0)
            throw LiftError("modulus", static_cast<int>(j),
                            "projection step " + std::to_string(moduli[j]) + " >= 1");

    std::vector<int> wander(T, 0);
    parallelFor(T, opts.threads, [&](size_t ti) {
        wander[ti] = wanderingDimension(path.projections[ti], model, opts.tolInv);
    });
    const int m = wander[0];
    for (size_t ti = 0; ti < T; ++ti)
        if (wander[ti] != m)
            throw LiftError("wandering", static_cast<int>(ti),
                            "dimension " + std::to_string(wander[ti]) +
                                " breaks constancy (m = " + std::to_string(m) + ")");
    if (m <= 0) throw LiftError("wandering", 0, "empty wandering space");

    int columnCap;
    if (path.columnCap.has_value()) {
        columnCap = *path.columnCap;
    } else {
        const int rank = numericalRankHermitian(path.projections[0].matrix, opts.rankRel);
        columnCap = rank / m - 1;
    }
    if (columnCap < 0)
        throw LiftError("rank", 0, "projection rank below one column block");

    const std::vector<CoverInterval> cover = coverPath(path, m, opts);

    LiftResult out;
    out.m = m;
    out.tGrid = path.tGrid;
    out.columnCap = columnCap;
    out.cover = cover;
    out.gTilde.assign(T, MatrixLaurentSeries::zero(model.n, m));
    out.diagnostics.pathModulus = std::move(moduli);
    out.diagnostics.certificateDefects.assign(T, 0.0);
    out.diagnostics.baseConsistency.assign(T, 0.0);

    std::vector<char> owned(T, 0);
    for (size_t k = 0; k < cover.size(); ++k) {
        const CoverInterval& iv = cover[k];
        std::vector<MatrixLaurentSeries> segment;
        segment.reserve(static_cast<size_t>(iv.endIndex - iv.beginIndex) + 1);
        Matrix prevBase;
        for (int j = iv.beginIndex; j <= iv.endIndex; ++j) {
            std::optional<CanonicalBase> baseOpt;
            try {
                baseOpt.emplace(canonicalAtBase(path.projections[static_cast<size_t>(j)],
                                                iv.lambda, m, model,
                                                j == iv.beginIndex ? nullptr : &prevBase,
                                                opts));
            } catch (const LiftError& e) {
                throw LiftError(e.stage(), j, e.what());
            }
            const CanonicalBase& base = *baseOpt;
            prevBase = base.baseG;
            MatrixLaurentSeries g = extendToCircle(base.lambda, base.baseG, base.frame)
                                        .truncated(model.D);
            const InnerCertificate cert = certifyInner(g, opts.certGrid);
            if (!cert.valid(opts.tolInner))
                throw LiftError("certificate", j,
                                "isometry defect " + std::to_string(cert.isometryDefect) +
                                    " at base theta " + std::to_string(iv.lambda.theta) +
                                    " r " + std::to_string(iv.lambda.r));
            const Matrix atBase = eval(g, iv.lambda);
            out.diagnostics.baseConsistency[static_cast<size_t>(j)] =
                std::max(out.diagnostics.baseConsistency[static_cast<size_t>(j)],
                         operatorNorm(atBase * atBase.adjoint() - base.gram));
            out.diagnostics.certificateDefects[static_cast<size_t>(j)] =
                cert.isometryDefect;
            segment.push_back(std::move(g));
        }
        if (k == 0) {
            for (int j = iv.beginIndex; j <= iv.endIndex; ++j) {
                out.gTilde[static_cast<size_t>(j)] =
                    segment[static_cast<size_t>(j - iv.beginIndex)];
                owned[static_cast<size_t>(j)] = 1;
            }
        } else {
            const int junction = iv.beginIndex;
            Matrix u;
            try {
                u = junctionUnitary(segment.front(),
                                    out.gTilde[static_cast<size_t>(junction)]);
            } catch (const std::exception& e) {
                throw LiftError("patch", junction, e.what());
            }
            out.patchUnitaries.push_back(u);
            out.diagnostics.junctionJumps.push_back(
                supNormDistance(segment.front().rightMultiplied(u),
                                out.gTilde[static_cast<size_t>(junction)], 512));
            for (int j = iv.beginIndex; j <= iv.endIndex; ++j) {
                if (owned[static_cast<size_t>(j)]) continue;  // junction stays with
                out.gTilde[static_cast<size_t>(j)] =        // the earlier interval
                    segment[static_cast<size_t>(j - iv.beginIndex)].rightMultiplied(u);
                owned[static_cast<size_t>(j)] = 1;
            }
        }
    }

    // round-trip residuals against the input projections
    out.diagnostics.roundTripResiduals.assign(T, 0.0);
    parallelFor(T, opts.threads, [&](size_t ti) {
        const InnerCertificate cert = certifyInner(out.gTilde[ti], opts.certGrid);
        const OrthoProjection q =
            projectionFromInner(cert, model, opts.tolInner, columnCap);
        Matrix diff = path.projections[ti].matrix - q.matrix;
        diff = (diff + diff.adjoint()) / 2.0;
        out.diagnostics.roundTripResiduals[ti] = hermitianOperatorNorm(diff);
    });
    for (size_t ti = 0; ti < T; ++ti)
        if (out.diagnostics.roundTripResiduals[ti] > opts.tolLift)
            throw LiftError("roundtrip", static_cast<int>(ti),
                            "residual " +
                                std::to_string(out.diagnostics.roundTripResiduals[ti]));

    out.diagnostics.supModuli.assign(T - 1, 0.0);
    parallelFor(T - 1, opts.threads, [&](size_t j) {
        out.diagnostics.supModuli[j] =
            supNormDistance(out.gTilde[j + 1], out.gTilde[j], opts.thetaGrid);
    });
    return out;
}

double gaugeVariance(const LiftResult& a, const LiftResult& b, int J) {
    if (a.gTilde.size() != b.gTilde.size() || a.m != b.m)
        throw std::invalid_argument("gaugeVariance: result shapes differ");
    Matrix ref;
    double worst = 0.0;
    for (size_t ti = 0; ti < a.gTilde.size(); ++ti) {
        for (int j = 0; j < J; ++j) {
            const CirclePoint p{kTwoPi * j / J, 1.0};
            const Matrix ga = eval(a.gTilde[ti], p);
            const Matrix gb = eval(b.gTilde[ti], p);
            // pinv(gb) * ga via least squares; gb has full column rank
            const Matrix w = gb.completeOrthogonalDecomposition().pseudoInverse() * ga;
            if (ref.size() == 0) {
                ref = w;
                continue;
            }
            worst = std::max(worst, operatorNorm(w - ref));
        }
    }
    return worst;
}

}  // namespace hardylift
