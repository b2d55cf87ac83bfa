#include "hardylift/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hardylift/threading.hpp"

namespace hardylift {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Matrix> boundarySamples(const MatrixLaurentSeries& g, int J) {
    std::vector<Matrix> out(static_cast<size_t>(J), Matrix());
    for (int j = 0; j < J; ++j) out[static_cast<size_t>(j)] = eval(g, {kTwoPi * j / J, 1.0});
    return out;
}

std::vector<Matrix> interiorSamples(const MatrixLaurentSeries& g, double r, int J) {
    std::vector<Matrix> out(static_cast<size_t>(J), Matrix());
    for (int j = 0; j < J; ++j) out[static_cast<size_t>(j)] = eval(g, {kTwoPi * j / J, r});
    return out;
}

// planar max of ||F|| over a Jz x Jw grid; optionally keeps all norms
double planarMax(const MatrixLaurentSeries& gt, const MatrixLaurentSeries& gs,
                 double r, int Jz, int Jw, int threads, std::vector<double>* norms) {
    const auto bt = boundarySamples(gt, Jw);
    const auto bs = boundarySamples(gs, Jw);
    const auto it = interiorSamples(gt, r, Jz);
    const auto is = interiorSamples(gs, r, Jz);
    if (norms) norms->assign(static_cast<size_t>(Jz) * Jw, 0.0);
    std::vector<double> rowMax(static_cast<size_t>(Jz), 0.0);
    parallelFor(static_cast<size_t>(Jz), threads, [&](size_t iz) {
        const Complex zbar = std::conj(std::polar(1.0, kTwoPi * static_cast<double>(iz) / Jz));
        double best = 0.0;
        for (int iw = 0; iw < Jw; ++iw) {
            const Complex w = std::polar(1.0, kTwoPi * iw / Jw);
            const Complex denom = 1.0 - r * zbar * w;
            const Matrix f =
                (bt[static_cast<size_t>(iw)] * it[iz].adjoint() -
                 bs[static_cast<size_t>(iw)] * is[iz].adjoint()) / denom;
            const double norm = operatorNorm(f);
            if (norms) (*norms)[iz * static_cast<size_t>(Jw) + static_cast<size_t>(iw)] = norm;
            best = std::max(best, norm);
        }
        rowMax[iz] = best;
    });
    double out = 0.0;
    for (double v : rowMax) out = std::max(out, v);
    return out;
}

}  // namespace

double kernelBoundConstant(int n, double r) {
    if (n <= 0 || r <= 0.0 || r >= 1.0)
        throw std::invalid_argument("kernelBoundConstant: need n >= 1 and r in (0,1)");
    return std::sqrt(static_cast<double>(n) / (1.0 - r * r));
}

KernelDiff kernelDiffSeries(const MatrixLaurentSeries& gt, const MatrixLaurentSeries& gs,
                            double r, int Jz, int Jw, int threads) {
    if (r <= 0.0 || r >= 1.0)
        throw std::invalid_argument("kernelDiff: r must lie in (0, 1)");
    if (Jz < 2 || Jw < 2) throw std::invalid_argument("kernelDiff: grid too small");
    if (gt.rows() != gs.rows() || gt.cols() != gs.cols())
        throw std::invalid_argument("kernelDiff: series shapes differ");
    KernelDiff out{r, -1, -1, Jz, Jw, gt, gs, {}, 0.0};
    out.maxNorm = planarMax(gt, gs, r, Jz, Jw, threads, &out.gridNorms);
    return out;
}

KernelDiff kernelDiff(const LiftResult& lift, int tIndex, int sIndex, double r,
                      int J, int threads) {
    KernelDiff out = kernelDiffSeries(lift.gTilde.at(static_cast<size_t>(tIndex)),
                                      lift.gTilde.at(static_cast<size_t>(sIndex)), r,
                                      J, J, threads);
    out.tIndex = tIndex;
    out.sIndex = sIndex;
    return out;
}

SectionSupremum sectionSupremumCheck(const KernelDiff& f, int threads) {
    // On one grid the planar max and the sup over z-sections are the same
    // number; the informative part is stability under z-refinement.
    const double planar = f.maxNorm;
    const double refined = planarMax(f.gt, f.gs, f.r, 4 * f.Jz, f.Jw, threads, nullptr);
    const double scale = std::max(planar, 1e-14);
    return SectionSupremum{planar, planar, 0.0, std::abs(refined - planar) / scale};
}

KernelBoundRecord kernelBoundCheck(const KernelDiff& f, double projectionDistance,
                                   double slack) {
    const int n = f.gt.rows();
    const double bound = kernelBoundConstant(n, f.r) * projectionDistance;
    const double allowed = bound * slack;
    return KernelBoundRecord{f.maxNorm, bound, allowed - f.maxNorm,
                             f.maxNorm <= allowed};
}

ContinuityReport mainTheoremCheck(const LiftResult& lift, double r,
                                  const VerifyOptions& opts) {
    if (lift.gTilde.size() < 2)
        throw std::invalid_argument("mainTheoremCheck: need at least two grid points");
    if (lift.diagnostics.pathModulus.size() + 1 != lift.gTilde.size())
        throw std::invalid_argument("mainTheoremCheck: lift lacks projection moduli");
    const int n = lift.gTilde.front().rows();
    const double constant = kernelBoundConstant(n, r);

    ContinuityReport report;
    report.r = r;
    report.slackBound = opts.slackBound;
    report.slackChain = opts.slackChain;
    report.kernelGrid = opts.kernelGrid;
    report.thetaGrid = opts.thetaGrid;
    report.allPass = true;

    const size_t steps = lift.gTilde.size() - 1;
    report.records.resize(steps);
    parallelFor(steps, opts.threads, [&](size_t j) {
        PairRecord rec{};
        rec.tIndex = static_cast<int>(j + 1);
        rec.sIndex = static_cast<int>(j);
        rec.r = r;
        rec.dp = lift.diagnostics.pathModulus[j];

        const KernelDiff f = kernelDiff(lift, rec.tIndex, rec.sIndex, r,
                                        opts.kernelGrid, 1);
        rec.fInf = f.maxNorm;
        rec.fStarInf = f.maxNorm;
        if (opts.checkSections) {
            const SectionSupremum sec = sectionSupremumCheck(f, 1);
            rec.sectionSup = sec.sectionSup;
            rec.sectionRefinedShift = sec.refinedShift;
        } else {
            rec.sectionSup = f.maxNorm;
            rec.sectionRefinedShift = 0.0;
        }

        const KernelBoundRecord kb = kernelBoundCheck(f, rec.dp, opts.slackBound);
        rec.kernelBound = kb.bound;
        rec.kernelMargin = kb.margin;
        rec.kernelPass = kb.pass;

        const int interval = lift.intervalOfStep(static_cast<int>(j));
        if (interval < 0)
            throw std::runtime_error("mainTheoremCheck: step not covered by any interval");
        const CoverInterval& iv = lift.cover[static_cast<size_t>(interval)];
        rec.eta = iv.etaFloor;

        const CirclePoint interior{iv.lambda.theta, r * iv.lambda.r};
        const Matrix gi = eval(lift.gTilde[j + 1], interior);
        const Matrix gsI = eval(lift.gTilde[j], interior);
        rec.interiorTerm = operatorNorm(gi - gsI);

        rec.supDist = supNormDistance(lift.gTilde[j + 1], lift.gTilde[j], opts.thetaGrid);
        rec.ceiling = ((1.0 + r) * constant * rec.dp + rec.interiorTerm) / rec.eta *
                      opts.slackChain;
        rec.chainPass = rec.supDist <= rec.ceiling;
        report.records[j] = rec;
    });

    for (const PairRecord& rec : report.records) {
        if (!rec.kernelPass || !rec.chainPass ||
            (opts.checkSections && rec.sectionRefinedShift >= 1e-3))
            report.allPass = false;
    }
    return report;
}

}  // namespace hardylift
