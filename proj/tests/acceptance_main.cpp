// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run against the shipped fixture families at the pinned
// tolerances; every expected value is computed in-process.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hardylift/inner_gen.hpp"
#include "hardylift/json_io.hpp"
#include "hardylift/lift.hpp"
#include "hardylift/pipeline.hpp"
#include "hardylift/verify.hpp"

using namespace hardylift;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

struct Fixture {
    std::uint64_t seed;
    int n, m, factors;
};

constexpr double kTolLift = 1e-6;
constexpr double kSlackBound = 1.05;
constexpr double kSlackChain = 1.1;
constexpr int kTPoints = 33;
constexpr int kDegree = 64;

std::vector<Fixture> fixtureTable() {
    std::vector<Fixture> out;
    const int combos[6][2] = {{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}};
    std::uint64_t seed = 101;
    for (int round = 0; round < 3; ++round)
        for (const auto& nm : combos)
            out.push_back(Fixture{seed++, nm[0], nm[1], 1 + (int)((seed + round) % 3)});
    out.push_back(Fixture{seed++, 2, 1, 3});
    out.push_back(Fixture{seed++, 3, 2, 2});
    out.resize(20);
    return out;
}

double maxOf(const std::vector<double>& v) {
    double out = 0.0;
    for (double x : v) out = std::max(out, x);
    return out;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    const std::vector<Fixture> fixtures = fixtureTable();

    std::vector<InnerPathSpec> specs;
    std::vector<SynthesizedPath> paths;
    std::vector<LiftResult> lifts;
    std::vector<std::string> liftErrors;

    // ---- criterion 1: round-trip fidelity and runtime --------------------
    const auto start = std::chrono::steady_clock::now();
    double worstResidual = 0.0;
    for (const Fixture& fx : fixtures) {
        try {
            specs.push_back(makeSeededSpec(fx.seed, fx.n, fx.m, fx.factors, kTPoints,
                                           kDegree, 0.15, 0.65));
            paths.push_back(synthesizePath(specs.back()));
            lifts.push_back(lift(paths.back().path));
            worstResidual =
                std::max(worstResidual, maxOf(lifts.back().diagnostics.roundTripResiduals));
        } catch (const std::exception& e) {
            liftErrors.push_back("seed " + std::to_string(fx.seed) + ": " + e.what());
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    {
        const bool pass =
            liftErrors.empty() && worstResidual <= kTolLift && elapsed < 120.0;
        std::string detail = fmt("max residual %.3g (tol 1e-6), %.1f s of 120 s",
                                 worstResidual, elapsed);
        if (!liftErrors.empty()) detail += "; first failure: " + liftErrors.front();
        results.push_back({1, "round-trip fidelity over 20 seeded fixtures", pass, detail});
    }

    // ---- criterion 2: wandering dimension constancy ----------------------
    {
        int mismatches = 0;
        for (size_t i = 0; i < lifts.size(); ++i)
            if (lifts[i].m != specs[i].m) ++mismatches;
        const bool pass = liftErrors.empty() && mismatches == 0 && lifts.size() == 20;
        results.push_back({2, "wandering dimension equals spec.m at every t", pass,
                           "mismatched fixtures: " + std::to_string(mismatches)});
    }

    // ---- criteria 3 and 4: kernel bound and main theorem chain -----------
    VerifyOptions vopts;
    vopts.slackBound = kSlackBound;
    vopts.slackChain = kSlackChain;
    vopts.kernelGrid = 256;
    vopts.thetaGrid = 1024;
    vopts.checkSections = false;

    {
        const double c1 = kernelBoundConstant(1, 0.5);
        const double c2 = kernelBoundConstant(2, 0.9);
        const bool constantsOk =
            std::abs(c1 - 1.1547) <= 5e-5 && std::abs(c2 - 3.2444) <= 5e-5;

        int kernelFailures = 0, chainFailures = 0, pairs = 0;
        double worstKernelRatio = 0.0, worstChainRatio = 0.0;
        for (const LiftResult& lifted : lifts) {
            for (double r : {0.5, 0.9}) {
                const ContinuityReport report = mainTheoremCheck(lifted, r, vopts);
                for (const PairRecord& rec : report.records) {
                    ++pairs;
                    if (!rec.kernelPass) ++kernelFailures;
                    if (!rec.chainPass) ++chainFailures;
                    if (rec.kernelBound > 1e-12)
                        worstKernelRatio =
                            std::max(worstKernelRatio, rec.fStarInf / rec.kernelBound);
                    if (rec.ceiling > 1e-12)
                        worstChainRatio =
                            std::max(worstChainRatio, rec.supDist / rec.ceiling);
                }
            }
        }
        const bool boundPass = constantsOk && liftErrors.empty() && kernelFailures == 0;
        char boundDetail[160];
        std::snprintf(boundDetail, sizeof(boundDetail),
                      "constants %s; %d of %d pairs violate, worst ratio %.2f",
                      constantsOk ? "ok" : "WRONG", kernelFailures, pairs,
                      worstKernelRatio);
        results.push_back({3, "kernel bound ||F*|| <= sqrt(n/(1-r^2))||dp|| x 1.05",
                           boundPass, boundDetail});

        // refinement half of criterion 4
        bool refineOk = true;
        std::string refineDetail;
        const struct {
            const char* name;
            InnerPathSpec spec33, spec65, spec129;
        } smooth[] = {
            {"blaschke-line", makeBlaschkeLineSpec(0.3, 0.5, 33, kDegree),
             makeBlaschkeLineSpec(0.3, 0.5, 65, kDegree),
             makeBlaschkeLineSpec(0.3, 0.5, 129, kDegree)},
            {"seeded-n2m1", makeSeededSpec(104, 2, 1, 2, 33, kDegree, 0.15, 0.65),
             makeSeededSpec(104, 2, 1, 2, 65, kDegree, 0.15, 0.65),
             makeSeededSpec(104, 2, 1, 2, 129, kDegree, 0.15, 0.65)},
        };
        for (const auto& fx : smooth) {
            const double m33 = maxOf(lift(synthesizePath(fx.spec33).path).diagnostics.supModuli);
            const double m65 = maxOf(lift(synthesizePath(fx.spec65).path).diagnostics.supModuli);
            const double m129 = maxOf(lift(synthesizePath(fx.spec129).path).diagnostics.supModuli);
            const double r1 = m33 / m65, r2 = m65 / m129;
            if (r1 < 1.5 || r2 < 1.5) refineOk = false;
            refineDetail += fmt("%.2fx/%.2fx ", r1, r2);
        }
        const bool chainPassAll = liftErrors.empty() && chainFailures == 0 && refineOk;
        char chainDetail[160];
        std::snprintf(chainDetail, sizeof(chainDetail),
                      "%d chain violations, worst ratio %.2f; shrink ", chainFailures,
                      worstChainRatio);
        results.push_back({4, "main theorem chain ceiling x 1.1 and 1.5x modulus shrink",
                           chainPassAll, chainDetail + refineDetail});
    }

    // ---- criterion 5: exact closed forms ----------------------------------
    {
        bool pass = true;
        std::string detail;

        const SynthesizedPath constPath = synthesizePath(makeConstantSpec(3, 2, kTPoints, kDegree));
        const LiftResult constLift = lift(constPath.path);
        double constErr = 0.0;
        const Matrix g0 = constPath.truth[0].coeff(0);
        const Matrix residual = Matrix::Identity(3, 3) - g0 * g0.adjoint();
        for (const MatrixLaurentSeries& g : constLift.gTilde) {
            for (int k = 1; k <= g.hi(); ++k) constErr = std::max(constErr, g.coeff(k).norm());
            constErr = std::max(constErr, (g.coeff(0) - constLift.gTilde[0].coeff(0)).norm());
            constErr = std::max(constErr, (residual * g.coeff(0)).norm());
        }
        pass = pass && constErr <= 1e-10;
        detail += fmt("constant %.2g ", constErr);

        const SynthesizedPath zPath = synthesizePath(makeShiftedSpec(2, kTPoints, kDegree));
        const LiftResult zLift = lift(zPath.path);
        double zErr = 0.0;
        for (const MatrixLaurentSeries& g : zLift.gTilde) {
            for (int k = 0; k <= g.hi(); ++k) {
                const Matrix expect = k == 1 ? Matrix(Matrix::Identity(2, 2))
                                             : Matrix(Matrix::Zero(2, 2));
                zErr = std::max(zErr, (g.coeff(k) - expect).norm());
            }
        }
        pass = pass && zErr <= 1e-10;
        detail += fmt("zH2 %.2g ", zErr);

        const SynthesizedPath bPath = synthesizePath(makeBlaschkeLineSpec(0.5, 0.5, kTPoints, kDegree));
        const LiftResult bLift = lift(bPath.path);
        const MatrixLaurentSeries oracle = blaschkeScalar(Complex(0.5, 0.0), kDegree);
        double bErr = 0.0;
        for (const MatrixLaurentSeries& g : bLift.gTilde) {
            // L2 error up to a unimodular phase
            Complex ip = 0.0;
            double ng = 0.0;
            for (int k = 0; k <= kDegree; ++k) {
                ip += std::conj(g.coeff(k)(0, 0)) * oracle.coeff(k)(0, 0);
                ng += std::norm(g.coeff(k)(0, 0));
            }
            const double err2 = ng + 1.0 - 2.0 * std::abs(ip);
            bErr = std::max(bErr, std::sqrt(std::max(0.0, err2)));
        }
        pass = pass && bErr <= 1e-8;
        detail += fmt("b_half %.2g", bErr);

        results.push_back({5, "exact closed forms (constant, zH2, b_1/2)", pass, detail});
    }

    // ---- criterion 6: crossing fixture has no discontinuity spike ---------
    {
        const SynthesizedPath cross = synthesizePath(makeCrossingSpec(kTPoints, kDegree, true));
        const LiftResult res = lift(cross.path);
        const auto& steps = res.diagnostics.supModuli;
        // the crossing sits between indices 15 and 16 of the 33-point grid
        const double atCrossing = std::max(steps[15], steps[16]);
        std::vector<double> others;
        for (size_t j = 0; j < steps.size(); ++j)
            if (j != 15 && j != 16) others.push_back(steps[j]);
        std::sort(others.begin(), others.end());
        const double median = others[others.size() / 2];
        const bool pass = atCrossing <= 2.0 * median;
        results.push_back({6, "crossing step stays below twice the median modulus", pass,
                           fmt("crossing %.3g vs median %.3g", atCrossing, median)});
    }

    // ---- criterion 7: gauge invariance across candidate lattices ----------
    {
        double worst = 0.0;
        bool ok = true;
        try {
            {
                const SynthesizedPath sp =
                    synthesizePath(makeBlaschkeLineSpec(0.3, 0.5, kTPoints, kDegree));
                LiftOptions alt;
                alt.latticeRadii = {0.1};
                worst = std::max(worst, gaugeVariance(lift(sp.path), lift(sp.path, alt), 128));
            }
            {
                InnerPathSpec spec;
                spec.n = 2;
                spec.m = 2;
                spec.D = kDegree;
                spec.tGrid = uniformTGrid(kTPoints);
                spec.embedIsometry = Matrix::Identity(2, 2);
                FactorPath f1, f2;
                f1.projector = Matrix::Zero(2, 2);
                f1.projector(0, 0) = 1.0;
                f1.unitaryTable = {Matrix::Identity(2, 2)};
                f2.projector = Matrix::Zero(2, 2);
                f2.projector(1, 1) = 1.0;
                f2.unitaryTable = {Matrix::Identity(2, 2)};
                for (double t : spec.tGrid) {
                    f1.zeroTable.push_back(Complex(0.35 + 0.2 * t, 0.0));
                    f2.zeroTable.push_back(Complex(0.55 - 0.15 * t, 0.0));
                }
                spec.factors = {f1, f2};
                spec.validate();
                const SynthesizedPath sp = synthesizePath(spec);
                LiftOptions alt;
                alt.latticeRadii = {0.15};
                worst = std::max(worst, gaugeVariance(lift(sp.path), lift(sp.path, alt), 128));
            }
            {
                const SynthesizedPath sp = synthesizePath(makeConstantSpec(3, 2, kTPoints, kDegree));
                LiftOptions alt;
                alt.latticeRadii = {0.0, 0.25, 0.5};
                worst = std::max(worst, gaugeVariance(lift(sp.path), lift(sp.path, alt), 128));
            }
        } catch (const std::exception& e) {
            ok = false;
        }
        const bool pass = ok && worst <= 1e-6;
        results.push_back({7, "two lattices differ by one constant unitary", pass,
                           fmt("worst pointwise variance %.3g", worst)});
    }

    // ---- criterion 8: determinism ------------------------------------------
    {
        auto runOnce = [&]() {
            const RunConfig config = RunConfig::fromJson(Json::parse(R"({
                "fixture": {"preset": "seeded", "seed": 7, "n": 2, "m": 1,
                             "factors": 2, "tGridCount": 9, "D": 48},
                "rValues": [0.5], "JKernel": 64, "JTheta": 256
            })"));
            const SynthesizedPath sp = runGenerate(config);
            const LiftResult lifted = runLift(sp.path, config.liftOptions);
            const auto reports = runVerify(lifted, config.rValues, config.verifyOptions);
            return dumpJson(pathToJson(sp.path)) + dumpJson(liftToJson(lifted)) +
                   reportCsv(reports) + liftCsv(lifted);
        };
        const std::string first = runOnce();
        const std::string second = runOnce();
        const bool pass = first == second;
        results.push_back({8, "identical config and seed give byte-identical reports",
                           pass, std::to_string(first.size()) + " bytes compared"});
    }

    int failures = 0;
    for (const Criterion& c : results) {
        if (!c.pass) ++failures;
        std::printf("[%s] criterion %d: %s (%s)\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), c.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", (int)results.size() - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
