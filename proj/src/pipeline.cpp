#include "hardylift/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hardylift {

namespace {

InnerPathSpec specFromFixture(const Json& fx) {
    const std::string preset = fx.at("preset").get<std::string>();
    const int tCount = fx.value("tGridCount", 33);
    const int D = fx.value("D", 64);
    if (preset == "seeded") {
        return makeSeededSpec(fx.value("seed", std::uint64_t{1}), fx.value("n", 2),
                              fx.value("m", 1), fx.value("factors", 2), tCount, D,
                              fx.value("aMin", 0.15), fx.value("aMax", 0.65));
    }
    if (preset == "crossing")
        return makeCrossingSpec(tCount, D, fx.value("rotateFrame", true));
    if (preset == "constant")
        return makeConstantSpec(fx.value("n", 2), fx.value("m", 1), tCount, D);
    if (preset == "shifted") return makeShiftedSpec(fx.value("n", 1), tCount, D);
    if (preset == "blaschke-line") {
        const Complex a0 = fx.contains("a0") ? complexFromJson(fx.at("a0"))
                                             : Complex(0.3, 0.0);
        const Complex a1 = fx.contains("a1") ? complexFromJson(fx.at("a1"))
                                             : Complex(0.5, 0.0);
        return makeBlaschkeLineSpec(a0, a1, tCount, D);
    }
    if (preset == "blaschke-circle")
        return makeBlaschkeCircleSpec(fx.value("rho", 0.5), tCount, D);
    throw std::invalid_argument("config: unknown fixture preset '" + preset + "'");
}

std::string formatDouble(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RunConfig RunConfig::fromJson(const Json& j) {
    RunConfig config;
    config.raw = j;
    if (j.contains("spec"))
        config.spec = specFromJson(j.at("spec"));
    else if (j.contains("fixture"))
        config.spec = specFromFixture(j.at("fixture"));

    config.rValues = j.value("rValues", std::vector<double>{0.5, 0.9});
    for (double r : config.rValues)
        if (r <= 0.0 || r >= 1.0)
            throw std::invalid_argument("config: rValues must lie in (0, 1)");
    config.seed = j.value("seed", std::uint64_t{0});

    LiftOptions& lo = config.liftOptions;
    if (j.contains("tolerances")) {
        const Json& tol = j.at("tolerances");
        lo.tolInner = tol.value("tolInner", lo.tolInner);
        lo.tolInv = tol.value("tolInv", lo.tolInv);
        lo.tolLift = tol.value("tolLift", lo.tolLift);
        lo.etaMin = tol.value("etaMin", lo.etaMin);
        config.verifyOptions.slackBound = tol.value("slackBound", 1.05);
        config.verifyOptions.slackChain = tol.value("slackChain", 1.1);
        if (lo.tolInner <= 0 || lo.tolInv <= 0 || lo.tolLift <= 0 || lo.etaMin <= 0)
            throw std::invalid_argument("config: tolerances must be positive");
    }
    if (j.contains("lattice")) {
        const Json& lat = j.at("lattice");
        lo.latticeRadii = lat.value("radii", lo.latticeRadii);
        lo.latticePhases = lat.value("phases", lo.latticePhases);
    }
    lo.thetaGrid = j.value("JTheta", lo.thetaGrid);
    lo.threads = j.value("threads", 0);
    config.verifyOptions.kernelGrid = j.value("JKernel", 256);
    config.verifyOptions.thetaGrid = lo.thetaGrid;
    config.verifyOptions.threads = lo.threads;
    return config;
}

RunConfig RunConfig::fromFile(const std::string& path) {
    Json j;
    try {
        j = Json::parse(readFile(path));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    return fromJson(j);
}

std::string fnv1aHex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json manifestJson(const RunConfig& config, const std::vector<StageTiming>& timings,
                  const Json& summary) {
    Json t = Json::object();
    for (const StageTiming& st : timings) t[st.stage] = st.milliseconds;
    return Json{{"configHash", fnv1aHex(config.raw.dump())},
                {"version", kVersion},
                {"timingsMs", std::move(t)},
                {"summary", summary}};
}

SynthesizedPath runGenerate(const RunConfig& config) {
    if (!config.spec.has_value())
        throw std::invalid_argument("config: generate needs a 'spec' or a 'fixture' entry");
    return synthesizePath(*config.spec, config.liftOptions.tolInner);
}

LiftResult runLift(const ProjectionPath& path, const LiftOptions& opts) {
    return lift(path, opts);
}

std::vector<ContinuityReport> runVerify(const LiftResult& lift,
                                        const std::vector<double>& rValues,
                                        const VerifyOptions& opts) {
    std::vector<ContinuityReport> out;
    out.reserve(rValues.size());
    for (double r : rValues) out.push_back(mainTheoremCheck(lift, r, opts));
    return out;
}

std::string liftCsv(const LiftResult& lift) {
    std::ostringstream out;
    out << "index,t,certificateDefect,roundTripResidual,baseConsistency,"
           "pathModulusPrev,supModulusPrev\n";
    for (size_t i = 0; i < lift.tGrid.size(); ++i) {
        out << i << ',' << formatDouble(lift.tGrid[i]) << ','
            << formatDouble(lift.diagnostics.certificateDefects[i]) << ','
            << formatDouble(lift.diagnostics.roundTripResiduals[i]) << ','
            << formatDouble(lift.diagnostics.baseConsistency[i]) << ',';
        if (i > 0) {
            out << formatDouble(lift.diagnostics.pathModulus[i - 1]) << ','
                << formatDouble(lift.diagnostics.supModuli[i - 1]);
        } else {
            out << ",";
        }
        out << '\n';
    }
    return out.str();
}

std::string reportCsv(const std::vector<ContinuityReport>& reports) {
    std::ostringstream out;
    out << "r,tIndex,sIndex,dp,fInf,fStarInf,sectionSup,sectionRefinedShift,"
           "kernelBound,kernelMargin,kernelPass,eta,interiorTerm,supDist,"
           "ceiling,chainPass\n";
    for (const ContinuityReport& report : reports) {
        for (const PairRecord& rec : report.records) {
            out << formatDouble(report.r) << ',' << rec.tIndex << ',' << rec.sIndex
                << ',' << formatDouble(rec.dp) << ',' << formatDouble(rec.fInf) << ','
                << formatDouble(rec.fStarInf) << ',' << formatDouble(rec.sectionSup)
                << ',' << formatDouble(rec.sectionRefinedShift) << ','
                << formatDouble(rec.kernelBound) << ','
                << formatDouble(rec.kernelMargin) << ',' << (rec.kernelPass ? 1 : 0)
                << ',' << formatDouble(rec.eta) << ','
                << formatDouble(rec.interiorTerm) << ',' << formatDouble(rec.supDist)
                << ',' << formatDouble(rec.ceiling) << ',' << (rec.chainPass ? 1 : 0)
                << '\n';
        }
    }
    return out.str();
}

std::string modulusPlotCsv(const LiftResult& lift) {
    std::ostringstream out;
    out << "t,pathModulus,supModulus\n";
    for (size_t j = 0; j < lift.diagnostics.supModuli.size(); ++j) {
        out << formatDouble(lift.tGrid[j + 1]) << ','
            << formatDouble(lift.diagnostics.pathModulus[j]) << ','
            << formatDouble(lift.diagnostics.supModuli[j]) << '\n';
    }
    return out.str();
}

std::string boundPlotCsv(const std::vector<ContinuityReport>& reports) {
    std::ostringstream out;
    out << "r,dp,fStarInf,bound\n";
    for (const ContinuityReport& report : reports)
        for (const PairRecord& rec : report.records)
            out << formatDouble(report.r) << ',' << formatDouble(rec.dp) << ','
                << formatDouble(rec.fStarInf) << ',' << formatDouble(rec.kernelBound)
                << '\n';
    return out.str();
}

void writeFile(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace hardylift
