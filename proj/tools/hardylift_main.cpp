#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "hardylift/pipeline.hpp"

namespace fs = std::filesystem;
using namespace hardylift;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

double msSince(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
}

int threadOverride(int fromFlag) {
    if (fromFlag > 0) return fromFlag;
    if (const char* env = std::getenv("HARDYLIFT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return fromFlag;
}

void ensureDir(const std::string& dir) {
    if (!dir.empty()) fs::create_directories(dir);
}

std::string joinPath(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

int cmdGenerate(const std::string& configPath, const std::string& outDir, int threads) {
    RunConfig config = RunConfig::fromFile(configPath);
    config.liftOptions.threads = threadOverride(threads > 0 ? threads
                                                            : config.liftOptions.threads);
    ensureDir(outDir);
    const auto start = std::chrono::steady_clock::now();
    SynthesizedPath generated = runGenerate(config);
    const double ms = msSince(start);

    writeFile(joinPath(outDir, "path.json"), dumpJson(pathToJson(generated.path)));
    Json truth = Json::array();
    for (const MatrixLaurentSeries& g : generated.truth) truth.push_back(seriesToJson(g));
    writeFile(joinPath(outDir, "truth.json"), dumpJson(truth));

    Json summary{{"tPoints", generated.path.tGrid.size()},
                 {"n", generated.path.model.n},
                 {"D", generated.path.model.D},
                 {"columnCap", generated.path.columnCap.value_or(-1)}};
    writeFile(joinPath(outDir, "manifest.json"),
              dumpJson(manifestJson(config, {{"generate", ms}}, summary)));
    std::cout << "generate: wrote " << generated.path.tGrid.size()
              << " projections to " << outDir << "\n";
    return kExitPass;
}

int cmdLift(const std::string& pathFile, const std::string& configPath,
            const std::string& outDir, int threads) {
    LiftOptions opts;
    Json rawConfig = Json::object();
    if (!configPath.empty()) {
        RunConfig config = RunConfig::fromFile(configPath);
        opts = config.liftOptions;
        rawConfig = config.raw;
    }
    opts.threads = threadOverride(threads > 0 ? threads : opts.threads);

    Json pathJson;
    try {
        pathJson = Json::parse(readFile(pathFile));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("path parse error: ") + e.what());
    }
    const ProjectionPath path = pathFromJson(pathJson);
    ensureDir(outDir);
    const auto start = std::chrono::steady_clock::now();
    const LiftResult result = runLift(path, opts);
    const double ms = msSince(start);

    writeFile(joinPath(outDir, "lift.json"), dumpJson(liftToJson(result)));
    writeFile(joinPath(outDir, "lift.csv"), liftCsv(result));

    double worstResidual = 0.0;
    for (double v : result.diagnostics.roundTripResiduals)
        worstResidual = std::max(worstResidual, v);
    Json summary{{"m", result.m},
                 {"intervals", result.cover.size()},
                 {"worstRoundTrip", worstResidual}};
    Json manifest{{"configHash", fnv1aHex(rawConfig.dump())},
                  {"version", kVersion},
                  {"timingsMs", Json{{"lift", ms}}},
                  {"summary", summary}};
    writeFile(joinPath(outDir, "manifest.json"), dumpJson(manifest));
    std::cout << "lift: m = " << result.m << ", " << result.cover.size()
              << " cover interval(s), worst round-trip residual " << worstResidual
              << "\n";
    return kExitPass;
}

int cmdVerify(const std::string& liftFile, const std::string& configPath,
              std::vector<double> rValues, bool plotData, const std::string& outDir,
              int threads) {
    VerifyOptions opts;
    Json rawConfig = Json::object();
    if (!configPath.empty()) {
        RunConfig config = RunConfig::fromFile(configPath);
        opts = config.verifyOptions;
        rawConfig = config.raw;
        if (rValues.empty()) rValues = config.rValues;
    }
    if (rValues.empty()) rValues = {0.5, 0.9};
    opts.threads = threadOverride(threads > 0 ? threads : opts.threads);

    Json liftJson;
    try {
        liftJson = Json::parse(readFile(liftFile));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("lift parse error: ") + e.what());
    }
    const LiftResult lifted = liftFromJson(liftJson);
    ensureDir(outDir);
    const auto start = std::chrono::steady_clock::now();
    const std::vector<ContinuityReport> reports = runVerify(lifted, rValues, opts);
    const double ms = msSince(start);

    Json reportArr = Json::array();
    for (const ContinuityReport& r : reports) reportArr.push_back(reportToJson(r));
    writeFile(joinPath(outDir, "report.json"), dumpJson(reportArr));
    writeFile(joinPath(outDir, "report.csv"), reportCsv(reports));
    if (plotData) {
        writeFile(joinPath(outDir, "plot_modulus.csv"), modulusPlotCsv(lifted));
        writeFile(joinPath(outDir, "plot_bound.csv"), boundPlotCsv(reports));
    }

    bool allPass = true;
    std::string firstFailure;
    for (const ContinuityReport& report : reports) {
        for (const PairRecord& rec : report.records) {
            if (!rec.kernelPass && firstFailure.empty())
                firstFailure = "kernel bound at r=" + std::to_string(report.r) +
                               " pair (" + std::to_string(rec.sIndex) + "," +
                               std::to_string(rec.tIndex) + "): ||F*|| = " +
                               std::to_string(rec.fStarInf) + " > " +
                               std::to_string(rec.kernelBound * report.slackBound);
            if (!rec.chainPass && firstFailure.empty())
                firstFailure = "theorem chain at r=" + std::to_string(report.r) +
                               " pair (" + std::to_string(rec.sIndex) + "," +
                               std::to_string(rec.tIndex) + "): supDist = " +
                               std::to_string(rec.supDist) + " > " +
                               std::to_string(rec.ceiling);
        }
        allPass = allPass && report.allPass;
    }

    Json manifest{{"configHash", fnv1aHex(rawConfig.dump())},
                  {"version", kVersion},
                  {"timingsMs", Json{{"verify", ms}}},
                  {"summary", Json{{"allPass", allPass}}}};
    writeFile(joinPath(outDir, "manifest.json"), dumpJson(manifest));

    if (!allPass) {
        std::cerr << "verify: FAIL — " << firstFailure << "\n";
        return kExitVerifyFail;
    }
    std::cout << "verify: all checks passed at r = {";
    for (size_t i = 0; i < rValues.size(); ++i)
        std::cout << (i ? ", " : "") << rValues[i];
    std::cout << "}\n";
    return kExitPass;
}

int cmdReport(const std::string& reportFile) {
    Json reportArr;
    try {
        reportArr = Json::parse(readFile(reportFile));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("report parse error: ") + e.what());
    }
    bool allPass = true;
    for (const Json& rj : reportArr) {
        const ContinuityReport report = reportFromJson(rj);
        int kernelFails = 0, chainFails = 0;
        double worstKernelMargin = 1e300, worstChainGap = 1e300;
        for (const PairRecord& rec : report.records) {
            if (!rec.kernelPass) ++kernelFails;
            if (!rec.chainPass) ++chainFails;
            worstKernelMargin = std::min(worstKernelMargin, rec.kernelMargin);
            worstChainGap = std::min(worstChainGap, rec.ceiling - rec.supDist);
        }
        std::cout << "r = " << report.r << ": " << report.records.size()
                  << " pairs, kernel failures " << kernelFails
                  << ", chain failures " << chainFails << ", worst kernel margin "
                  << worstKernelMargin << ", worst chain gap " << worstChainGap
                  << (report.allPass ? "  [pass]" : "  [FAIL]") << "\n";
        allPass = allPass && report.allPass;
    }
    return allPass ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Canonical inner-function lifting for shift-invariant subspace paths"};
    app.require_subcommand(1);

    std::string configPath, outDir = ".", pathFile, liftFile, reportFile;
    std::vector<double> rValues;
    bool plotData = false;
    int threads = 0;

    CLI::App* gen = app.add_subcommand("generate", "synthesize a projection path");
    gen->add_option("--config", configPath, "run configuration JSON")->required();
    gen->add_option("--out", outDir, "output directory");
    gen->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* lft = app.add_subcommand("lift", "lift a path to an inner family");
    lft->add_option("--path", pathFile, "projection path JSON")->required();
    lft->add_option("--config", configPath, "run configuration JSON");
    lft->add_option("--out", outDir, "output directory");
    lft->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* ver = app.add_subcommand("verify", "check the continuity inequalities");
    ver->add_option("--lift", liftFile, "lift result JSON")->required();
    ver->add_option("--config", configPath, "run configuration JSON");
    ver->add_option("--r", rValues, "interior radius (repeatable)");
    ver->add_flag("--plot-data", plotData, "emit plotting CSV files");
    ver->add_option("--out", outDir, "output directory");
    ver->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* rep = app.add_subcommand("report", "summarize a verification report");
    rep->add_option("--report", reportFile, "report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitInputError;
    }

    try {
        if (gen->parsed()) return cmdGenerate(configPath, outDir, threads);
        if (lft->parsed()) return cmdLift(pathFile, configPath, outDir, threads);
        if (ver->parsed())
            return cmdVerify(liftFile, configPath, rValues, plotData, outDir, threads);
        if (rep->parsed()) return cmdReport(reportFile);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const LiftError& e) {
        std::cerr << "lift failure: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitInputError;
}
