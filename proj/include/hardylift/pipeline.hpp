#pragma once

#include <string>
#include <vector>

#include "hardylift/json_io.hpp"

namespace hardylift {

inline constexpr const char* kVersion = "0.1.0";

/// Everything one run needs: the path source, grid sizes, radii, tolerances.
/// The spec is only required by generate; lift/verify configs may carry
/// tolerances and grids alone.
struct RunConfig {
    std::optional<InnerPathSpec> spec;
    std::vector<double> rValues{0.5, 0.9};
    LiftOptions liftOptions;
    VerifyOptions verifyOptions;
    std::uint64_t seed = 0;
    Json raw;  // the parsed config document, for hashing and the manifest

    static RunConfig fromJson(const Json& j);
    static RunConfig fromFile(const std::string& path);
};

std::string fnv1aHex(const std::string& bytes);

struct StageTiming {
    std::string stage;
    double milliseconds;
};

Json manifestJson(const RunConfig& config, const std::vector<StageTiming>& timings,
                  const Json& summary);

/// generate: synthesize the projection path and ground truth from the spec.
SynthesizedPath runGenerate(const RunConfig& config);

/// lift: the full pipeline on a (possibly externally produced) path.
LiftResult runLift(const ProjectionPath& path, const LiftOptions& opts);

/// verify: kernel bound and theorem chain at every configured radius.
std::vector<ContinuityReport> runVerify(const LiftResult& lift,
                                        const std::vector<double>& rValues,
                                        const VerifyOptions& opts);

std::string liftCsv(const LiftResult& lift);
std::string reportCsv(const std::vector<ContinuityReport>& reports);
std::string modulusPlotCsv(const LiftResult& lift);
std::string boundPlotCsv(const std::vector<ContinuityReport>& reports);

void writeFile(const std::string& path, const std::string& contents);
std::string readFile(const std::string& path);

}  // namespace hardylift
