#include <doctest.h>

#include <random>

#include "hardylift/json_io.hpp"
#include "hardylift/pipeline.hpp"

using namespace hardylift;

namespace {

MatrixLaurentSeries randomSeries(std::uint64_t seed, int rows, int cols, int lo, int hi) {
    std::mt19937_64 gen(seed);
    auto u = [&]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    std::vector<Matrix> coeffs;
    for (int k = lo; k <= hi; ++k) {
        Matrix c(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) c(i, j) = Complex(u(), u());
        coeffs.push_back(c);
    }
    return MatrixLaurentSeries(rows, cols, lo, std::move(coeffs));
}

}  // namespace

TEST_CASE("json: series round-trips exactly") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        const MatrixLaurentSeries s =
            randomSeries(seed, 2 + seed % 2, 1 + seed % 3, -(int)(seed % 2), 6);
        const MatrixLaurentSeries back = seriesFromJson(seriesToJson(s));
        REQUIRE(back.rows() == s.rows());
        REQUIRE(back.cols() == s.cols());
        REQUIRE(back.lo() == s.lo());
        for (int k = s.lo(); k <= s.hi(); ++k)
            CHECK((back.coeff(k) - s.coeff(k)).norm() == 0.0);
    }
}

TEST_CASE("json: projection path round-trips through the model header") {
    const SynthesizedPath sp = synthesizePath(makeBlaschkeLineSpec(0.3, 0.4, 5, 32));
    const Json j = pathToJson(sp.path);
    CHECK(j.at("model").at("n") == 1);
    CHECK(j.at("model").at("D") == 32);
    CHECK(j.at("model").at("tGrid").size() == 5);
    const ProjectionPath back = pathFromJson(j);
    CHECK(back.columnCap == sp.path.columnCap);
    for (size_t i = 0; i < back.projections.size(); ++i) {
        CHECK((back.projections[i].matrix - sp.path.projections[i].matrix).norm() == 0.0);
    }
}

TEST_CASE("json: spec round-trip preserves the synthesized product") {
    const InnerPathSpec spec = makeSeededSpec(9, 2, 2, 2, 5, 32);
    const InnerPathSpec back = specFromJson(specToJson(spec));
    const InnerCertificate a = potapovProduct(spec, 3);
    const InnerCertificate b = potapovProduct(back, 3);
    CHECK(supNormDistance(a.series, b.series, 128) < 1e-12);
}

TEST_CASE("json: spec accepts the compact external schema") {
    const Json j = Json::parse(R"({
        "n": 2, "m": 1, "D": 24,
        "tGrid": {"count": 5},
        "embed": {"matrix": [[1.0, 0.0], [0.0, 0.0]]},
        "factors": [
            {"a": [0.4, 0.1], "P": {"vector": [[1.0, 0.0]]}}
        ]
    })");
    const InnerPathSpec spec = specFromJson(j);
    CHECK(spec.tGrid.size() == 5);
    CHECK(spec.factors.size() == 1);
    CHECK(spec.factors[0].zeroTable.size() == 1);  // constant trajectory
    CHECK(spec.factors[0].zeroTable[0] == Complex(0.4, 0.1));
    CHECK_NOTHROW(potapovProduct(spec, 0));
}

TEST_CASE("json: lift result round-trips with diagnostics") {
    const SynthesizedPath sp = synthesizePath(makeBlaschkeLineSpec(0.3, 0.4, 5, 32));
    const LiftResult res = lift(sp.path);
    const LiftResult back = liftFromJson(liftToJson(res));
    CHECK(back.m == res.m);
    CHECK(back.columnCap == res.columnCap);
    REQUIRE(back.gTilde.size() == res.gTilde.size());
    for (size_t i = 0; i < back.gTilde.size(); ++i)
        CHECK(supNormDistance(back.gTilde[i], res.gTilde[i], 128) == 0.0);
    REQUIRE(back.cover.size() == res.cover.size());
    CHECK(back.cover[0].etaFloor == res.cover[0].etaFloor);
    CHECK(back.diagnostics.roundTripResiduals == res.diagnostics.roundTripResiduals);
    CHECK(back.diagnostics.pathModulus == res.diagnostics.pathModulus);
}

TEST_CASE("json: continuity report round-trips") {
    const SynthesizedPath sp = synthesizePath(makeConstantSpec(2, 1, 5, 24));
    const LiftResult res = lift(sp.path);
    VerifyOptions opts;
    opts.kernelGrid = 64;
    opts.thetaGrid = 128;
    opts.checkSections = false;
    const ContinuityReport report = mainTheoremCheck(res, 0.5, opts);
    const ContinuityReport back = reportFromJson(reportToJson(report));
    CHECK(back.allPass == report.allPass);
    REQUIRE(back.records.size() == report.records.size());
    CHECK(back.records[0].ceiling == report.records[0].ceiling);
    CHECK(back.records[0].kernelPass == report.records[0].kernelPass);
}

TEST_CASE("json: malformed payloads are rejected") {
    CHECK_THROWS_AS(complexFromJson(Json::array({1.0})), std::invalid_argument);
    CHECK_THROWS_AS(matrixFromJson(Json::array({Json::array({1.0, 0.0})}), 2, 2),
                    std::invalid_argument);
    Json badSpec{{"n", 1}, {"m", 2}, {"tGrid", Json{{"count", 3}}}};
    CHECK_THROWS(specFromJson(badSpec));
}

TEST_CASE("dumpJson: canonical form is stable") {
    const Json j{{"b", 1.5}, {"a", Json::array({1, 2})}};
    CHECK(dumpJson(j) == dumpJson(j));
    CHECK(dumpJson(j).back() == '\n');
}

TEST_CASE("config: fixture presets and tolerance overrides") {
    const Json j = Json::parse(R"({
        "fixture": {"preset": "blaschke-line", "a0": [0.3, 0.0], "a1": [0.5, 0.0],
                     "tGridCount": 9, "D": 32},
        "rValues": [0.5],
        "JKernel": 64,
        "tolerances": {"tolLift": 1e-5, "slackChain": 1.2}
    })");
    const RunConfig config = RunConfig::fromJson(j);
    REQUIRE(config.spec.has_value());
    CHECK(config.spec->n == 1);
    CHECK(config.spec->tGrid.size() == 9);
    CHECK(config.liftOptions.tolLift == 1e-5);
    CHECK(config.verifyOptions.slackChain == 1.2);
    CHECK(config.verifyOptions.kernelGrid == 64);
    CHECK(config.rValues == std::vector<double>{0.5});
}

TEST_CASE("config: missing path source only blocks generation") {
    const RunConfig cfg = RunConfig::fromJson(Json{{"rValues", Json::array({0.5})}});
    CHECK_FALSE(cfg.spec.has_value());
    CHECK_THROWS_AS(runGenerate(cfg), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::fromJson(Json::parse(
                        R"({"fixture": {"preset": "nope"}})")),
                    std::invalid_argument);
}

TEST_CASE("fnv1a: stable and distinct") {
    CHECK(fnv1aHex("abc") == fnv1aHex("abc"));
    CHECK(fnv1aHex("abc") != fnv1aHex("abd"));
    CHECK(fnv1aHex("").size() == 16);
}
