#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hardylift/json_io.hpp"
#include "hardylift/pipeline.hpp"

namespace py = pybind11;
using namespace hardylift;

namespace {

Json parseOrThrow(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string(what) + ": " + e.what());
    }
}

LiftOptions liftOptionsFrom(const std::string& configJson) {
    if (configJson.empty()) return LiftOptions{};
    return RunConfig::fromJson(parseOrThrow(configJson, "config")).liftOptions;
}

VerifyOptions verifyOptionsFrom(const std::string& configJson) {
    if (configJson.empty()) return VerifyOptions{};
    return RunConfig::fromJson(parseOrThrow(configJson, "config")).verifyOptions;
}

}  // namespace

PYBIND11_MODULE(_hardylift, m) {
    m.doc() = "Truncated Hardy-space toolkit: canonical inner-function lifting "
              "for norm-continuous paths of shift-invariant subspaces";
    m.attr("__version__") = kVersion;

    m.def(
        "blaschke_scalar",
        [](std::complex<double> a, int degree) {
            const MatrixLaurentSeries b = blaschkeScalar(a, degree);
            std::vector<std::complex<double>> out;
            for (int k = 0; k <= b.hi(); ++k) out.push_back(b.coeff(k)(0, 0));
            return out;
        },
        py::arg("a"), py::arg("degree") = 64,
        "Taylor coefficients of the scalar Blaschke factor with zero a, "
        "truncated at the given degree (the k-th entry multiplies z^k).");

    m.def(
        "eval_series",
        [](const std::string& seriesJson, double theta, double r) {
            const MatrixLaurentSeries s =
                seriesFromJson(parseOrThrow(seriesJson, "series"));
            const Matrix v = eval(s, CirclePoint{theta, r});
            std::vector<std::vector<std::complex<double>>> out(
                static_cast<size_t>(v.rows()));
            for (Eigen::Index i = 0; i < v.rows(); ++i)
                for (Eigen::Index j = 0; j < v.cols(); ++j)
                    out[static_cast<size_t>(i)].push_back(v(i, j));
            return out;
        },
        py::arg("series_json"), py::arg("theta"), py::arg("r") = 1.0,
        "Evaluate a serialized matrix Laurent series at r * e^{i theta}.");

    m.def(
        "l2_distance",
        [](const std::string& aJson, const std::string& bJson, int grid) {
            const L2Distance d =
                l2Distance(seriesFromJson(parseOrThrow(aJson, "series")),
                           seriesFromJson(parseOrThrow(bJson, "series")), grid);
            return py::make_tuple(d.hs, d.operatorGrid);
        },
        py::arg("a_json"), py::arg("b_json"), py::arg("grid") = 1024,
        "Pair (Hilbert-Schmidt, grid operator-norm) L2 distances of two series.");

    m.def(
        "sup_norm_distance",
        [](const std::string& aJson, const std::string& bJson, int grid) {
            return supNormDistance(seriesFromJson(parseOrThrow(aJson, "series")),
                                   seriesFromJson(parseOrThrow(bJson, "series")), grid);
        },
        py::arg("a_json"), py::arg("b_json"), py::arg("grid") = 1024);

    m.def(
        "kernel_bound_constant", &kernelBoundConstant, py::arg("n"), py::arg("r"),
        "sqrt(n / (1 - r^2)).");

    m.def(
        "generate",
        [](const std::string& configJson) {
            const RunConfig config =
                RunConfig::fromJson(parseOrThrow(configJson, "config"));
            const SynthesizedPath sp = runGenerate(config);
            Json truth = Json::array();
            for (const MatrixLaurentSeries& g : sp.truth)
                truth.push_back(seriesToJson(g));
            py::dict out;
            out["path"] = dumpJson(pathToJson(sp.path));
            out["truth"] = dumpJson(truth);
            return out;
        },
        py::arg("config_json"),
        "Synthesize a projection path from a run configuration; returns "
        "serialized path and ground-truth inner functions.");

    m.def(
        "lift_path",
        [](const std::string& pathJson, const std::string& configJson) {
            const ProjectionPath path =
                pathFromJson(parseOrThrow(pathJson, "path"));
            const LiftResult res = runLift(path, liftOptionsFrom(configJson));
            return dumpJson(liftToJson(res));
        },
        py::arg("path_json"), py::arg("config_json") = std::string(),
        "Lift a projection path to a canonical continuous inner family.");

    m.def(
        "verify_lift",
        [](const std::string& liftJson, const std::vector<double>& rValues,
           const std::string& configJson) {
            const LiftResult lifted = liftFromJson(parseOrThrow(liftJson, "lift"));
            const auto reports =
                runVerify(lifted, rValues, verifyOptionsFrom(configJson));
            Json arr = Json::array();
            for (const ContinuityReport& r : reports) arr.push_back(reportToJson(r));
            return dumpJson(arr);
        },
        py::arg("lift_json"), py::arg("r_values") = std::vector<double>{0.5, 0.9},
        py::arg("config_json") = std::string(),
        "Run the kernel-bound and continuity-chain checks on a lift result.");

    m.def(
        "wandering_dimensions",
        [](const std::string& pathJson) {
            const ProjectionPath path = pathFromJson(parseOrThrow(pathJson, "path"));
            std::vector<int> out;
            for (const OrthoProjection& p : path.projections)
                out.push_back(wanderingDimension(p, path.model));
            return out;
        },
        py::arg("path_json"));

    m.def(
        "path_modulus",
        [](const std::string& pathJson) {
            return pathModulus(pathFromJson(parseOrThrow(pathJson, "path")));
        },
        py::arg("path_json"));
}
