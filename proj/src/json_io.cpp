#include "hardylift/json_io.hpp"

#include <stdexcept>

namespace hardylift {

Json complexToJson(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complexFromJson(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("json: complex must be [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Json matrixToJson(const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(complexToJson(m(i, k)));
    return out;
}

Matrix matrixFromJson(const Json& j, int rows, int cols) {
    if (!j.is_array() || j.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("json: matrix entry count mismatch");
    Matrix m(rows, cols);
    size_t idx = 0;
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) m(i, k) = complexFromJson(j[idx++]);
    return m;
}

Json seriesToJson(const MatrixLaurentSeries& s) {
    Json coeffs = Json::array();
    for (const Matrix& c : s.coeffs()) coeffs.push_back(matrixToJson(c));
    return Json{{"rows", s.rows()}, {"cols", s.cols()}, {"lo", s.lo()},
                {"coeffs", std::move(coeffs)}};
}

MatrixLaurentSeries seriesFromJson(const Json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const int lo = j.at("lo").get<int>();
    const Json& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.empty())
        throw std::invalid_argument("json: series needs coefficients");
    std::vector<Matrix> out;
    out.reserve(coeffs.size());
    for (const Json& c : coeffs) out.push_back(matrixFromJson(c, rows, cols));
    return MatrixLaurentSeries(rows, cols, lo, std::move(out));
}

Json pathToJson(const ProjectionPath& path) {
    Json projections = Json::array();
    for (const OrthoProjection& p : path.projections) {
        projections.push_back(Json{{"matrix", matrixToJson(p.matrix)},
                                   {"hermitianDefect", p.hermitianDefect},
                                   {"idempotentDefect", p.idempotentDefect}});
    }
    Json out{{"model", Json{{"n", path.model.n}, {"D", path.model.D},
                            {"tGrid", path.tGrid}}},
             {"projections", std::move(projections)}};
    if (path.columnCap.has_value()) out["columnCap"] = *path.columnCap;
    return out;
}

ProjectionPath pathFromJson(const Json& j) {
    ProjectionPath path;
    const Json& model = j.at("model");
    path.model.n = model.at("n").get<int>();
    path.model.D = model.at("D").get<int>();
    path.tGrid = model.at("tGrid").get<std::vector<double>>();
    if (j.contains("columnCap")) path.columnCap = j.at("columnCap").get<int>();
    const int dim = path.model.dim();
    for (const Json& p : j.at("projections")) {
        OrthoProjection proj = OrthoProjection::fromMatrix(
            matrixFromJson(p.at("matrix"), dim, dim));
        path.projections.push_back(std::move(proj));
    }
    path.validate();
    return path;
}

Json specToJson(const InnerPathSpec& spec) {
    Json factors = Json::array();
    for (const FactorPath& f : spec.factors) {
        Json zeros = Json::array();
        for (const Complex& a : f.zeroTable) zeros.push_back(complexToJson(a));
        Json units = Json::array();
        for (const Matrix& u : f.unitaryTable) units.push_back(matrixToJson(u));
        // projector stored through its defining unit vector when rank 1
        Eigen::SelfAdjointEigenSolver<Matrix> es(f.projector);
        const Eigen::Index last = es.eigenvalues().size() - 1;
        Json vec = matrixToJson(es.eigenvectors().col(last));
        factors.push_back(Json{{"a", std::move(zeros)},
                               {"P", Json{{"vector", std::move(vec)}}},
                               {"U", std::move(units)}});
    }
    return Json{{"n", spec.n},       {"m", spec.m},
                {"D", spec.D},       {"tGrid", Json{{"values", spec.tGrid}}},
                {"factors", std::move(factors)},
                {"embed", Json{{"matrix", matrixToJson(spec.embedIsometry)}}}};
}

InnerPathSpec specFromJson(const Json& j) {
    InnerPathSpec spec;
    spec.n = j.at("n").get<int>();
    spec.m = j.at("m").get<int>();
    spec.D = j.value("D", 64);
    const Json& grid = j.at("tGrid");
    if (grid.is_object() && grid.contains("count"))
        spec.tGrid = uniformTGrid(grid.at("count").get<int>());
    else if (grid.is_object() && grid.contains("values"))
        spec.tGrid = grid.at("values").get<std::vector<double>>();
    else
        spec.tGrid = grid.get<std::vector<double>>();
    if (j.contains("embed"))
        spec.embedIsometry = matrixFromJson(j.at("embed").at("matrix"), spec.n, spec.m);
    else if (spec.n == spec.m)
        spec.embedIsometry = Matrix::Identity(spec.n, spec.m);
    else
        throw std::invalid_argument("json: spec with m < n needs an embed matrix");
    if (j.contains("factors")) {
        for (const Json& f : j.at("factors")) {
            FactorPath fp;
            const Json& zeros = f.at("a");
            if (zeros.is_array() && zeros.size() == 2 && zeros[0].is_number()) {
                fp.zeroTable.push_back(complexFromJson(zeros));
            } else {
                for (const Json& a : zeros) fp.zeroTable.push_back(complexFromJson(a));
            }
            const Matrix v = matrixFromJson(f.at("P").at("vector"), spec.m, 1);
            const double norm = v.norm();
            if (norm <= 0.0)
                throw std::invalid_argument("json: projector vector must be nonzero");
            const Matrix unit = v / norm;
            fp.projector = unit * unit.adjoint();
            if (f.contains("U")) {
                const Json& units = f.at("U");
                if (units.is_array() && !units.empty() && units[0].is_array() &&
                    units[0].size() == 2 && units[0][0].is_number()) {
                    fp.unitaryTable.push_back(matrixFromJson(units, spec.m, spec.m));
                } else {
                    for (const Json& u : units)
                        fp.unitaryTable.push_back(matrixFromJson(u, spec.m, spec.m));
                }
            } else {
                fp.unitaryTable.push_back(Matrix::Identity(spec.m, spec.m));
            }
            spec.factors.push_back(std::move(fp));
        }
    }
    spec.validate();
    return spec;
}

Json liftToJson(const LiftResult& lift) {
    Json series = Json::array();
    for (const MatrixLaurentSeries& g : lift.gTilde) series.push_back(seriesToJson(g));
    Json cover = Json::array();
    for (const CoverInterval& iv : lift.cover) {
        cover.push_back(Json{{"lambda", Json{{"theta", iv.lambda.theta},
                                             {"r", iv.lambda.r}}},
                             {"begin", iv.beginIndex},
                             {"end", iv.endIndex},
                             {"etaFloor", iv.etaFloor}});
    }
    Json patches = Json::array();
    for (const Matrix& u : lift.patchUnitaries) patches.push_back(matrixToJson(u));
    const LiftDiagnostics& d = lift.diagnostics;
    return Json{{"m", lift.m},
                {"tGrid", lift.tGrid},
                {"columnCap", lift.columnCap},
                {"gTilde", std::move(series)},
                {"cover", std::move(cover)},
                {"patchUnitaries", std::move(patches)},
                {"diagnostics", Json{{"certificateDefects", d.certificateDefects},
                                     {"roundTripResiduals", d.roundTripResiduals},
                                     {"baseConsistency", d.baseConsistency},
                                     {"pathModulus", d.pathModulus},
                                     {"supModuli", d.supModuli},
                                     {"junctionJumps", d.junctionJumps}}}};
}

LiftResult liftFromJson(const Json& j) {
    LiftResult lift;
    lift.m = j.at("m").get<int>();
    lift.tGrid = j.at("tGrid").get<std::vector<double>>();
    lift.columnCap = j.at("columnCap").get<int>();
    for (const Json& g : j.at("gTilde")) lift.gTilde.push_back(seriesFromJson(g));
    for (const Json& iv : j.at("cover")) {
        CoverInterval out;
        out.lambda.theta = iv.at("lambda").at("theta").get<double>();
        out.lambda.r = iv.at("lambda").at("r").get<double>();
        out.beginIndex = iv.at("begin").get<int>();
        out.endIndex = iv.at("end").get<int>();
        out.etaFloor = iv.at("etaFloor").get<double>();
        lift.cover.push_back(out);
    }
    for (const Json& u : j.at("patchUnitaries"))
        lift.patchUnitaries.push_back(matrixFromJson(u, lift.m, lift.m));
    const Json& d = j.at("diagnostics");
    lift.diagnostics.certificateDefects = d.at("certificateDefects").get<std::vector<double>>();
    lift.diagnostics.roundTripResiduals = d.at("roundTripResiduals").get<std::vector<double>>();
    lift.diagnostics.baseConsistency = d.at("baseConsistency").get<std::vector<double>>();
    lift.diagnostics.pathModulus = d.at("pathModulus").get<std::vector<double>>();
    lift.diagnostics.supModuli = d.at("supModuli").get<std::vector<double>>();
    lift.diagnostics.junctionJumps = d.at("junctionJumps").get<std::vector<double>>();
    return lift;
}

Json reportToJson(const ContinuityReport& report) {
    Json records = Json::array();
    for (const PairRecord& rec : report.records) {
        records.push_back(Json{{"tIndex", rec.tIndex},
                               {"sIndex", rec.sIndex},
                               {"dp", rec.dp},
                               {"fInf", rec.fInf},
                               {"fStarInf", rec.fStarInf},
                               {"sectionSup", rec.sectionSup},
                               {"sectionRefinedShift", rec.sectionRefinedShift},
                               {"kernelBound", rec.kernelBound},
                               {"kernelMargin", rec.kernelMargin},
                               {"kernelPass", rec.kernelPass},
                               {"eta", rec.eta},
                               {"interiorTerm", rec.interiorTerm},
                               {"supDist", rec.supDist},
                               {"ceiling", rec.ceiling},
                               {"chainPass", rec.chainPass}});
    }
    return Json{{"r", report.r},
                {"slackBound", report.slackBound},
                {"slackChain", report.slackChain},
                {"kernelGrid", report.kernelGrid},
                {"thetaGrid", report.thetaGrid},
                {"allPass", report.allPass},
                {"records", std::move(records)}};
}

ContinuityReport reportFromJson(const Json& j) {
    ContinuityReport report;
    report.r = j.at("r").get<double>();
    report.slackBound = j.at("slackBound").get<double>();
    report.slackChain = j.at("slackChain").get<double>();
    report.kernelGrid = j.at("kernelGrid").get<int>();
    report.thetaGrid = j.at("thetaGrid").get<int>();
    report.allPass = j.at("allPass").get<bool>();
    for (const Json& r : j.at("records")) {
        PairRecord rec{};
        rec.tIndex = r.at("tIndex").get<int>();
        rec.sIndex = r.at("sIndex").get<int>();
        rec.r = report.r;
        rec.dp = r.at("dp").get<double>();
        rec.fInf = r.at("fInf").get<double>();
        rec.fStarInf = r.at("fStarInf").get<double>();
        rec.sectionSup = r.at("sectionSup").get<double>();
        rec.sectionRefinedShift = r.at("sectionRefinedShift").get<double>();
        rec.kernelBound = r.at("kernelBound").get<double>();
        rec.kernelMargin = r.at("kernelMargin").get<double>();
        rec.kernelPass = r.at("kernelPass").get<bool>();
        rec.eta = r.at("eta").get<double>();
        rec.interiorTerm = r.at("interiorTerm").get<double>();
        rec.supDist = r.at("supDist").get<double>();
        rec.ceiling = r.at("ceiling").get<double>();
        rec.chainPass = r.at("chainPass").get<bool>();
        report.records.push_back(rec);
    }
    return report;
}

std::string dumpJson(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hardylift
