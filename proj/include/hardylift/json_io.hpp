#pragma once

#include <json.hpp>

#include "hardylift/hardy.hpp"
#include "hardylift/inner_gen.hpp"
#include "hardylift/lift.hpp"
#include "hardylift/series.hpp"
#include "hardylift/verify.hpp"

namespace hardylift {

using Json = nlohmann::json;

// Complex numbers serialize as [re, im]; matrices as flat row-major lists of
// [re, im] pairs with shapes supplied by the surrounding object.

Json complexToJson(const Complex& z);
Complex complexFromJson(const Json& j);

Json matrixToJson(const Matrix& m);
Matrix matrixFromJson(const Json& j, int rows, int cols);

Json seriesToJson(const MatrixLaurentSeries& s);
MatrixLaurentSeries seriesFromJson(const Json& j);

Json pathToJson(const ProjectionPath& path);
ProjectionPath pathFromJson(const Json& j);

Json specToJson(const InnerPathSpec& spec);
InnerPathSpec specFromJson(const Json& j);

Json liftToJson(const LiftResult& lift);
LiftResult liftFromJson(const Json& j);

Json reportToJson(const ContinuityReport& report);
ContinuityReport reportFromJson(const Json& j);

/// Canonical serialization used for files and hashes: 2-space indent,
/// sorted keys, '\n' terminated.
std::string dumpJson(const Json& j);

}  // namespace hardylift
