#pragma once

#include <json.hpp>

#include <string>

#include "poissonkit/exactlin/matrix.hpp"
#include "poissonkit/exactlin/subspace.hpp"

namespace poissonkit::exactlin {

// Scalars travel as strings "p/q" (integers also accepted as JSON numbers on
// input); matrices as {"rows": r, "cols": c, "data": [row-major scalars]}.

nlohmann::json to_json(const Scalar& s);
nlohmann::json to_json(const Matrix& m);

/// `path` is the JSON pointer of `j`, used in error messages.
Scalar scalar_from_json(const nlohmann::json& j, const std::string& path = "");
Matrix matrix_from_json(const nlohmann::json& j, const std::string& path = "");

}  // namespace poissonkit::exactlin
