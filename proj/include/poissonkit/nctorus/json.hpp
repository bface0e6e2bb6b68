#pragma once

#include <json.hpp>

#include <string>

#include "poissonkit/nctorus/sonn.hpp"
#include "poissonkit/nctorus/torus.hpp"

namespace poissonkit::nctorus {

// Quadratic scalars: {"p": .., "q": .., "d": .., "r": ..} meaning (p + q sqrt d)/r,
// or a string such as "1+sqrt2", or an integer.
// Skew parameters: {"pi": [[..], ..]} with scalar entries, or with JSON floats
// plus "tol"; for n = 2 also {"theta": <scalar>}.
// Torus elements: {"n": n, "terms": [{"m": [..], "re": x, "im": y}]}.
// SO(n,n) matrices: {"n": n, "matrix": [[..] x 2n]}.

nlohmann::json to_json(const QuadraticScalar& x);
QuadraticScalar quadratic_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const SkewParam& p);
SkewParam skew_param_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const TorusElement& f);
TorusElement torus_element_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const SOnnMatrix& g);
SOnnMatrix sonn_from_json(const nlohmann::json& j, const std::string& path = "");

}  // namespace poissonkit::nctorus
