#pragma once

#include <json.hpp>

#include <string>

#include "poissonkit/tss/tss.hpp"

namespace poissonkit::tss {

// Torus functions: {"terms": [{"k": [k1, k2], "re": a, "im": b}]} for complex
// Fourier coefficients, and/or real shorthands
//   "const": c,  "sin": [{"k": [k1, k2], "a": a}],  "cos": [...]
// meaning c + sum a sin(2 pi k.x) + sum a cos(2 pi k.x). All parts add up.

TorusFunction torus_function_from_json(const nlohmann::json& j, const std::string& path = "");
nlohmann::json to_json(const TorusFunction& f);

nlohmann::json to_json(const TSSGraph& g);
TSSGraph tss_graph_from_json(const nlohmann::json& j, const std::string& path = "");
nlohmann::json to_json(const ZeroCurve& c);
nlohmann::json to_json(const Isomorphism& iso);

}  // namespace poissonkit::tss
