#pragma once

#include <json.hpp>

#include <string>

#include "poissonkit/morita/bispace.hpp"

namespace poissonkit::morita {

// Groups: a preset string ("cyclic:4", "s3", ...), {"preset": ".."}, or
// {"table": [[..], ..]} with optional "name".
// Bispaces: {"points": n, "l_act": [[g.x for x] for g], "r_act": [[x.h for h] for x]}.

FiniteGroup group_from_json(const nlohmann::json& j, const std::string& path = "");
nlohmann::json to_json(const FiniteGroup& g);

Bispace bispace_from_json(const nlohmann::json& j, GroupPtr left, GroupPtr right, const std::string& path = "");
nlohmann::json to_json(const Bispace& x);

nlohmann::json to_json(const PicardResult& p);

}  // namespace poissonkit::morita
