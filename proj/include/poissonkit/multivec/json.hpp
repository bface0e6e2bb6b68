#pragma once

#include <json.hpp>

#include <string>

#include "poissonkit/multivec/poisson.hpp"

namespace poissonkit::multivec {

// Polynomials: {"n_vars": n, "terms": [{"exp": [e1..en], "coef": "p/q"}]}; on
// input a string such as "x1*x2 - 3/2*x3^2" is accepted too (needs n_vars from
// the caller). Tensor fields: {"n_vars": n, "components": [{"idx": [i, j],
// "poly": <polynomial>}]} with 0-based indices.

nlohmann::json to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j, std::size_t n_vars, const std::string& path = "");

template <Variance V, std::size_t Deg>
nlohmann::json to_json(const SkewTensorField<V, Deg>& t) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& [idx, p] : t.components()) comps.push_back({{"idx", idx}, {"poly", to_json(p)}});
  return {{"n_vars", t.n_vars()}, {"components", std::move(comps)}};
}

std::size_t n_vars_from_json(const nlohmann::json& j, const std::string& path);

template <Variance V, std::size_t Deg>
SkewTensorField<V, Deg> tensor_from_json(const nlohmann::json& j, std::size_t n_vars, const std::string& path = "") {
  SkewTensorField<V, Deg> t(n_vars);
  if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
    throw Error(ErrorCode::Schema, "expected an object with a 'components' array", path);
  if (j.contains("n_vars") && n_vars_from_json(j, path) != n_vars)
    throw Error(ErrorCode::Schema, "n_vars disagrees with the enclosing document", path + "/n_vars");
  const auto& comps = j["components"];
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const std::string at = path + "/components/" + std::to_string(k);
    const auto& c = comps[k];
    if (!c.is_object() || !c.contains("idx") || !c["idx"].is_array() || c["idx"].size() != Deg)
      throw Error(ErrorCode::Schema, "component needs an 'idx' array of length " + std::to_string(Deg), at);
    typename SkewTensorField<V, Deg>::Index idx{};
    for (std::size_t a = 0; a < Deg; ++a) {
      if (!c["idx"][a].is_number_unsigned() || c["idx"][a].get<std::size_t>() >= n_vars)
        throw Error(ErrorCode::Schema, "index out of range", at + "/idx/" + std::to_string(a));
      idx[a] = c["idx"][a].get<std::size_t>();
    }
    if (!c.contains("poly")) throw Error(ErrorCode::Schema, "component needs a 'poly'", at);
    try {
      t.add(idx, poly_from_json(c["poly"], n_vars, at + "/poly"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Schema || e.code() == ErrorCode::Parse) throw;
      throw Error(e.code(), e.what(), at);
    }
  }
  return t;
}

nlohmann::json to_json(const StructureConstants& c);
StructureConstants structure_constants_from_json(const nlohmann::json& j, const std::string& path = "");

}  // namespace poissonkit::multivec
