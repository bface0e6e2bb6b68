#include "poissonkit/multivec/json.hpp"

#include "poissonkit/exactlin/json.hpp"

namespace poissonkit::multivec {

nlohmann::json to_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coef", c.to_string()}});
  return {{"n_vars", p.n_vars()}, {"terms", std::move(terms)}};
}

std::size_t n_vars_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.contains("n_vars") || !j["n_vars"].is_number_unsigned())
    throw Error(ErrorCode::Schema, "missing or invalid 'n_vars'", path + "/n_vars");
  return j["n_vars"].get<std::size_t>();
}

Poly poly_from_json(const nlohmann::json& j, std::size_t n_vars, const std::string& path) {
  if (j.is_string()) {
    try {
      return Poly::parse(n_vars, j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, e.what(), path);
    }
  }
  if (j.is_number_integer()) return Poly::constant(n_vars, Scalar(j.get<long>()));
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw Error(ErrorCode::Schema, "expected a polynomial object with a 'terms' array or a string", path);
  if (j.contains("n_vars") && n_vars_from_json(j, path) != n_vars)
    throw Error(ErrorCode::Schema, "n_vars disagrees with the enclosing document", path + "/n_vars");
  Poly p(n_vars);
  const auto& terms = j["terms"];
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string at = path + "/terms/" + std::to_string(k);
    const auto& t = terms[k];
    if (!t.is_object() || !t.contains("exp") || !t["exp"].is_array() || t["exp"].size() != n_vars)
      throw Error(ErrorCode::Schema, "term needs an 'exp' array of length n_vars", at);
    Poly::Exponent e;
    for (std::size_t a = 0; a < n_vars; ++a) {
      if (!t["exp"][a].is_number_unsigned()) throw Error(ErrorCode::Schema, "exponent must be a non-negative integer", at + "/exp/" + std::to_string(a));
      e.push_back(t["exp"][a].get<unsigned>());
    }
    if (!t.contains("coef")) throw Error(ErrorCode::Schema, "term needs a 'coef'", at);
    p.add_term(e, exactlin::scalar_from_json(t["coef"], at + "/coef"));
  }
  return p;
}

nlohmann::json to_json(const StructureConstants& c) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = i + 1; j < c.n; ++j)
      for (std::size_t k = 0; k < c.n; ++k)
        if (!c.get(i, j, k).is_zero()) entries.push_back({{"ijk", {i, j, k}}, {"c", c.get(i, j, k).to_string()}});
  return {{"n", c.n}, {"entries", std::move(entries)}};
}

StructureConstants structure_constants_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned())
    throw Error(ErrorCode::Schema, "structure constants need 'n'", path);
  auto c = StructureConstants::zero(j["n"].get<std::size_t>());
  if (!j.contains("entries") || !j["entries"].is_array())
    throw Error(ErrorCode::Schema, "structure constants need an 'entries' array", path);
  // With "antisymmetrize" (default) each listed c_ij^k also sets c_ji^k = -c_ij^k.
  const bool fill = j.value("antisymmetrize", true);
  const auto& es = j["entries"];
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string at = path + "/entries/" + std::to_string(k);
    const auto& e = es[k];
    if (!e.is_object() || !e.contains("ijk") || !e["ijk"].is_array() || e["ijk"].size() != 3 || !e.contains("c"))
      throw Error(ErrorCode::Schema, "entry needs 'ijk' (3 indices) and 'c'", at);
    std::size_t idx[3];
    for (int a = 0; a < 3; ++a) {
      if (!e["ijk"][a].is_number_unsigned() || e["ijk"][a].get<std::size_t>() >= c.n)
        throw Error(ErrorCode::Schema, "index out of range", at + "/ijk/" + std::to_string(a));
      idx[a] = e["ijk"][a].get<std::size_t>();
    }
    const Scalar v = exactlin::scalar_from_json(e["c"], at + "/c");
    c.set(idx[0], idx[1], idx[2], v);
    if (fill) c.set(idx[1], idx[0], idx[2], -v);
  }
  return c;
}

}  // namespace poissonkit::multivec
