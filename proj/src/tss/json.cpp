#include "poissonkit/tss/json.hpp"

#include "poissonkit/error.hpp"

namespace poissonkit::tss {

using nlohmann::json;

namespace {

TorusFunction::Mode mode_from_json(const json& t, const std::string& at) {
  if (!t.is_object() || !t.contains("k") || !t["k"].is_array() || t["k"].size() != 2 || !t["k"][0].is_number_integer() ||
      !t["k"][1].is_number_integer())
    throw Error(ErrorCode::Schema, "term needs an integer pair 'k'", at);
  return {t["k"][0].get<long>(), t["k"][1].get<long>()};
}

double number(const json& t, const char* key, const std::string& at, double fallback) {
  if (!t.contains(key)) return fallback;
  if (!t[key].is_number()) throw Error(ErrorCode::Schema, std::string("'") + key + "' must be a number", at + "/" + key);
  return t[key].get<double>();
}

}  // namespace

TorusFunction torus_function_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorCode::Schema, "expected an object with Fourier terms", path);
  std::map<TorusFunction::Mode, std::complex<double>> raw;
  TorusFunction sum;
  bool any = false;
  if (j.contains("terms")) {
    if (!j["terms"].is_array()) throw Error(ErrorCode::Schema, "'terms' must be an array", path + "/terms");
    for (std::size_t k = 0; k < j["terms"].size(); ++k) {
      const std::string at = path + "/terms/" + std::to_string(k);
      const json& t = j["terms"][k];
      raw[mode_from_json(t, at)] += std::complex<double>(number(t, "re", at, 0), number(t, "im", at, 0));
    }
    try {
      sum = TorusFunction(raw);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), path + "/terms");
    }
    any = true;
  }
  if (j.contains("const")) {
    sum = sum + TorusFunction::constant(number(j, "const", path, 0));
    any = true;
  }
  for (const char* kind : {"sin", "cos"}) {
    if (!j.contains(kind)) continue;
    if (!j[kind].is_array()) throw Error(ErrorCode::Schema, std::string("'") + kind + "' must be an array", path + "/" + kind);
    for (std::size_t k = 0; k < j[kind].size(); ++k) {
      const std::string at = path + "/" + kind + "/" + std::to_string(k);
      const json& t = j[kind][k];
      const auto m = mode_from_json(t, at);
      const double a = number(t, "a", at, 1);
      sum = sum + (kind[0] == 's' ? TorusFunction::sine(m.first, m.second, a) : TorusFunction::cosine(m.first, m.second, a));
    }
    any = true;
  }
  if (!any) throw Error(ErrorCode::Schema, "no 'terms', 'const', 'sin' or 'cos' given", path);
  return sum;
}

json to_json(const TorusFunction& f) {
  json terms = json::array();
  for (const auto& [k, c] : f.coeffs()) terms.push_back({{"k", {k.first, k.second}}, {"re", c.real()}, {"im", c.imag()}});
  return {{"terms", std::move(terms)}};
}

json to_json(const TSSGraph& g) {
  json vs = json::array(), es = json::array();
  for (const auto& v : g.vertices)
    vs.push_back({{"genus", v.genus},
                  {"sign", v.sign},
                  {"euler_characteristic", v.euler_characteristic},
                  {"boundary_curves", v.boundary_curves}});
  for (const auto& e : g.edges)
    es.push_back({{"from", e.from}, {"to", e.to}, {"period", e.period}, {"homology", e.homology}});
  return {{"vertices", std::move(vs)}, {"edges", std::move(es)}, {"orientation", "toward the component where f > 0"}};
}

TSSGraph tss_graph_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array() || !j.contains("edges") ||
      !j["edges"].is_array())
    throw Error(ErrorCode::Schema, "expected {\"vertices\": [..], \"edges\": [..]}", path);
  TSSGraph g;
  for (std::size_t k = 0; k < j["vertices"].size(); ++k) {
    const json& v = j["vertices"][k];
    const std::string at = path + "/vertices/" + std::to_string(k);
    if (!v.is_object() || !v.contains("genus") || !v["genus"].is_number_integer())
      throw Error(ErrorCode::Schema, "vertex needs an integer 'genus'", at);
    TSSVertex x;
    x.genus = v["genus"].get<long>();
    x.sign = v.value("sign", 0);
    g.vertices.push_back(x);
  }
  for (std::size_t k = 0; k < j["edges"].size(); ++k) {
    const json& e = j["edges"][k];
    const std::string at = path + "/edges/" + std::to_string(k);
    if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("period") ||
        !e["from"].is_number_unsigned() || !e["to"].is_number_unsigned() || !e["period"].is_number())
      throw Error(ErrorCode::Schema, "edge needs 'from', 'to' and 'period'", at);
    TSSEdge x;
    x.from = e["from"].get<std::size_t>();
    x.to = e["to"].get<std::size_t>();
    x.period = e["period"].get<double>();
    if (x.from >= g.vertices.size() || x.to >= g.vertices.size())
      throw Error(ErrorCode::Schema, "edge endpoint out of range", at);
    if (!(x.period > 0)) throw Error(ErrorCode::Schema, "period must be positive", at + "/period");
    g.edges.push_back(x);
  }
  return g;
}

json to_json(const ZeroCurve& c) {
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back({p[0], p[1]});
  return {{"homology", c.homology}, {"points", std::move(pts)}};
}

json to_json(const Isomorphism& iso) {
  json out = {{"morita_equivalent", iso.isomorphic}};
  if (iso.isomorphic) {
    out["vertex_map"] = iso.vertex_map;
    out["edge_map"] = iso.edge_map;
  } else {
    out["reason"] = iso.reason;
  }
  return out;
}

}  // namespace poissonkit::tss
