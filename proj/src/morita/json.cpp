#include "poissonkit/morita/json.hpp"

#include "poissonkit/error.hpp"

namespace poissonkit::morita {

using nlohmann::json;

namespace {

std::vector<std::vector<int>> int_table(const json& j, const std::string& at) {
  if (!j.is_array()) throw Error(ErrorCode::Schema, "expected an array of integer rows", at);
  std::vector<std::vector<int>> t;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw Error(ErrorCode::Schema, "expected an array of integers", at + "/" + std::to_string(i));
    std::vector<int> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      if (!j[i][k].is_number_integer())
        throw Error(ErrorCode::Schema, "expected an integer", at + "/" + std::to_string(i) + "/" + std::to_string(k));
      row.push_back(j[i][k].get<int>());
    }
    t.push_back(std::move(row));
  }
  return t;
}

}  // namespace

FiniteGroup group_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return FiniteGroup::preset(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), path);
    }
  }
  if (!j.is_object()) throw Error(ErrorCode::Schema, "expected a preset name or {\"table\": ..}", path);
  if (j.contains("preset")) return group_from_json(j["preset"], path + "/preset");
  if (!j.contains("table")) throw Error(ErrorCode::Schema, "group needs 'table' or 'preset'", path);
  auto t = int_table(j["table"], path + "/table");
  try {
    return FiniteGroup(std::move(t), j.value("name", std::string("table")));
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), path + "/table" + e.path());
  }
}

json to_json(const FiniteGroup& g) { return {{"name", g.name()}, {"order", g.order()}, {"table", g.table()}}; }

Bispace bispace_from_json(const json& j, GroupPtr left, GroupPtr right, const std::string& path) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_number_unsigned() || !j.contains("l_act") ||
      !j.contains("r_act"))
    throw Error(ErrorCode::Schema, "bispace needs 'points', 'l_act' and 'r_act'", path);
  const std::size_t np = j["points"].get<std::size_t>();
  const auto l = int_table(j["l_act"], path + "/l_act");
  const auto r = int_table(j["r_act"], path + "/r_act");
  if (l.size() != left->order()) throw Error(ErrorCode::Schema, "l_act needs one row per left group element", path + "/l_act");
  if (r.size() != np) throw Error(ErrorCode::Schema, "r_act needs one row per point", path + "/r_act");
  std::vector<int> lf, rf;
  for (std::size_t g = 0; g < l.size(); ++g) {
    if (l[g].size() != np) throw Error(ErrorCode::Schema, "l_act row has the wrong length", path + "/l_act/" + std::to_string(g));
    lf.insert(lf.end(), l[g].begin(), l[g].end());
  }
  for (std::size_t x = 0; x < r.size(); ++x) {
    if (r[x].size() != right->order())
      throw Error(ErrorCode::Schema, "r_act row has the wrong length", path + "/r_act/" + std::to_string(x));
    rf.insert(rf.end(), r[x].begin(), r[x].end());
  }
  try {
    return Bispace(std::move(left), std::move(right), np, std::move(lf), std::move(rf));
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), path + e.path());
  }
}

json to_json(const Bispace& x) {
  json l = json::array(), r = json::array();
  for (Element g = 0; g < static_cast<Element>(x.left().order()); ++g) {
    json row = json::array();
    for (int p = 0; p < static_cast<int>(x.points()); ++p) row.push_back(x.act_left(g, p));
    l.push_back(std::move(row));
  }
  for (int p = 0; p < static_cast<int>(x.points()); ++p) {
    json row = json::array();
    for (Element h = 0; h < static_cast<Element>(x.right().order()); ++h) row.push_back(x.act_right(p, h));
    r.push_back(std::move(row));
  }
  return {{"left", x.left().name()}, {"right", x.right().name()}, {"points", x.points()}, {"l_act", l}, {"r_act", r}};
}

json to_json(const PicardResult& p) {
  json gens = json::array();
  for (int c : p.generators) {
    const auto& b = p.classes[static_cast<std::size_t>(c)];
    json d = {{"class", c}, {"bispace", to_json(b)}};
    if (!p.automorphism[static_cast<std::size_t>(c)].empty()) d["automorphism"] = p.automorphism[static_cast<std::size_t>(c)];
    gens.push_back(std::move(d));
  }
  return {{"order", p.order},
          {"aut_order", p.aut_order},
          {"inn_order", p.inn_order},
          {"out_order", p.inn_order ? p.aut_order / p.inn_order : 0},
          {"matches_out", p.matches_out},
          {"table", p.table},
          {"generators", std::move(gens)}};
}

}  // namespace poissonkit::morita
