#include "poissonkit/exactlin/json.hpp"

namespace poissonkit::exactlin {

nlohmann::json to_json(const Scalar& s) { return s.to_string(); }

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (const auto& x : m.data()) data.push_back(x.to_string());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Scalar scalar_from_json(const nlohmann::json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::Schema, e.what(), path);
    }
  }
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw Error(ErrorCode::Schema, "expected a rational string \"p/q\" or an integer", path);
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorCode::Schema, "expected a matrix object", path);
  for (const char* key : {"rows", "cols", "data"})
    if (!j.contains(key)) throw Error(ErrorCode::Schema, std::string("missing field '") + key + "'", path);
  if (!j["rows"].is_number_unsigned() && !(j["rows"].is_number_integer() && j["rows"].get<long>() >= 0))
    throw Error(ErrorCode::Schema, "rows must be a non-negative integer", path + "/rows");
  if (!j["cols"].is_number_unsigned() && !(j["cols"].is_number_integer() && j["cols"].get<long>() >= 0))
    throw Error(ErrorCode::Schema, "cols must be a non-negative integer", path + "/cols");
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const auto& data = j["data"];
  if (!data.is_array()) throw Error(ErrorCode::Schema, "data must be an array", path + "/data");
  if (data.size() != rows * cols)
    throw Error(ErrorCode::Schema, "data length differs from rows*cols", path + "/data");
  std::vector<Scalar> entries;
  entries.reserve(data.size());
  for (std::size_t k = 0; k < data.size(); ++k)
    entries.push_back(scalar_from_json(data[k], path + "/data/" + std::to_string(k)));
  return Matrix(rows, cols, std::move(entries));
}

}  // namespace poissonkit::exactlin
