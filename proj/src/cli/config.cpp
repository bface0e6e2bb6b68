#include "poissonkit/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "poissonkit/error.hpp"

namespace poissonkit::cli {

using nlohmann::json;

Config Config::defaults() {
  Config c;
  c.tolerances = {{"relation", 1e-12}, {"curve", 1e-12}, {"gradient_min", 1e-6}, {"period", 1e-6}, {"volume", 1e-6}};
  c.caps = {{"grid", 512}, {"volume_grid", 256}, {"orbit_depth", 6}, {"orbit_nodes", 200000}, {"picard_order", 24}};
  return c;
}

void Config::set_tolerance(const std::string& name, double value, const std::string& path) {
  if (!tolerances.count(name)) throw Error(ErrorCode::Config, "unknown tolerance '" + name + "'", path);
  if (!(value > 0) || !std::isfinite(value))
    throw Error(ErrorCode::Config, "tolerance '" + name + "' must be positive and finite", path);
  tolerances[name] = value;
}

void Config::set_cap(const std::string& name, std::size_t value, const std::string& path) {
  if (!caps.count(name)) throw Error(ErrorCode::Config, "unknown cap '" + name + "'", path);
  if (value == 0) throw Error(ErrorCode::Config, "cap '" + name + "' must be positive", path);
  caps[name] = value;
}

void Config::set_format(const std::string& format, const std::string& path) {
  if (format != "json" && format != "dot" && format != "text")
    throw Error(ErrorCode::Config, "format must be json, dot or text", path);
  output_format = format;
}

void Config::apply_tol_flag(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::Config, "--tol expects NAME=VAL, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') throw Error(ErrorCode::Config, "--tol value '" + text + "' is not a number");
  set_tolerance(name, v, "--tol " + name);
}

void Config::merge(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Config, "config must be a JSON object", "");
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      if (!value.is_number_unsigned()) throw Error(ErrorCode::Config, "seed must be a non-negative integer", "/seed");
      seed = value.get<std::uint64_t>();
    } else if (key == "tolerances") {
      if (!value.is_object()) throw Error(ErrorCode::Config, "tolerances must be an object", "/tolerances");
      for (const auto& [name, v] : value.items()) {
        if (!v.is_number()) throw Error(ErrorCode::Config, "tolerance must be a number", "/tolerances/" + name);
        set_tolerance(name, v.get<double>(), "/tolerances/" + name);
      }
    } else if (key == "caps") {
      if (!value.is_object()) throw Error(ErrorCode::Config, "caps must be an object", "/caps");
      for (const auto& [name, v] : value.items()) {
        if (!v.is_number_unsigned()) throw Error(ErrorCode::Config, "cap must be a positive integer", "/caps/" + name);
        set_cap(name, v.get<std::size_t>(), "/caps/" + name);
      }
    } else if (key == "format") {
      if (!value.is_string()) throw Error(ErrorCode::Config, "format must be a string", "/format");
      set_format(value.get<std::string>(), "/format");
    } else {
      throw Error(ErrorCode::Config, "unknown config key '" + key + "'", "/" + key);
    }
  }
}

json Config::to_json() const {
  return {{"seed", seed}, {"tolerances", tolerances}, {"caps", caps}, {"format", output_format}};
}

Config load_config(const std::optional<std::string>& path) {
  Config c = Config::defaults();
  std::string file;
  if (path) {
    file = *path;
  } else if (const char* env = std::getenv("POISSONKIT_CONFIG"); env && *env) {
    file = env;
  }
  if (file.empty()) return c;
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Config, "cannot read config file '" + file + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, std::string("config file is not valid JSON: ") + e.what());
  }
  c.merge(j);
  return c;
}

}  // namespace poissonkit::cli
