#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace poissonkit::cli {

/// Run configuration. Defaults:
///   tolerances  relation 1e-12, curve 1e-12, gradient_min 1e-6, period 1e-6, volume 1e-6
///   caps        grid 512, volume_grid 256, orbit_depth 6, orbit_nodes 200000, picard_order 24
///   seed 20240611, output_format "json"
struct Config {
  std::uint64_t seed = 20240611;
  std::map<std::string, double> tolerances;
  std::map<std::string, std::size_t> caps;
  std::string output_format = "json";

  static Config defaults();

  double tol(const std::string& name) const { return tolerances.at(name); }
  std::size_t cap(const std::string& name) const { return caps.at(name); }

  /// Throws Error(Config) for unknown names and for values that are not
  /// positive and finite.
  void set_tolerance(const std::string& name, double value, const std::string& path = "");
  void set_cap(const std::string& name, std::size_t value, const std::string& path = "");
  void set_format(const std::string& format, const std::string& path = "");
  /// "NAME=VAL" as given to --tol.
  void apply_tol_flag(const std::string& assignment);

  /// {"seed": n, "tolerances": {..}, "caps": {..}, "format": ".."}; every key optional.
  void merge(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Defaults, then the file at `path` (or at $POISSONKIT_CONFIG when `path` is
/// empty and the variable is set).
Config load_config(const std::optional<std::string>& path);

}  // namespace poissonkit::cli
