#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "poissonkit/cli/config.hpp"

namespace poissonkit::cli {

/// Parses argv (argv[0] is the program name) and runs one subcommand.
/// Returns 0 on success, 2 on a domain rejection and 1 on any other error.
/// Results go to `out`; errors go to `out` as {"error": {code, message, path}}
/// with a one-line sentence on `err`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

struct SelftestRow {
  std::string suite;
  std::string check;
  bool passed = false;
  std::string detail;
};

/// The invariant battery of every module, driven by `config.seed`.
std::vector<SelftestRow> selftest(const Config& config);

}  // namespace poissonkit::cli
