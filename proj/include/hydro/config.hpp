#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hydro/params.hpp"

namespace hydro {

/// Effective settings of one CLI invocation. The text form is one
/// `key = value` per line; see docs/formats.md for the key list.
struct RunConfig {
  std::string subcommand;
  SolverParams params;
  std::optional<double> lambda;       ///< required by run-*; params.lambda mirrors it
  std::vector<double> lambdas;        ///< sweep only
  std::string recipe;                 ///< empty: canonical data
  double amplitude = 1.0;
  std::string out = "out";
  long snapshot_every = 0;
  std::uint64_t seed = 0;
  int samples = 100;
  int coarse_grid = 16;
  int fine_grid = 32;
  int band = 3;
  std::string system = "both";        ///< energy-report: boussinesq, primitive or both
  int threads = 1;

  bool operator==(const RunConfig& other) const;
};

/// Known keys, in serialisation order.
const std::vector<std::string>& config_keys();

/// Sets one key from its text value. `where` prefixes error messages
/// ("file:line" or "--flag"). Throws ParseError.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value,
                      const std::string& where);

/// Reads `key = value` lines; `#` starts a comment. Throws ParseError with
/// source:line.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>",
                       RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Applies flag values (key -> text) over a config, in key order.
RunConfig apply_overrides(RunConfig config, const std::map<std::string, std::string>& flags);

/// Throws ValidationError naming the field. Checks depend on the subcommand.
void validate_config(const RunConfig& config);

/// Text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);
/// Same content as key -> text pairs, used for the manifest echo.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config);

/// Thread count from HYDROLAB_THREADS (default 1).
int threads_from_environment();

}  // namespace hydro
