#pragma once
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ambc/harness.hpp"

namespace ambc {

// User-facing configuration errors; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  const char* name;
  const char* default_value;
  const char* help;
};

// Every tunable, with its default and one-line description; --help and the
// env-override mechanism both iterate this table.
const std::vector<KeySpec>& config_keys();

// Flat key -> string value map, prefilled with defaults.
using Settings = std::map<std::string, std::string>;

Settings default_settings();

// Environment variable name that overrides a key: AMBC_<KEY, upper-cased>.
std::string env_var_for_key(const std::string& key);

// key=value lines; '#' or ';' start full-line comments. Unknown keys and
// malformed lines are reported with the file path and line number.
void apply_config_file(Settings& settings, const std::string& path);

// Apply AMBC_* environment overrides for every known key.
void apply_env_overrides(Settings& settings);

// Set one key from a flag or preset delta; throws on unknown keys.
void apply_override(Settings& settings, const std::string& key,
                    const std::string& value);

// Validate and convert to a runnable experiment; errors cite the key.
ExperimentConfig to_experiment_config(const Settings& settings);

// Comma-separated dB list, e.g. "0,5,10".
std::vector<double> parse_grid(const std::string& text);

}  // namespace ambc
