#include "ambc/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>

namespace ambc {

const std::vector<KeySpec>& config_keys() {
  static const std::vector<KeySpec> keys = {
      {"M", "2", "tag antenna count (1, 2, 4 or 8)"},
      {"Q", "1", "reader antenna count (>= 1)"},
      {"N", "40000", "averaging length when not derived from a receive-SNR target"},
      {"gamma_d_db", "15", "direct link SNR in dB"},
      {"delta_gamma_db", "40", "backscatter power deficit in dB"},
      {"tag_loss_db", "-1.1", "tag reflection amplitude gain in dB (<= 0)"},
      {"detector", "linear",
       "ml_exact | ml_approx | linear | min_distance | differential | theoretical"},
      {"fidelity", "chi_square", "symbol_level | chi_square | gaussian"},
      {"bias_mode", "perfect", "perfect | estimated"},
      {"bias_pilot_length", "0",
       "pilot symbols for bias estimation (0: reuse averaging length)"},
      {"sweep", "gamma_R_db", "gamma_R_db | gamma_d_db | delta_gamma_db"},
      {"grid", "0,5,10,15,20", "comma-separated sweep values in dB"},
      {"target_gamma_r_db", "",
       "hold this receive SNR during a delta_gamma_db sweep (empty: keep N fixed)"},
      {"frame_blocks", "0",
       "code blocks per channel draw (0: 1 coherent, 16 differential)"},
      {"seed", "1", "master seed; all results are a pure function of it"},
      {"workers", "0", "worker threads (0: all cores, 1: serial reference)"},
      {"target_bit_errors", "200", "stop a point after this many bit errors"},
      {"max_trials", "1000000", "hard trial cap per point"},
      {"gain_power_samples", "200000",
       "Monte Carlo samples for the SNR-scale constant"},
      {"theory_channels", "10000", "channel draws for theoretical curves"},
      {"out_dir", ".", "output directory for CSV results"},
      {"scale", "quick", "quick | paper (preset grid and trial budgets)"},
  };
  return keys;
}

Settings default_settings() {
  Settings s;
  for (const KeySpec& k : config_keys()) s[k.name] = k.default_value;
  return s;
}

std::string env_var_for_key(const std::string& key) {
  std::string name = "AMBC_";
  for (char c : key) name += char(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail_key(const std::string& key, const std::string& why) {
  throw ConfigError("key " + key + ": " + why);
}

long parse_long(const Settings& s, const std::string& key) {
  const std::string& v = s.at(key);
  try {
    std::size_t used = 0;
    const long out = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return out;
  } catch (const std::exception&) {
    fail_key(key, "expected an integer, got '" + v + "'");
  }
}

double parse_double(const Settings& s, const std::string& key) {
  const std::string& v = s.at(key);
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return out;
  } catch (const std::exception&) {
    fail_key(key, "expected a number, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const Settings& s, const std::string& key) {
  const std::string& v = s.at(key);
  try {
    // stoull would wrap a leading minus around instead of failing.
    if (v.find('-') != std::string::npos) throw std::invalid_argument("");
    std::size_t used = 0;
    const unsigned long long out = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return out;
  } catch (const std::exception&) {
    fail_key(key, "expected a non-negative integer, got '" + v + "'");
  }
}

}  // namespace

void apply_config_file(Settings& settings, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value, got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (settings.find(key) == settings.end()) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
    settings[key] = value;
  }
}

void apply_env_overrides(Settings& settings) {
  for (const KeySpec& k : config_keys()) {
    if (const char* v = std::getenv(env_var_for_key(k.name).c_str())) {
      settings[k.name] = v;
    }
  }
}

void apply_override(Settings& settings, const std::string& key,
                    const std::string& value) {
  if (settings.find(key) == settings.end()) {
    throw ConfigError("unknown key '" + key + "'");
  }
  settings[key] = value;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    if (pos == std::string::npos) pos = text.size();
    const std::string item = trim(text.substr(start, pos - start));
    if (item.empty()) throw ConfigError("key grid: empty entry");
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ConfigError("key grid: '" + item + "' is not a number");
    }
    if (pos == text.size()) break;
    start = pos + 1;
  }
  return out;
}

ExperimentConfig to_experiment_config(const Settings& s) {
  ExperimentConfig cfg;

  const long m = parse_long(s, "M");
  if (m != 1 && m != 2 && m != 4 && m != 8) {
    fail_key("M",
             "must be 1, 2, 4 or 8 (full-rate real orthogonal designs exist "
             "for no other antenna counts)");
  }
  const long q = parse_long(s, "Q");
  if (q < 1) fail_key("Q", "must be >= 1");
  const long n = parse_long(s, "N");
  if (n < 1) fail_key("N", "must be >= 1");
  const double tag_loss_db = parse_double(s, "tag_loss_db");
  if (tag_loss_db > 0.0) fail_key("tag_loss_db", "a passive tag cannot amplify (must be <= 0)");

  try {
    cfg.params = make_params(int(m), int(q), n, parse_double(s, "gamma_d_db"),
                             parse_double(s, "delta_gamma_db"), tag_loss_db);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  }

  try {
    cfg.detector = detector_from_string(s.at("detector"));
  } catch (const std::invalid_argument& e) {
    fail_key("detector", e.what());
  }
  try {
    cfg.fidelity = fidelity_from_string(s.at("fidelity"));
  } catch (const std::invalid_argument& e) {
    fail_key("fidelity", e.what());
  }
  try {
    cfg.bias_mode = bias_mode_from_string(s.at("bias_mode"));
  } catch (const std::invalid_argument& e) {
    fail_key("bias_mode", e.what());
  }
  try {
    cfg.sweep = sweep_from_string(s.at("sweep"));
  } catch (const std::invalid_argument& e) {
    fail_key("sweep", e.what());
  }

  cfg.grid = parse_grid(s.at("grid"));
  const std::string target = trim(s.at("target_gamma_r_db"));
  if (!target.empty()) {
    try {
      std::size_t used = 0;
      cfg.target_gamma_r_db = std::stod(target, &used);
      if (used != target.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail_key("target_gamma_r_db", "expected a number, got '" + target + "'");
    }
  }

  cfg.bias_pilot_length = parse_long(s, "bias_pilot_length");
  if (cfg.bias_pilot_length < 0) fail_key("bias_pilot_length", "must be >= 0");
  const long blocks = parse_long(s, "frame_blocks");
  if (blocks < 0) fail_key("frame_blocks", "must be >= 0");
  cfg.frame_blocks = int(blocks);
  cfg.master_seed = parse_u64(s, "seed");
  const long workers = parse_long(s, "workers");
  if (workers < 0) fail_key("workers", "must be >= 0");
  cfg.workers = int(workers);
  cfg.stop.target_bit_errors = parse_long(s, "target_bit_errors");
  if (cfg.stop.target_bit_errors < 1) fail_key("target_bit_errors", "must be >= 1");
  cfg.stop.max_trials = parse_long(s, "max_trials");
  if (cfg.stop.max_trials < 1) fail_key("max_trials", "must be >= 1");
  cfg.gain_power_samples = parse_long(s, "gain_power_samples");
  if (cfg.gain_power_samples < 2) fail_key("gain_power_samples", "must be >= 2");
  cfg.theory_channels = parse_long(s, "theory_channels");
  if (cfg.theory_channels < 2) fail_key("theory_channels", "must be >= 2");

  const std::string& scale = s.at("scale");
  if (scale != "quick" && scale != "paper") {
    fail_key("scale", "must be quick or paper, got '" + scale + "'");
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid experiment: ") + e.what());
  }
  return cfg;
}

}  // namespace ambc
