#include "ambc/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "checks.hpp"

using namespace ambc;

namespace {

// Runs fn, expecting a ConfigError; returns its message (empty: no throw).
std::string config_error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

void write_file(const std::string& path, const std::string& content) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  std::fwrite(content.data(), 1, content.size(), f);
  std::fclose(f);
}

}  // namespace

int main() {
  // The key table is self-consistent and the defaults form a valid run.
  {
    std::set<std::string> names;
    for (const KeySpec& k : config_keys()) {
      CHECK(names.insert(k.name).second);
      CHECK(k.help != nullptr && std::string(k.help).size() > 3);
    }
    CHECK(names.count("M") == 1 && names.count("grid") == 1 &&
          names.count("scale") == 1);

    const ExperimentConfig cfg = to_experiment_config(default_settings());
    CHECK(cfg.params.tag_antennas == 2 && cfg.params.reader_antennas == 1);
    CHECK(cfg.params.averaging_length == 40000);
    CHECK(cfg.detector == DetectorKind::linear);
    CHECK(cfg.fidelity == Fidelity::chi_square);
    CHECK(cfg.bias_mode == BiasMode::perfect);
    CHECK(cfg.sweep == SweepVariable::gamma_R_db);
    CHECK(cfg.grid == (std::vector<double>{0, 5, 10, 15, 20}));
    CHECK(std::isnan(cfg.target_gamma_r_db));
    CHECK(cfg.master_seed == 1 && cfg.workers == 0);
    CHECK(cfg.stop.target_bit_errors == 200 && cfg.stop.max_trials == 1000000);
  }

  // Environment variable naming.
  {
    CHECK(env_var_for_key("gamma_d_db") == "AMBC_GAMMA_D_DB");
    CHECK(env_var_for_key("M") == "AMBC_M");
  }

  // Config files: comments and blanks skipped, values trimmed, errors cite
  // the file location.
  {
    const std::string path = "test_config_tmp.cfg";
    write_file(path,
               "# comment\n"
               "; also comment\n"
               "\n"
               "M = 4\n"
               "  detector=min_distance  \n"
               "grid = 0, 10 ,20\n");
    Settings s = default_settings();
    apply_config_file(s, path);
    CHECK(s.at("M") == "4");
    CHECK(s.at("detector") == "min_distance");
    CHECK(parse_grid(s.at("grid")) == (std::vector<double>{0, 10, 20}));

    write_file(path, "M = 2\nbogus_key = 1\n");
    const std::string unknown = config_error_of([&] {
      Settings t = default_settings();
      apply_config_file(t, path);
    });
    CHECK(contains(unknown, path + ":2") && contains(unknown, "bogus_key"));

    write_file(path, "just words\n");
    const std::string malformed = config_error_of([&] {
      Settings t = default_settings();
      apply_config_file(t, path);
    });
    CHECK(contains(malformed, ":1") && contains(malformed, "key=value"));
    std::remove(path.c_str());

    CHECK(contains(config_error_of([&] {
            Settings t = default_settings();
            apply_config_file(t, "test_config_nonexistent.cfg");
          }),
          "cannot read"));
  }

  // Precedence: file, then environment, then explicit overrides, each layer
  // replacing the previous value of the same key.
  {
    const std::string path = "test_config_prec.cfg";
    write_file(path, "M = 4\nQ = 2\n");
    Settings s = default_settings();
    apply_config_file(s, path);
    setenv("AMBC_M", "8", 1);
    apply_env_overrides(s);
    unsetenv("AMBC_M");
    CHECK(s.at("M") == "8");  // env beat the file
    CHECK(s.at("Q") == "2");  // untouched by env
    apply_override(s, "M", "1");
    CHECK(s.at("M") == "1");  // flag beat the env
    CHECK(contains(config_error_of([&] { apply_override(s, "emm", "1"); }),
                   "emm"));
    std::remove(path.c_str());
  }

  // Conversion failures cite the offending key.
  {
    const auto broken = [](const std::string& key, const std::string& value) {
      Settings s = default_settings();
      s[key] = value;
      return config_error_of([&] { (void)to_experiment_config(s); });
    };
    CHECK(contains(broken("M", "3"), "M"));
    CHECK(contains(broken("M", "3"), "1, 2, 4 or 8"));
    CHECK(contains(broken("Q", "0"), "Q"));
    CHECK(contains(broken("N", "zero"), "N"));
    CHECK(contains(broken("detector", "nearest"), "detector"));
    CHECK(contains(broken("fidelity", "best"), "fidelity"));
    CHECK(contains(broken("bias_mode", "oracle"), "bias_mode"));
    CHECK(contains(broken("sweep", "snr"), "sweep"));
    CHECK(contains(broken("grid", "1,,2"), "grid"));
    CHECK(contains(broken("grid", "1,abc"), "abc"));
    CHECK(contains(broken("tag_loss_db", "0.5"), "amplify"));
    CHECK(contains(broken("workers", "-1"), "workers"));
    CHECK(contains(broken("scale", "banana"), "scale"));
    CHECK(contains(broken("target_gamma_r_db", "xyz"), "target_gamma_r_db"));
    CHECK(contains(broken("seed", "-4"), "seed"));
    CHECK(contains(broken("max_trials", "0"), "max_trials"));

    // Cross-field rule surfaces as a configuration error too.
    Settings s = default_settings();
    s["detector"] = "differential";
    s["M"] = "4";
    CHECK(contains(config_error_of([&] { (void)to_experiment_config(s); }),
                   "2 tag antennas"));
  }

  // Differential defaults are runnable as-is.
  {
    Settings s = default_settings();
    s["detector"] = "differential";
    const ExperimentConfig cfg = to_experiment_config(s);
    CHECK(cfg.resolved_frame_blocks() == 16);
  }

  // Extremes that must round trip.
  {
    Settings s = default_settings();
    s["seed"] = "18446744073709551615";
    CHECK(to_experiment_config(s).master_seed == 18446744073709551615ull);
    s = default_settings();
    s["target_gamma_r_db"] = "7.5";
    CHECK(to_experiment_config(s).target_gamma_r_db == 7.5);
  }

  return checks::summary("test_config");
}
