#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ambc/config.hpp"
#include "ambc/harness.hpp"
#include "ambc/presets.hpp"
#include "checks.hpp"

using namespace ambc;
namespace fs = std::filesystem;

namespace {

std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  const std::string out_path = "cli_stdout.txt";
  const std::string err_path = "cli_stderr.txt";
  const std::string cmd =
      g_binary + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = status == -1 ? -1 : WEXITSTATUS(status);
  std::ostringstream o, e;
  o << std::ifstream(out_path, std::ios::binary).rdbuf();
  e << std::ifstream(err_path, std::ios::binary).rdbuf();
  r.out = o.str();
  r.err = e.str();
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-simulator-binary>\n");
    return 2;
  }
  g_binary = argv[1];

  // Help: exit 0 and documents every key, its env override, and the presets.
  {
    const RunResult r = run("--help");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "usage"));
    for (const KeySpec& k : config_keys()) CHECK(contains(r.out, k.name));
    CHECK(contains(r.out, "AMBC_"));
    for (const auto& p : preset_names()) CHECK(contains(r.out, p));
  }

  // Configuration mistakes exit with code 2 and name the problem.
  {
    const RunResult bogus = run("--bogus-flag");
    CHECK(bogus.exit_code == 2);
    CHECK(contains(bogus.err, "bogus-flag"));

    const RunResult bad_seed = run("--seed notanumber");
    CHECK(bad_seed.exit_code == 2);
    CHECK(contains(bad_seed.err, "seed"));

    const RunResult bad_preset = run("--preset nope");
    CHECK(bad_preset.exit_code == 2);
    CHECK(contains(bad_preset.err, "nope"));

    const RunResult missing_cfg = run("--config does_not_exist.cfg");
    CHECK(missing_cfg.exit_code == 2);
    CHECK(contains(missing_cfg.err, "does_not_exist.cfg"));
  }

  // A tiny end-to-end run through a config file, with flags taking the last
  // word: results.csv appears and carries the flag-selected detector.
  {
    const std::string dir = "cli_test_out";
    fs::remove_all(dir);
    std::ofstream("cli_test.cfg")
        << "sweep = gamma_d_db\n"
           "grid = 15\n"
           "N = 2000\n"
           "detector = linear\n"
           "gain_power_samples = 5000\n";
    const RunResult r =
        run("--config cli_test.cfg --out-dir " + dir +
            " --target-errors 5 --max-trials 2048 --detector min_distance");
    CHECK(r.exit_code == 0);
    const auto rows = read_results(dir + "/results.csv");
    CHECK(rows.size() == 1);
    CHECK(rows[0].detector == "min_distance");
    CHECK(rows[0].sweep_var == "gamma_d_db");
    CHECK(rows[0].bits > 0);
    std::remove("cli_test.cfg");
    fs::remove_all(dir);
  }

  // Environment overrides reach the run; explicit flags still win over them.
  {
    const std::string dir = "cli_env_out";
    fs::remove_all(dir);
    setenv("AMBC_SWEEP", "gamma_d_db", 1);
    setenv("AMBC_GRID", "10", 1);
    setenv("AMBC_N", "2000", 1);
    setenv("AMBC_GAIN_POWER_SAMPLES", "5000", 1);
    setenv("AMBC_DETECTOR", "linear", 1);
    const RunResult r = run("--out-dir " + dir +
                            " --target-errors 5 --max-trials 2048 "
                            "--detector ml_approx");
    unsetenv("AMBC_SWEEP");
    unsetenv("AMBC_GRID");
    unsetenv("AMBC_N");
    unsetenv("AMBC_GAIN_POWER_SAMPLES");
    unsetenv("AMBC_DETECTOR");
    CHECK(r.exit_code == 0);
    const auto rows = read_results(dir + "/results.csv");
    CHECK(rows.size() == 1);
    CHECK(rows[0].value == 10.0);
    CHECK(rows[0].detector == "ml_approx");
    fs::remove_all(dir);
  }

  // Preset path end to end.
  {
    const std::string dir = "cli_preset_out";
    fs::remove_all(dir);
    const RunResult r = run("--preset fig8 --out-dir " + dir);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(fs::path(dir) / "fig8_manifest.txt"));
    CHECK(fs::exists(fs::path(dir) / "fig8_pathloss_umts2100.csv"));
    fs::remove_all(dir);
  }

  return checks::summary("test_cli");
}
