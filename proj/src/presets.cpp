#include "ambc/presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "ambc/analysis.hpp"
#include "ambc/observation.hpp"

namespace ambc {

namespace {

struct CurveSpec {
  std::string file;
  std::map<std::string, std::string> deltas;
};

struct Band {
  const char* name;
  double center_hz;
};

// Band centers of the ambient carriers considered: GSM-900 (925-960 MHz),
// GSM-1800 (1805-1880 MHz), UMTS-2100 (2110-2170 MHz), WiFi (2400-2480 MHz).
constexpr Band kBands[] = {
    {"gsm900", 942.5e6},
    {"gsm1800", 1842.5e6},
    {"umts2100", 2140.0e6},
    {"wifi", 2440.0e6},
};

void scale_deltas(std::map<std::string, std::string>& d, bool paper) {
  d["target_bit_errors"] = paper ? "200" : "50";
  d["max_trials"] = paper ? "10000000" : "100000";
  d["theory_channels"] = paper ? "10000" : "2000";
  d["gain_power_samples"] = paper ? "1000000" : "100000";
}

std::string snr_grid(bool paper) {
  return paper ? "0,5,10,15,20,25" : "0,5,10,15,20";
}
std::string direct_snr_grid(bool paper) {
  return paper ? "0,5,10,15,20,25,30,35,40,45,50,55,60" : "0,10,20,30,40,50,60";
}
std::string deficit_grid(bool paper) {
  return paper ? "25,30,35,40,45,50,55,60" : "30,35,40,50";
}

std::vector<CurveSpec> ber_curves(const std::string& name, bool paper) {
  std::vector<CurveSpec> curves;
  const auto add = [&](const std::string& file,
                       std::map<std::string, std::string> deltas) {
    scale_deltas(deltas, paper);
    curves.push_back({file, std::move(deltas)});
  };

  if (name == "fig4a" || name == "fig4b") {
    const std::string deficit = name == "fig4a" ? "40" : "50";
    const int antennas[][2] = {{1, 1}, {2, 1}, {2, 2}, {4, 2}, {8, 2}};
    for (const auto& mq : antennas) {
      for (const char* det : {"ml_exact", "linear", "theoretical"}) {
        add(name + "_" + det + "_" + std::to_string(mq[0]) + "x" +
                std::to_string(mq[1]) + ".csv",
            {{"M", std::to_string(mq[0])},
             {"Q", std::to_string(mq[1])},
             {"detector", det},
             {"sweep", "gamma_R_db"},
             {"grid", snr_grid(paper)},
             {"gamma_d_db", "15"},
             {"delta_gamma_db", deficit}});
      }
    }
  } else if (name == "fig6") {
    const int antennas[][2] = {{1, 1}, {2, 1}, {2, 2}};
    for (const auto& mq : antennas) {
      for (const char* det : {"linear", "min_distance"}) {
        add(name + "_" + std::string(det) + "_" + std::to_string(mq[0]) + "x" +
                std::to_string(mq[1]) + ".csv",
            {{"M", std::to_string(mq[0])},
             {"Q", std::to_string(mq[1])},
             {"detector", det},
             {"sweep", "gamma_d_db"},
             {"grid", direct_snr_grid(paper)},
             {"N", "40000"},
             {"delta_gamma_db", "40"}});
      }
    }
  } else if (name == "fig7") {
    for (const char* target : {"5", "10", "15"}) {
      for (const char* det : {"ml_exact", "linear"}) {
        add(name + "_" + std::string(det) + "_gr" + target + ".csv",
            {{"M", "2"},
             {"Q", "1"},
             {"detector", det},
             {"sweep", "delta_gamma_db"},
             {"grid", deficit_grid(paper)},
             {"target_gamma_r_db", target},
             {"gamma_d_db", "15"}});
      }
    }
  } else if (name == "fig9") {
    const int antennas[][2] = {{2, 1}, {2, 2}};
    for (const auto& mq : antennas) {
      for (const char* det : {"differential", "linear"}) {
        add(name + "_" + std::string(det) + "_" + std::to_string(mq[0]) + "x" +
                std::to_string(mq[1]) + ".csv",
            {{"M", std::to_string(mq[0])},
             {"Q", std::to_string(mq[1])},
             {"detector", det},
             {"sweep", "gamma_R_db"},
             {"grid", snr_grid(paper)},
             {"gamma_d_db", "15"},
             {"delta_gamma_db", "40"}});
      }
    }
  } else if (name == "fig10a") {
    const int antennas[][2] = {{2, 1}, {2, 2}};
    for (const auto& mq : antennas) {
      add(name + "_differential_" + std::to_string(mq[0]) + "x" +
              std::to_string(mq[1]) + ".csv",
          {{"M", std::to_string(mq[0])},
           {"Q", std::to_string(mq[1])},
           {"detector", "differential"},
           {"sweep", "gamma_d_db"},
           {"grid", direct_snr_grid(paper)},
           {"N", "40000"},
           {"delta_gamma_db", "40"}});
    }
  } else if (name == "fig10b") {
    for (const char* target : {"5", "10", "15"}) {
      add(name + "_differential_gr" + std::string(target) + ".csv",
          {{"M", "2"},
           {"Q", "1"},
           {"detector", "differential"},
           {"sweep", "delta_gamma_db"},
           {"grid", deficit_grid(paper)},
           {"target_gamma_r_db", target},
           {"gamma_d_db", "15"}});
    }
  }
  return curves;
}

std::vector<std::string> run_error_ratio_preset(const Settings& merged,
                                                const std::string& out_dir,
                                                bool paper) {
  const long samples = paper ? 1000000 : 200000;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(merged.at("seed"));
  } catch (const std::exception&) {
    throw ConfigError("key seed: expected a non-negative integer, got '" +
                      merged.at("seed") + "'");
  }
  const std::vector<double> deficits =
      paper ? std::vector<double>{20, 25, 30, 35, 40, 45, 50, 55, 60}
            : std::vector<double>{20, 30, 40, 50, 60};

  std::vector<std::string> files;
  for (int m : {2, 4, 8}) {
    const std::string file = "fig5_error_M" + std::to_string(m) + ".csv";
    const std::string path = out_dir + "/" + file;
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "M,delta_gamma_db,epsilon,ci95\n");
    for (std::size_t i = 0; i < deficits.size(); ++i) {
      SystemParams p = make_params(m, 1, 1,
                                   std::stod(merged.at("gamma_d_db")),
                                   deficits[i],
                                   std::stod(merged.at("tag_loss_db")));
      auto rng = RandomStream::derive(
          seed, {0xE44u, std::uint64_t(m), std::uint64_t(i)});
      const auto est = linearization_error(p, samples, rng);
      std::fprintf(f, "%d,%.17g,%.17g,%.17g\n", m, deficits[i], est.value,
                   est.ci95);
    }
    if (std::fclose(f) != 0) throw std::runtime_error("write failed: " + path);
    files.push_back(file);
  }
  return files;
}

std::vector<std::string> run_path_loss_preset(const std::string& out_dir) {
  std::vector<std::string> files;
  for (const Band& band : kBands) {
    const std::string file = std::string("fig8_pathloss_") + band.name + ".csv";
    const std::string path = out_dir + "/" + file;
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "frequency_hz,distance_m,path_loss_db\n");
    // 0.1 m to 10 m, log-spaced.
    constexpr int kPoints = 41;
    for (int i = 0; i < kPoints; ++i) {
      const double d = std::pow(10.0, -1.0 + 2.0 * i / double(kPoints - 1));
      std::fprintf(f, "%.17g,%.17g,%.17g\n", band.center_hz, d,
                   friis_path_loss_db(band.center_hz, d));
    }
    if (std::fclose(f) != 0) throw std::runtime_error("write failed: " + path);
    files.push_back(file);
  }
  return files;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig4a", "fig4b", "fig5",  "fig6",  "fig7",
          "fig8",  "fig9",  "fig10a", "fig10b"};
}

std::vector<std::string> run_preset(
    const std::string& name, const Settings& base,
    const std::map<std::string, std::string>& flag_overrides) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string msg = "unknown preset '" + name + "'; available:";
    for (const auto& n : names) msg += " " + n;
    throw ConfigError(msg);
  }

  Settings merged = base;
  for (const auto& [k, v] : flag_overrides) apply_override(merged, k, v);
  const std::string out_dir = merged.at("out_dir");
  const std::string scale = merged.at("scale");
  if (scale != "quick" && scale != "paper") {
    throw ConfigError("key scale: must be quick or paper, got '" + scale + "'");
  }
  const bool paper = scale == "paper";
  // Surfaces malformed key values as config errors before any work starts.
  (void)to_experiment_config(merged);
  std::filesystem::create_directories(out_dir);

  std::vector<std::string> files;
  if (name == "fig5") {
    files = run_error_ratio_preset(merged, out_dir, paper);
  } else if (name == "fig8") {
    files = run_path_loss_preset(out_dir);
  } else {
    for (const CurveSpec& spec : ber_curves(name, paper)) {
      Settings s = base;
      for (const auto& [k, v] : spec.deltas) apply_override(s, k, v);
      for (const auto& [k, v] : flag_overrides) apply_override(s, k, v);
      const ExperimentConfig cfg = to_experiment_config(s);
      const BerCurve curve = run_sweep(cfg);
      write_results(curve, out_dir + "/" + spec.file);
      files.push_back(spec.file);
    }
  }

  const std::string manifest_path = out_dir + "/" + name + "_manifest.txt";
  std::FILE* f = std::fopen(manifest_path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + manifest_path);
  std::fprintf(f, "seed=%s\nscale=%s\n", merged.at("seed").c_str(),
               scale.c_str());
  for (const auto& file : files) std::fprintf(f, "%s\n", file.c_str());
  if (std::fclose(f) != 0) {
    throw std::runtime_error("write failed: " + manifest_path);
  }
  files.push_back(name + "_manifest.txt");
  return files;
}

}  // namespace ambc
