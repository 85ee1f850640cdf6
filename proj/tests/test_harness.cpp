#include "ambc/harness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "ambc/analysis.hpp"
#include "checks.hpp"

using namespace ambc;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.params = make_params(2, 1, 2000, 15.0, 35.0);
  cfg.sweep = SweepVariable::gamma_d_db;
  cfg.grid = {15.0};
  cfg.detector = DetectorKind::linear;
  cfg.master_seed = 7;
  cfg.stop.target_bit_errors = 50;
  cfg.stop.max_trials = 20000;
  cfg.gain_power_samples = 20000;
  cfg.theory_channels = 2000;
  return cfg;
}

bool same_point(const BerPoint& a, const BerPoint& b) {
  return a.swept_value == b.swept_value &&
         a.averaging_length == b.averaging_length && a.trials == b.trials &&
         a.bits == b.bits && a.errors == b.errors && a.ber == b.ber &&
         a.ci95 == b.ci95 && a.hit_max_trials == b.hit_max_trials;
}

}  // namespace

int main() {
  // Enum round trips and rejection messages.
  {
    for (const char* name : {"ml_exact", "ml_approx", "linear", "min_distance",
                             "differential", "theoretical"}) {
      CHECK(std::string(to_string(detector_from_string(name))) == name);
    }
    CHECK_THROWS(detector_from_string("nearest"));
    CHECK(bias_mode_from_string("estimated") == BiasMode::estimated);
    CHECK(sweep_from_string("delta_gamma_db") == SweepVariable::delta_gamma_db);
    CHECK(fidelity_from_string("gaussian") == Fidelity::gaussian);
    CHECK_THROWS(fidelity_from_string("exact"));
  }

  // Frame-length defaults and config validation.
  {
    ExperimentConfig cfg = small_config();
    CHECK(cfg.resolved_frame_blocks() == 1);
    cfg.detector = DetectorKind::differential;
    CHECK(cfg.resolved_frame_blocks() == 16);
    cfg.frame_blocks = 5;
    CHECK(cfg.resolved_frame_blocks() == 5);

    cfg = small_config();
    cfg.grid.clear();
    CHECK_THROWS(cfg.validate());
    cfg = small_config();
    cfg.grid = {std::nan("")};
    CHECK_THROWS(cfg.validate());
    cfg = small_config();
    cfg.detector = DetectorKind::differential;
    cfg.params.tag_antennas = 4;
    CHECK_THROWS(cfg.validate());
    cfg = small_config();
    cfg.detector = DetectorKind::differential;
    cfg.frame_blocks = 1;
    CHECK_THROWS(cfg.validate());
    cfg = small_config();
    cfg.stop.target_bit_errors = 0;
    CHECK_THROWS(cfg.validate());
  }

  // The two equivalent coherent detectors produce identical error counts
  // under a shared master seed: the draws are common by construction.
  {
    ExperimentConfig a = small_config();
    ExperimentConfig b = small_config();
    b.detector = DetectorKind::min_distance;
    const BerCurve ca = run_sweep(a);
    const BerCurve cb = run_sweep(b);
    CHECK(ca.points.size() == 1 && cb.points.size() == 1);
    CHECK(ca.points[0].errors == cb.points[0].errors);
    CHECK(ca.points[0].trials == cb.points[0].trials);
    CHECK(ca.points[0].bits == cb.points[0].bits);
    CHECK(ca.points[0].errors >= 50);  // stop rule was reached, not capped
    CHECK(!ca.points[0].hit_max_trials);
  }

  // Worker count never changes the numbers, only the wall time.
  {
    ExperimentConfig cfg = small_config();
    const BerCurve serial = run_sweep(cfg);
    cfg.workers = 8;
    const BerCurve wide = run_sweep(cfg);
    CHECK(same_point(serial.points[0], wide.points[0]));
    cfg.workers = 3;
    const BerCurve odd = run_sweep(cfg);
    CHECK(same_point(serial.points[0], odd.points[0]));
  }

  // A one-point sweep equals a hand-resolved point: the sweep adds nothing
  // but parameter resolution.
  {
    const ExperimentConfig cfg = small_config();
    const BerCurve curve = run_sweep(cfg);

    ResolvedPoint pt;
    pt.params = cfg.params;
    pt.params.ambient_power = db_to_linear(15.0) * pt.params.noise_power;
    pt.sweep = cfg.sweep;
    pt.swept_value = 15.0;
    pt.detector = cfg.detector;
    pt.fidelity = cfg.fidelity;
    pt.bias_mode = cfg.bias_mode;
    pt.pilot_length = pt.params.averaging_length;
    pt.frame_blocks = 1;
    pt.master_seed = cfg.master_seed;
    pt.point_tag = 1;
    pt.stop = cfg.stop;
    pt.workers = cfg.workers;
    pt.theory_channels = cfg.theory_channels;
    const BerPoint direct = run_ber_point(pt);
    CHECK(same_point(curve.points[0], direct));
  }

  // Stop rule: batches of 1024 trials, so the trial count is a multiple of
  // the batch size (or the cap); the cap flags hit_max_trials.
  {
    ExperimentConfig cfg = small_config();
    const BerCurve curve = run_sweep(cfg);
    CHECK(curve.points[0].trials % 1024 == 0);

    cfg.stop.max_trials = 100;
    cfg.stop.target_bit_errors = 1000000;
    const BerCurve capped = run_sweep(cfg);
    CHECK(capped.points[0].trials == 100);
    CHECK(capped.points[0].hit_max_trials);
    CHECK(capped.points[0].bits == 2 * 100);
  }

  // Differential frames: 16 blocks yield 30 data bits per trial.
  {
    ExperimentConfig cfg = small_config();
    cfg.detector = DetectorKind::differential;
    cfg.sweep = SweepVariable::gamma_R_db;
    cfg.grid = {18.0};
    const BerCurve curve = run_sweep(cfg);
    CHECK(curve.points[0].bits == 30 * curve.points[0].trials);
    CHECK(curve.points[0].ber > 0.0 && curve.points[0].ber < 0.2);
  }

  // Receive-SNR sweep resolves growing averaging lengths, identically for
  // every detector sharing the master seed.
  {
    ExperimentConfig cfg = small_config();
    cfg.sweep = SweepVariable::gamma_R_db;
    cfg.grid = {0.0, 10.0, 20.0};
    cfg.stop.max_trials = 1024;
    cfg.stop.target_bit_errors = 1;
    const BerCurve lin = run_sweep(cfg);
    cfg.detector = DetectorKind::theoretical;
    const BerCurve theo = run_sweep(cfg);
    CHECK(lin.points.size() == 3);
    CHECK(lin.points[0].averaging_length < lin.points[1].averaging_length);
    CHECK(lin.points[1].averaging_length < lin.points[2].averaging_length);
    for (int i = 0; i < 3; ++i) {
      CHECK(lin.points[i].averaging_length == theo.points[i].averaging_length);
    }
    // Doubling in dB is a factor 10 in the target, so lengths scale by 10
    // up to rounding.
    CHECK_NEAR(double(lin.points[1].averaging_length),
               10.0 * double(lin.points[0].averaging_length),
               0.01 * 10.0 * double(lin.points[0].averaging_length));
  }

  // Theoretical rows: channel draws recorded as trials, no bit counts, and
  // the value reproduces the library call on the pinned substream layout
  // (master seed, point tag, trial 0, purpose 5).
  {
    ExperimentConfig cfg = small_config();
    cfg.detector = DetectorKind::theoretical;
    const BerCurve curve = run_sweep(cfg);
    const BerPoint& p = curve.points[0];
    CHECK(p.trials == cfg.theory_channels);
    CHECK(p.bits == 0 && p.errors == 0);
    CHECK(p.ber > 0.0 && p.ber < 0.5 && p.ci95 > 0.0);

    SystemParams params = cfg.params;
    params.ambient_power = db_to_linear(15.0) * params.noise_power;
    auto rng = RandomStream::derive(cfg.master_seed, {1, 0, 5});
    const BerEstimate direct =
        theoretical_ber(params, cfg.theory_channels, rng);
    CHECK(direct.value == p.ber && direct.ci95 == p.ci95);
  }

  // Estimated bias mode is a working end-to-end path.
  {
    ExperimentConfig cfg = small_config();
    cfg.bias_mode = BiasMode::estimated;
    const BerCurve curve = run_sweep(cfg);
    CHECK(curve.points[0].errors >= 50);
    CHECK(curve.points[0].ber > 0.0 && curve.points[0].ber < 0.5);
    CHECK(curve.bias_mode == BiasMode::estimated);
  }

  // Deficit sweep holding a receive-SNR target re-resolves the averaging
  // length per point: deeper deficit needs a longer window, same target SNR.
  {
    ExperimentConfig cfg = small_config();
    cfg.sweep = SweepVariable::delta_gamma_db;
    cfg.grid = {30.0, 40.0};
    cfg.target_gamma_r_db = 10.0;
    cfg.stop.max_trials = 1024;
    cfg.stop.target_bit_errors = 1;
    const BerCurve curve = run_sweep(cfg);
    CHECK_NEAR(double(curve.points[1].averaging_length),
               10.0 * double(curve.points[0].averaging_length),
               0.01 * 10.0 * double(curve.points[0].averaging_length));
    // Without a target the length stays fixed.
    cfg.target_gamma_r_db = std::numeric_limits<double>::quiet_NaN();
    const BerCurve fixed = run_sweep(cfg);
    CHECK(fixed.points[0].averaging_length == 2000);
    CHECK(fixed.points[1].averaging_length == 2000);
  }

  // CSV: pinned header, exact numeric round trip, rejection of foreign files.
  {
    CHECK(std::string(kResultsCsvHeader) ==
          "sweep_var,value,detector,M,Q,N,gamma_d_db,delta_gamma_db,fidelity,"
          "bias_mode,trials,bits,errors,ber,ci95");

    ExperimentConfig cfg = small_config();
    const BerCurve curve = run_sweep(cfg);
    const std::string path = "test_harness_roundtrip.csv";
    write_results(curve, path);
    const std::vector<ResultRow> rows = read_results(path);
    CHECK(rows.size() == 1);
    const ResultRow& r = rows[0];
    const BerPoint& p = curve.points[0];
    CHECK(r.sweep_var == "gamma_d_db" && r.detector == "linear");
    CHECK(r.tag_antennas == 2 && r.reader_antennas == 1);
    CHECK(r.value == p.swept_value);
    CHECK(r.averaging_length == p.averaging_length);
    CHECK(r.direct_snr_db == p.direct_snr_db);
    CHECK(r.power_deficit_db == p.power_deficit_db);
    CHECK(r.fidelity == "chi_square" && r.bias_mode == "perfect");
    CHECK(r.trials == p.trials && r.bits == p.bits && r.errors == p.errors);
    CHECK(r.ber == p.ber && r.ci95 == p.ci95);

    // Empty curve: header only, reads back to no rows.
    BerCurve empty;
    write_results(empty, path);
    CHECK(read_results(path).empty());

    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fprintf(f, "not,a,results,file\n");
    std::fclose(f);
    CHECK_THROWS(read_results(path));
    std::remove(path.c_str());
    CHECK_THROWS(read_results("test_harness_missing.csv"));
  }

  return checks::summary("test_harness");
}
