#pragma once
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ambc/channel.hpp"
#include "ambc/observation.hpp"
#include "ambc/params.hpp"

namespace ambc {

// A "theoretical" curve is the channel-averaged closed-form error rate of
// the linear detector; the rest are simulated decision rules.
enum class DetectorKind {
  ml_exact,
  ml_approx,
  linear,
  min_distance,
  differential,
  theoretical,
};

enum class BiasMode { perfect, estimated };

enum class SweepVariable { gamma_R_db, gamma_d_db, delta_gamma_db };

const char* to_string(DetectorKind d);
const char* to_string(BiasMode b);
const char* to_string(SweepVariable v);
const char* to_string(Fidelity f);
DetectorKind detector_from_string(const std::string& s);
BiasMode bias_mode_from_string(const std::string& s);
SweepVariable sweep_from_string(const std::string& s);
Fidelity fidelity_from_string(const std::string& s);

struct StopRule {
  long target_bit_errors = 200;
  long max_trials = 1000000;
};

// Sweep semantics by variable:
//  gamma_R_db:     grid holds receive-SNR targets; the averaging length is
//                  resolved per point to hit each target.
//  gamma_d_db:     grid holds direct-link SNRs; averaging length fixed.
//  delta_gamma_db: grid holds power deficits; if target_gamma_r_db is set
//                  (not NaN) the averaging length is re-resolved per point to
//                  hold that receive SNR, otherwise it stays fixed.
struct ExperimentConfig {
  SystemParams params;  // template; the swept quantity is overridden per point
  SweepVariable sweep = SweepVariable::gamma_R_db;
  std::vector<double> grid;
  double target_gamma_r_db = std::numeric_limits<double>::quiet_NaN();
  DetectorKind detector = DetectorKind::linear;
  Fidelity fidelity = Fidelity::chi_square;
  BiasMode bias_mode = BiasMode::perfect;
  long bias_pilot_length = 0;  // 0: reuse the averaging length
  int frame_blocks = 0;        // 0: 1 coherent block, 16 differential blocks
  std::uint64_t master_seed = 1;
  StopRule stop;
  int workers = 1;               // 0: OpenMP default thread count
  long gain_power_samples = 200000;
  long theory_channels = 10000;  // channel draws for theoretical curves

  int resolved_frame_blocks() const;
  void validate() const;
};

// One grid point with everything pinned down. point_tag keeps substreams of
// different points disjoint under a shared master seed.
struct ResolvedPoint {
  SystemParams params;
  SweepVariable sweep = SweepVariable::gamma_R_db;
  double swept_value = 0.0;
  DetectorKind detector = DetectorKind::linear;
  Fidelity fidelity = Fidelity::chi_square;
  BiasMode bias_mode = BiasMode::perfect;
  long pilot_length = 0;
  int frame_blocks = 1;
  std::uint64_t master_seed = 1;
  std::uint64_t point_tag = 0;
  StopRule stop;
  int workers = 1;
  long theory_channels = 10000;
};

struct BerPoint {
  double swept_value = 0.0;
  long averaging_length = 0;
  double direct_snr_db = 0.0;
  double power_deficit_db = 0.0;
  long trials = 0;
  long bits = 0;
  long errors = 0;
  double ber = 0.0;
  double ci95 = 0.0;
  bool hit_max_trials = false;
};

struct BerCurve {
  SweepVariable sweep = SweepVariable::gamma_R_db;
  DetectorKind detector = DetectorKind::linear;
  int tag_antennas = 1;
  int reader_antennas = 1;
  Fidelity fidelity = Fidelity::chi_square;
  BiasMode bias_mode = BiasMode::perfect;
  std::vector<BerPoint> points;
};

// Monte Carlo at one point. Trials run in fixed-size batches; the stop rule
// is evaluated on cumulative counts between batches, so the executed trial
// count depends only on the counts themselves, never on thread scheduling.
BerPoint run_ber_point(const ResolvedPoint& point);

// Maps run_ber_point over the grid, resolving averaging lengths from
// receive-SNR targets where the sweep calls for it.
BerCurve run_sweep(const ExperimentConfig& cfg);

// Pinned CSV schema (header below); UTF-8, LF endings, %.17g floats so a
// read-back reproduces every numeric field exactly.
extern const char* const kResultsCsvHeader;

void write_results(const BerCurve& curve, const std::string& path);

struct ResultRow {
  std::string sweep_var;
  double value = 0.0;
  std::string detector;
  int tag_antennas = 0;
  int reader_antennas = 0;
  long averaging_length = 0;
  double direct_snr_db = 0.0;
  double power_deficit_db = 0.0;
  std::string fidelity;
  std::string bias_mode;
  long trials = 0;
  long bits = 0;
  long errors = 0;
  double ber = 0.0;
  double ci95 = 0.0;
};

std::vector<ResultRow> read_results(const std::string& path);

}  // namespace ambc
