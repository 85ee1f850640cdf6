#include "ambc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ambc/analysis.hpp"
#include "ambc/detectors.hpp"
#include "ambc/ostbc.hpp"

namespace ambc {

const char* const kResultsCsvHeader =
    "sweep_var,value,detector,M,Q,N,gamma_d_db,delta_gamma_db,fidelity,"
    "bias_mode,trials,bits,errors,ber,ci95";

const char* to_string(DetectorKind d) {
  switch (d) {
    case DetectorKind::ml_exact: return "ml_exact";
    case DetectorKind::ml_approx: return "ml_approx";
    case DetectorKind::linear: return "linear";
    case DetectorKind::min_distance: return "min_distance";
    case DetectorKind::differential: return "differential";
    case DetectorKind::theoretical: return "theoretical";
  }
  return "?";
}

const char* to_string(BiasMode b) {
  return b == BiasMode::perfect ? "perfect" : "estimated";
}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::gamma_R_db: return "gamma_R_db";
    case SweepVariable::gamma_d_db: return "gamma_d_db";
    case SweepVariable::delta_gamma_db: return "delta_gamma_db";
  }
  return "?";
}

const char* to_string(Fidelity f) {
  switch (f) {
    case Fidelity::symbol_level: return "symbol_level";
    case Fidelity::chi_square: return "chi_square";
    case Fidelity::gaussian: return "gaussian";
  }
  return "?";
}

namespace {

template <typename T>
T from_string_impl(const std::string& s, std::initializer_list<T> values,
                   const char* what) {
  for (T v : values) {
    if (s == to_string(v)) return v;
  }
  std::string msg = std::string("unknown ") + what + " '" + s + "'; expected one of:";
  for (T v : values) msg += std::string(" ") + to_string(v);
  throw std::invalid_argument(msg);
}

}  // namespace

DetectorKind detector_from_string(const std::string& s) {
  return from_string_impl(
      s,
      {DetectorKind::ml_exact, DetectorKind::ml_approx, DetectorKind::linear,
       DetectorKind::min_distance, DetectorKind::differential,
       DetectorKind::theoretical},
      "detector");
}

BiasMode bias_mode_from_string(const std::string& s) {
  return from_string_impl(s, {BiasMode::perfect, BiasMode::estimated},
                          "bias mode");
}

SweepVariable sweep_from_string(const std::string& s) {
  return from_string_impl(
      s,
      {SweepVariable::gamma_R_db, SweepVariable::gamma_d_db,
       SweepVariable::delta_gamma_db},
      "sweep variable");
}

Fidelity fidelity_from_string(const std::string& s) {
  return from_string_impl(
      s, {Fidelity::symbol_level, Fidelity::chi_square, Fidelity::gaussian},
      "fidelity");
}

int ExperimentConfig::resolved_frame_blocks() const {
  if (frame_blocks > 0) return frame_blocks;
  return detector == DetectorKind::differential ? 16 : 1;
}

void ExperimentConfig::validate() const {
  params.validate();
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  for (double g : grid) {
    if (!std::isfinite(g)) throw std::invalid_argument("sweep grid value not finite");
  }
  if (detector == DetectorKind::differential) {
    if (params.tag_antennas != 2) {
      throw std::invalid_argument(
          "differential detection is defined for exactly 2 tag antennas");
    }
    if (resolved_frame_blocks() < 2) {
      throw std::invalid_argument(
          "differential frames need at least 2 blocks (reference + data)");
    }
  }
  if (bias_pilot_length < 0)
    throw std::invalid_argument("bias_pilot_length must be >= 0");
  if (stop.target_bit_errors < 1)
    throw std::invalid_argument("target_bit_errors must be >= 1");
  if (stop.max_trials < 1) throw std::invalid_argument("max_trials must be >= 1");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (gain_power_samples < 2)
    throw std::invalid_argument("gain_power_samples must be >= 2");
  if (theory_channels < 2)
    throw std::invalid_argument("theory_channels must be >= 2");
}

namespace {

// Substream purposes; each trial owns one stream per purpose so fidelity or
// bias settings never shift the draws of the other stages.
constexpr std::uint64_t kStreamChannel = 1;
constexpr std::uint64_t kStreamBits = 2;
constexpr std::uint64_t kStreamObserve = 3;
constexpr std::uint64_t kStreamBias = 4;
constexpr std::uint64_t kStreamTheory = 5;
constexpr std::uint64_t kStreamGainPower = 6;

struct TrialCounts {
  long bits = 0;
  long errors = 0;
};

ReaderObservation slice_observation(const ReaderObservation& frame, int col0,
                                    int cols) {
  ReaderObservation out;
  out.fidelity = frame.fidelity;
  out.averaging_length = frame.averaging_length;
  out.bias_true = frame.bias_true;
  out.bias_used = frame.bias_used;
  out.averaged_power.assign(frame.averaged_power.rows, cols);
  for (int q = 0; q < frame.averaged_power.rows; ++q) {
    for (int j = 0; j < cols; ++j) {
      out.averaged_power(q, j) = frame.averaged_power(q, col0 + j);
    }
  }
  return out;
}

TrialCounts run_coherent_trial(const ResolvedPoint& pt, long trial) {
  auto rng_channel = RandomStream::derive(
      pt.master_seed, {pt.point_tag, std::uint64_t(trial), kStreamChannel});
  auto rng_bits = RandomStream::derive(
      pt.master_seed, {pt.point_tag, std::uint64_t(trial), kStreamBits});
  auto rng_observe = RandomStream::derive(
      pt.master_seed, {pt.point_tag, std::uint64_t(trial), kStreamObserve});

  const int order = pt.params.tag_antennas;
  const int blocks = pt.frame_blocks;
  const ChannelRealization ch = sample_channel(pt.params, rng_channel);

  // Whole frame transmitted under one channel draw; observation draws run
  // row-major over (antenna, frame period).
  std::vector<std::vector<double>> sent(blocks);
  RealMat frame(order, order * blocks);
  const OrthogonalDesign& design = OrthogonalDesign::of_order(order);
  RealMat block;
  for (int b = 0; b < blocks; ++b) {
    sent[b].resize(order);
    for (int m = 0; m < order; ++m) sent[b][m] = rng_bits.next_pm1();
    design.encode(sent[b].data(), block);
    for (int m = 0; m < order; ++m) {
      for (int j = 0; j < order; ++j) {
        frame(m, b * order + j) = block(m, j);
      }
    }
  }

  ReaderObservation obs =
      observe_block(pt.params, ch, frame, pt.fidelity, rng_observe);
  if (pt.bias_mode == BiasMode::estimated) {
    auto rng_bias = RandomStream::derive(
        pt.master_seed, {pt.point_tag, std::uint64_t(trial), kStreamBias});
    obs.bias_used =
        estimate_bias(pt.params, ch, pt.fidelity, pt.pilot_length, rng_bias);
  }

  TrialCounts counts;
  const bool normalized_domain = pt.detector == DetectorKind::linear ||
                                 pt.detector == DetectorKind::min_distance;
  EffectiveChannel eff;
  NormalizedObservation norm;
  if (normalized_domain) {
    eff = effective_channel(pt.params, ch);
    norm = linearize_normalize(obs);
  }

  for (int b = 0; b < blocks; ++b) {
    std::vector<double> decided;
    switch (pt.detector) {
      case DetectorKind::linear:
      case DetectorKind::min_distance: {
        NormalizedObservation view;
        view.values.assign(norm.values.rows, order);
        for (int q = 0; q < norm.values.rows; ++q) {
          for (int j = 0; j < order; ++j) {
            view.values(q, j) = norm.values(q, b * order + j);
          }
        }
        decided = pt.detector == DetectorKind::linear
                      ? detect_linear(view, eff)
                      : detect_min_distance(view, eff);
        break;
      }
      case DetectorKind::ml_exact:
      case DetectorKind::ml_approx: {
        const ReaderObservation view = slice_observation(obs, b * order, order);
        decided = detect_ml(view, pt.params, ch,
                            pt.detector == DetectorKind::ml_exact
                                ? NoiseModel::exact
                                : NoiseModel::approximated);
        break;
      }
      default:
        throw std::logic_error("unexpected detector in coherent trial");
    }
    counts.bits += order;
    for (int m = 0; m < order; ++m) {
      if (decided[m] != sent[b][m]) ++counts.errors;
    }
  }
  return counts;
}

TrialCounts run_differential_trial(const ResolvedPoint& pt, long trial) {
  auto rng_channel = RandomStream::derive(
      pt.master_seed, {pt.point_tag, std::uint64_t(trial), kStreamChannel});
  auto rng_bits = RandomStream::derive(
      pt.master_seed, {pt.point_tag, std::uint64_t(trial), kStreamBits});
  auto rng_observe = RandomStream::derive(
      pt.master_seed, {pt.point_tag, std::uint64_t(trial), kStreamObserve});

  const int blocks = pt.frame_blocks;
  const ChannelRealization ch = sample_channel(pt.params, rng_channel);

  std::vector<int> bits(2 * std::size_t(blocks - 1));
  for (auto& b : bits) b = int(rng_bits.next_u64() >> 63);
  const std::vector<RealMat> coded = encode_diff_stream(bits);

  RealMat frame(2, 2 * blocks);
  for (int b = 0; b < blocks; ++b) {
    for (int m = 0; m < 2; ++m) {
      for (int j = 0; j < 2; ++j) {
        frame(m, 2 * b + j) = coded[b](m, j);
      }
    }
  }

  ReaderObservation obs =
      observe_block(pt.params, ch, frame, pt.fidelity, rng_observe);
  if (pt.bias_mode == BiasMode::estimated) {
    auto rng_bias = RandomStream::derive(
        pt.master_seed, {pt.point_tag, std::uint64_t(trial), kStreamBias});
    obs.bias_used =
        estimate_bias(pt.params, ch, pt.fidelity, pt.pilot_length, rng_bias);
  }
  const NormalizedObservation norm = linearize_normalize(obs);

  TrialCounts counts;
  RealMat window(norm.values.rows, 4);
  for (int b = 1; b < blocks; ++b) {
    for (int q = 0; q < norm.values.rows; ++q) {
      for (int j = 0; j < 4; ++j) {
        window(q, j) = norm.values(q, 2 * (b - 1) + j);
      }
    }
    const auto decided = detect_differential(window);
    counts.bits += 2;
    if (decided.first != bits[2 * (b - 1)]) ++counts.errors;
    if (decided.second != bits[2 * (b - 1) + 1]) ++counts.errors;
  }
  return counts;
}

TrialCounts run_trial(const ResolvedPoint& pt, long trial) {
  return pt.detector == DetectorKind::differential
             ? run_differential_trial(pt, trial)
             : run_coherent_trial(pt, trial);
}

BerPoint theory_point(const ResolvedPoint& pt) {
  auto rng = RandomStream::derive(pt.master_seed,
                                  {pt.point_tag, 0, kStreamTheory});
  const BerEstimate est =
      theoretical_ber(pt.params, pt.theory_channels, rng);
  BerPoint out;
  out.swept_value = pt.swept_value;
  out.averaging_length = pt.params.averaging_length;
  out.direct_snr_db = pt.params.direct_snr_db();
  out.power_deficit_db = pt.params.power_deficit_db();
  out.trials = est.samples;
  out.bits = 0;
  out.errors = 0;
  out.ber = est.value;
  out.ci95 = est.ci95;
  return out;
}

}  // namespace

BerPoint run_ber_point(const ResolvedPoint& pt) {
  pt.params.validate();
  if (pt.detector == DetectorKind::theoretical) return theory_point(pt);

  // Fixed batch size; the stop rule looks at cumulative counts between
  // batches only, so the number of trials run is independent of the worker
  // count and schedule.
  constexpr long kBatch = 1024;
  long trials = 0, bits = 0, errors = 0;

  while (trials < pt.stop.max_trials && errors < pt.stop.target_bit_errors) {
    const long batch = std::min(kBatch, pt.stop.max_trials - trials);
    long batch_bits = 0, batch_errors = 0;
    if (pt.workers == 1) {
      for (long t = trials; t < trials + batch; ++t) {
        const TrialCounts c = run_trial(pt, t);
        batch_bits += c.bits;
        batch_errors += c.errors;
      }
    } else {
#ifdef _OPENMP
      const int threads =
          pt.workers == 0 ? omp_get_max_threads() : pt.workers;
#pragma omp parallel for schedule(static) num_threads(threads) \
    reduction(+ : batch_bits, batch_errors)
      for (long t = trials; t < trials + batch; ++t) {
        const TrialCounts c = run_trial(pt, t);
        batch_bits += c.bits;
        batch_errors += c.errors;
      }
#else
      for (long t = trials; t < trials + batch; ++t) {
        const TrialCounts c = run_trial(pt, t);
        batch_bits += c.bits;
        batch_errors += c.errors;
      }
#endif
    }
    trials += batch;
    bits += batch_bits;
    errors += batch_errors;
  }

  BerPoint out;
  out.swept_value = pt.swept_value;
  out.averaging_length = pt.params.averaging_length;
  out.direct_snr_db = pt.params.direct_snr_db();
  out.power_deficit_db = pt.params.power_deficit_db();
  out.trials = trials;
  out.bits = bits;
  out.errors = errors;
  out.ber = bits > 0 ? double(errors) / double(bits) : 0.0;
  if (bits > 0) {
    // The normal-approximation half-width collapses to 0 at the boundary
    // counts; fall back to the one-sided 95% bound (rule of three) there.
    out.ci95 = errors > 0 && errors < bits
                   ? 1.96 * std::sqrt(out.ber * (1.0 - out.ber) / double(bits))
                   : 3.0 / double(bits);
  }
  out.hit_max_trials = errors < pt.stop.target_bit_errors;
  return out;
}

BerCurve run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();

  BerCurve curve;
  curve.sweep = cfg.sweep;
  curve.detector = cfg.detector;
  curve.tag_antennas = cfg.params.tag_antennas;
  curve.reader_antennas = cfg.params.reader_antennas;
  curve.fidelity = cfg.fidelity;
  curve.bias_mode = cfg.bias_mode;

  // The gain-power constant depends only on the direct-link SNR; cache it per
  // distinct SNR with a substream keyed the same way, so every sweep sharing
  // a master seed resolves identical averaging lengths.
  std::map<long long, double> gain_power_cache;
  const auto gain_power_for = [&](const SystemParams& p) {
    const long long key = std::llround(p.direct_snr_db() * 1e6);
    const auto it = gain_power_cache.find(key);
    if (it != gain_power_cache.end()) return it->second;
    auto rng = RandomStream::derive(cfg.master_seed,
                                    {kStreamGainPower, std::uint64_t(key)});
    const double value =
        estimate_gain_power(p, cfg.gain_power_samples, rng).value;
    gain_power_cache.emplace(key, value);
    return value;
  };

  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    const double g = cfg.grid[i];
    ResolvedPoint pt;
    pt.params = cfg.params;
    pt.sweep = cfg.sweep;
    pt.swept_value = g;
    pt.detector = cfg.detector;
    pt.fidelity = cfg.fidelity;
    pt.bias_mode = cfg.bias_mode;
    pt.frame_blocks = cfg.resolved_frame_blocks();
    pt.master_seed = cfg.master_seed;
    pt.point_tag = i + 1;
    pt.stop = cfg.stop;
    pt.workers = cfg.workers;
    pt.theory_channels = cfg.theory_channels;

    switch (cfg.sweep) {
      case SweepVariable::gamma_R_db:
        pt.params.averaging_length =
            averaging_length_for_target(pt.params, gain_power_for(pt.params),
                                        db_to_linear(g))
                .length;
        break;
      case SweepVariable::gamma_d_db:
        pt.params.ambient_power = db_to_linear(g) * pt.params.noise_power;
        break;
      case SweepVariable::delta_gamma_db:
        pt.params.tag_reader_gain =
            1.0 / (pt.params.tag_loss * std::sqrt(db_to_linear(g)));
        if (!std::isnan(cfg.target_gamma_r_db)) {
          pt.params.averaging_length =
              averaging_length_for_target(
                  pt.params, gain_power_for(pt.params),
                  db_to_linear(cfg.target_gamma_r_db))
                  .length;
        }
        break;
    }
    pt.pilot_length = cfg.bias_pilot_length > 0 ? cfg.bias_pilot_length
                                                : pt.params.averaging_length;

    curve.points.push_back(run_ber_point(pt));
  }
  return curve;
}

void write_results(const BerCurve& curve, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::fprintf(f, "%s\n", kResultsCsvHeader);
  for (const BerPoint& p : curve.points) {
    std::fprintf(f, "%s,%.17g,%s,%d,%d,%ld,%.17g,%.17g,%s,%s,%ld,%ld,%ld,%.17g,%.17g\n",
                 to_string(curve.sweep), p.swept_value,
                 to_string(curve.detector), curve.tag_antennas,
                 curve.reader_antennas, p.averaging_length, p.direct_snr_db,
                 p.power_deficit_db, to_string(curve.fidelity),
                 to_string(curve.bias_mode), p.trials, p.bits, p.errors, p.ber,
                 p.ci95);
  }
  if (std::fclose(f) != 0) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<ResultRow> read_results(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::string content;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) content.append(buf, got);
  std::fclose(f);

  std::vector<ResultRow> rows;
  std::size_t start = 0;
  bool first = true;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    const std::string line = content.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line != kResultsCsvHeader) {
        throw std::runtime_error("unexpected results header in " + path);
      }
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 15) {
      throw std::runtime_error("malformed results row in " + path);
    }
    ResultRow r;
    r.sweep_var = fields[0];
    r.value = std::stod(fields[1]);
    r.detector = fields[2];
    r.tag_antennas = std::stoi(fields[3]);
    r.reader_antennas = std::stoi(fields[4]);
    r.averaging_length = std::stol(fields[5]);
    r.direct_snr_db = std::stod(fields[6]);
    r.power_deficit_db = std::stod(fields[7]);
    r.fidelity = fields[8];
    r.bias_mode = fields[9];
    r.trials = std::stol(fields[10]);
    r.bits = std::stol(fields[11]);
    r.errors = std::stol(fields[12]);
    r.ber = std::stod(fields[13]);
    r.ci95 = std::stod(fields[14]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ambc
