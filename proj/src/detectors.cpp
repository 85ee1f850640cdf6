#include "ambc/detectors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ambc {

namespace {

// Candidate enumeration shared by the exhaustive detectors: code 0 is the
// all-ones vector and ascending codes walk lexicographically downward, so
// keeping the first strict minimum implements the tie rule.
void candidate_from_code(unsigned code, int order, std::vector<double>& u) {
  u.resize(order);
  for (int m = 0; m < order; ++m) {
    u[m] = (code >> (order - 1 - m)) & 1u ? -1.0 : 1.0;
  }
}

}  // namespace

RealMat build_decision_matrix(const std::vector<double>& gain_row) {
  const int order = int(gain_row.size());
  const OrthogonalDesign& design = OrthogonalDesign::of_order(order);
  // Column k of the result maps a noiseless block observation
  // y_j = sum_m gains[m] X(m, j) onto ||gains||^2 u_k: entry (j, k) is the
  // coefficient of u_k in the model for period j, i.e. the block entry
  // pattern transposed onto (period, symbol).
  RealMat lambda(order, order);
  for (int m = 0; m < order; ++m) {
    for (int j = 0; j < order; ++j) {
      lambda(j, design.symbol_at(m, j)) += design.sign_at(m, j) * gain_row[m];
    }
  }
  return lambda;
}

std::vector<double> detect_linear(const NormalizedObservation& obs,
                                  const EffectiveChannel& eff) {
  const int q_count = eff.gains.rows;
  const int order = eff.gains.cols;
  if (obs.values.rows != q_count || obs.values.cols != order) {
    throw std::invalid_argument("observation shape does not match channel");
  }
  const OrthogonalDesign& design = OrthogonalDesign::of_order(order);
  // Accumulates the decision-matrix projection entry by entry; same sums as
  // materializing the matrix, without the per-call allocation.
  std::vector<double> score(order, 0.0);
  for (int q = 0; q < q_count; ++q) {
    for (int m = 0; m < order; ++m) {
      const double g = eff.gains(q, m);
      for (int j = 0; j < order; ++j) {
        score[design.symbol_at(m, j)] +=
            design.sign_at(m, j) * g * obs.values(q, j);
      }
    }
  }
  std::vector<double> decided(order);
  for (int k = 0; k < order; ++k) decided[k] = score[k] >= 0.0 ? 1.0 : -1.0;
  return decided;
}

std::vector<double> detect_min_distance(const NormalizedObservation& obs,
                                        const EffectiveChannel& eff) {
  const int q_count = eff.gains.rows;
  const int order = eff.gains.cols;
  if (obs.values.rows != q_count || obs.values.cols != order) {
    throw std::invalid_argument("observation shape does not match channel");
  }
  const OrthogonalDesign& design = OrthogonalDesign::of_order(order);

  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  std::vector<double> u;
  RealMat block;
  for (unsigned code = 0; code < (1u << order); ++code) {
    candidate_from_code(code, order, u);
    design.encode(u.data(), block);
    double dist = 0.0;
    for (int q = 0; q < q_count; ++q) {
      for (int j = 0; j < order; ++j) {
        double model = 0.0;
        for (int m = 0; m < order; ++m) model += eff.gains(q, m) * block(m, j);
        const double diff = obs.values(q, j) - model;
        dist += diff * diff;
      }
    }
    if (dist < best_dist) {
      best_dist = dist;
      best = u;
    }
  }
  return best;
}

std::vector<double> detect_ml(const ReaderObservation& obs,
                              const SystemParams& params,
                              const ChannelRealization& ch, NoiseModel model) {
  const int q_count = ch.reader_antennas;
  const int order = ch.tag_antennas;
  if (obs.averaged_power.rows != q_count || obs.averaged_power.cols != order) {
    throw std::invalid_argument("observation shape does not match channel");
  }
  const OrthogonalDesign& design = OrthogonalDesign::of_order(order);
  const double root_n = std::sqrt(double(obs.averaging_length));

  std::vector<double> best;
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<double> u, column(order);
  RealMat block;
  for (unsigned code = 0; code < (1u << order); ++code) {
    candidate_from_code(code, order, u);
    design.encode(u.data(), block);
    double score = 0.0;
    for (int q = 0; q < q_count; ++q) {
      for (int j = 0; j < order; ++j) {
        for (int m = 0; m < order; ++m) column[m] = block(m, j);
        const std::complex<double> path =
            backscatter_path(params, ch, q, column.data());
        double mean, sigma;
        if (model == NoiseModel::exact) {
          // Hypothesis-dependent noise: the averaged power fluctuates in
          // proportion to its own mean.
          const double total_power =
              params.ambient_power * std::norm(ch.source_reader[q] + path) +
              params.noise_power;
          mean = total_power - obs.bias_true[q] + obs.bias_used[q];
          sigma = total_power / root_n;
        } else {
          // Linearized mean, tag-silent noise scale.
          mean = 2.0 * params.ambient_power *
                     std::real(std::conj(ch.source_reader[q]) * path) +
                 obs.bias_used[q];
          sigma = obs.bias_used[q] / root_n;
        }
        const double t = (obs.averaged_power(q, j) - mean) / sigma;
        score += -std::log(sigma) - t * t;
      }
    }
    if (score > best_score) {
      best_score = score;
      best = u;
    }
  }
  return best;
}

std::pair<int, int> detect_differential(const RealMat& window) {
  if (window.cols != 4) {
    throw std::invalid_argument(
        "differential detection needs a four-period window");
  }
  double r1 = 0.0, r2 = 0.0;
  for (int q = 0; q < window.rows; ++q) {
    const double y1 = window(q, 0), y2 = window(q, 1);
    const double y3 = window(q, 2), y4 = window(q, 3);
    r1 += y3 * y1 + y4 * y2;
    r2 += y3 * y2 - y4 * y1;
  }
  // Same candidate order as the differential map table; first strict
  // improvement wins, fixing tie behavior.
  static constexpr int bit_pairs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  double best_score = -std::numeric_limits<double>::infinity();
  int best = 0;
  for (int i = 0; i < 4; ++i) {
    const std::array<double, 2> coeff = diff_map(bit_pairs[i][0], bit_pairs[i][1]);
    const double score = coeff[0] * r1 + coeff[1] * r2;
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return {bit_pairs[best][0], bit_pairs[best][1]};
}

}  // namespace ambc
