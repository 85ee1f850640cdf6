#include "ambc/observation.hpp"

#include <cmath>
#include <stdexcept>

namespace ambc {

namespace {

double draw_averaged_power(double mean, double noise_free_power,
                           double ambient_power, double noise_power, long n,
                           Fidelity fidelity, RandomStream& rng) {
  switch (fidelity) {
    case Fidelity::symbol_level: {
      // noise_free_power = |g|^2 with g the total source->reader gain; each
      // ambient symbol contributes |g s + w|^2.
      double acc = 0.0;
      const double gain = std::sqrt(noise_free_power);
      for (long i = 0; i < n; ++i) {
        const std::complex<double> s = rng.next_cnormal(ambient_power);
        const std::complex<double> w = rng.next_cnormal(noise_power);
        acc += std::norm(gain * s + w);
      }
      return acc / double(n);
    }
    case Fidelity::chi_square:
      // Average of n unit-mean exponentials scaled by the mean: gamma with
      // integer shape n. Exact law of the symbol_level average.
      return rng.next_gamma(double(n), mean / double(n));
    case Fidelity::gaussian:
      return mean * (1.0 + rng.next_normal() / std::sqrt(double(n)));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::vector<double> true_bias(const SystemParams& params,
                              const ChannelRealization& ch) {
  std::vector<double> bias(ch.reader_antennas);
  for (int q = 0; q < ch.reader_antennas; ++q) {
    bias[q] =
        params.ambient_power * std::norm(ch.source_reader[q]) + params.noise_power;
  }
  return bias;
}

ReaderObservation observe_block(const SystemParams& params,
                                const ChannelRealization& ch,
                                const RealMat& block, Fidelity fidelity,
                                RandomStream& rng) {
  params.validate();
  if (block.rows != ch.tag_antennas) {
    throw std::invalid_argument("block row count must match tag antennas");
  }
  for (double v : block.data) {
    if (std::abs(v) > 1.0) {
      throw std::invalid_argument(
          "transmit amplitude exceeds 1; a passive tag cannot amplify");
    }
  }

  ReaderObservation obs;
  obs.fidelity = fidelity;
  obs.averaging_length = params.averaging_length;
  obs.bias_true = true_bias(params, ch);
  obs.bias_used = obs.bias_true;
  obs.averaged_power.assign(ch.reader_antennas, block.cols);

  std::vector<double> column(block.rows);
  for (int q = 0; q < ch.reader_antennas; ++q) {
    for (int j = 0; j < block.cols; ++j) {
      for (int m = 0; m < block.rows; ++m) column[m] = block(m, j);
      const std::complex<double> total =
          ch.source_reader[q] + backscatter_path(params, ch, q, column.data());
      const double noise_free_power = std::norm(total);
      const double mean =
          params.ambient_power * noise_free_power + params.noise_power;
      obs.averaged_power(q, j) = draw_averaged_power(
          mean, noise_free_power, params.ambient_power, params.noise_power,
          params.averaging_length, fidelity, rng);
    }
  }
  return obs;
}

std::vector<double> estimate_bias(const SystemParams& params,
                                  const ChannelRealization& ch,
                                  Fidelity fidelity, long pilot_length,
                                  RandomStream& rng) {
  if (pilot_length < 1)
    throw std::invalid_argument("pilot_length must be >= 1");
  const std::vector<double> bias = true_bias(params, ch);
  std::vector<double> est(bias.size());
  for (std::size_t q = 0; q < bias.size(); ++q) {
    const double noise_free_power = std::norm(ch.source_reader[q]);
    est[q] = draw_averaged_power(bias[q], noise_free_power,
                                 params.ambient_power, params.noise_power,
                                 pilot_length, fidelity, rng);
  }
  return est;
}

NormalizedObservation linearize_normalize(const ReaderObservation& obs) {
  const int q_count = obs.averaged_power.rows;
  if (int(obs.bias_used.size()) != q_count) {
    throw std::invalid_argument("bias vector does not match antenna count");
  }
  NormalizedObservation out;
  out.values.assign(q_count, obs.averaged_power.cols);
  const double root_n = std::sqrt(double(obs.averaging_length));
  for (int q = 0; q < q_count; ++q) {
    const double bias = obs.bias_used[q];
    if (!(bias > 0.0)) {
      throw std::invalid_argument("bias must be positive to normalize");
    }
    for (int j = 0; j < obs.averaged_power.cols; ++j) {
      out.values(q, j) = root_n * (obs.averaged_power(q, j) - bias) / bias;
    }
  }
  return out;
}

LinearizationErrorEstimate linearization_error(const SystemParams& params,
                                               long samples,
                                               RandomStream& rng) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  // Per-antenna quantity; sample a single-reader-antenna link with the
  // all-ones transmit vector (every tag element reflecting +1).
  SystemParams single = params;
  single.reader_antennas = 1;
  const std::vector<double> ones(std::size_t(params.tag_antennas), 1.0);

  double num_sum = 0.0, den_sum = 0.0;
  double num_sq = 0.0, den_sq = 0.0, cross = 0.0;
  for (long i = 0; i < samples; ++i) {
    const ChannelRealization ch = sample_channel(single, rng);
    const std::complex<double> path = backscatter_path(single, ch, 0, ones.data());
    const double quad = params.ambient_power * std::norm(path);
    const double lin =
        2.0 * params.ambient_power *
        std::real(std::conj(ch.source_reader[0]) * path);
    const double num = quad;
    const double den = std::abs(lin + quad);
    num_sum += num;
    den_sum += den;
    num_sq += num * num;
    den_sq += den * den;
    cross += num * den;
  }
  const double n = double(samples);
  const double num_mean = num_sum / n;
  const double den_mean = den_sum / n;
  LinearizationErrorEstimate est;
  est.samples = samples;
  est.value = num_mean / den_mean;
  // Delta method for the ratio of means.
  const double var_num = num_sq / n - num_mean * num_mean;
  const double var_den = den_sq / n - den_mean * den_mean;
  const double cov = cross / n - num_mean * den_mean;
  const double rel_var = var_num / (num_mean * num_mean) +
                         var_den / (den_mean * den_mean) -
                         2.0 * cov / (num_mean * den_mean);
  est.ci95 = 1.96 * est.value * std::sqrt(std::max(rel_var, 0.0) / n);
  return est;
}

}  // namespace ambc
