#include "ambc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ambc {

ChannelRealization sample_channel(const SystemParams& params,
                                  RandomStream& rng) {
  params.validate();
  const int m_count = params.tag_antennas;
  const int q_count = params.reader_antennas;

  ChannelRealization ch;
  ch.tag_antennas = m_count;
  ch.reader_antennas = q_count;
  ch.source_reader.resize(q_count);
  ch.source_tag.resize(m_count);
  ch.tag_reader.resize(std::size_t(q_count) * m_count);

  for (int q = 0; q < q_count; ++q) ch.source_reader[q] = rng.next_cnormal(1.0);
  for (int m = 0; m < m_count; ++m) ch.source_tag[m] = rng.next_cnormal(1.0);
  for (auto& h : ch.tag_reader) h = rng.next_cnormal(1.0);
  return ch;
}

std::complex<double> backscatter_path(const SystemParams& params,
                                      const ChannelRealization& ch, int q,
                                      const double* x) {
  std::complex<double> acc{0.0, 0.0};
  for (int m = 0; m < ch.tag_antennas; ++m) {
    acc += ch.tag_reader_at(q, m) * ch.source_tag[m] * x[m];
  }
  return params.tag_loss * params.tag_reader_gain * acc;
}

EffectiveChannel effective_channel(const SystemParams& params,
                                   const ChannelRealization& ch) {
  const double snr = params.direct_snr();
  const double scale = 2.0 * params.tag_loss * params.tag_reader_gain *
                       std::sqrt(double(params.averaging_length)) * snr;

  EffectiveChannel eff;
  eff.gains.assign(ch.reader_antennas, ch.tag_antennas);
  for (int q = 0; q < ch.reader_antennas; ++q) {
    const std::complex<double> direct = ch.source_reader[q];
    const double denom = snr * std::norm(direct) + 1.0;
    for (int m = 0; m < ch.tag_antennas; ++m) {
      const std::complex<double> path =
          ch.tag_reader_at(q, m) * ch.source_tag[m];
      eff.gains(q, m) = scale * std::real(std::conj(direct) * path) / denom;
    }
  }
  return eff;
}

GainPowerEstimate estimate_gain_power(const SystemParams& params, long samples,
                                      RandomStream& rng) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  const double snr = params.direct_snr();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long i = 0; i < samples; ++i) {
    const std::complex<double> direct = rng.next_cnormal(1.0);
    const std::complex<double> hop1 = rng.next_cnormal(1.0);
    const std::complex<double> hop2 = rng.next_cnormal(1.0);
    const double g = snr * std::real(std::conj(direct) * hop1 * hop2) /
                     (snr * std::norm(direct) + 1.0);
    sum += g * g;
    sum_sq += g * g * g * g;
  }
  GainPowerEstimate est;
  est.samples = samples;
  est.value = sum / double(samples);
  const double var =
      (sum_sq / double(samples) - est.value * est.value) * double(samples) /
      double(samples - 1);
  est.ci95 = 1.96 * std::sqrt(var / double(samples));
  return est;
}

ReceiveSnr receive_snr(const SystemParams& params, double gain_power) {
  ReceiveSnr out;
  out.per_branch = 4.0 * double(params.averaging_length) * gain_power /
                   params.power_deficit();
  out.combined = double(params.tag_antennas) * out.per_branch;
  return out;
}

AveragingLengthChoice averaging_length_for_target(const SystemParams& params,
                                                  double gain_power,
                                                  double target_snr_linear) {
  if (!(gain_power > 0.0))
    throw std::invalid_argument("gain_power must be positive");
  if (!(target_snr_linear > 0.0))
    throw std::invalid_argument("target SNR must be positive");
  const double raw =
      target_snr_linear * params.power_deficit() / (4.0 * gain_power);
  AveragingLengthChoice choice;
  choice.length = std::lround(raw);
  if (choice.length < 1) choice.length = 1;
  choice.below_gaussian_regime = choice.length < 30;
  return choice;
}

}  // namespace ambc
