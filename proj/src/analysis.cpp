#include "ambc/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace ambc {

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double conditional_ber(const EffectiveChannel& eff) {
  return q_function(std::sqrt(eff.frobenius_sq()));
}

double conditional_ber(const SystemParams& params,
                       const ChannelRealization& ch) {
  return conditional_ber(effective_channel(params, ch));
}

BerEstimate theoretical_ber(const SystemParams& params, long channel_draws,
                            RandomStream& rng) {
  if (channel_draws < 2) throw std::invalid_argument("need at least 2 draws");
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < channel_draws; ++i) {
    const ChannelRealization ch = sample_channel(params, rng);
    const double p = conditional_ber(params, ch);
    sum += p;
    sum_sq += p * p;
  }
  BerEstimate est;
  est.samples = channel_draws;
  est.value = sum / double(channel_draws);
  const double var = (sum_sq / double(channel_draws) - est.value * est.value) *
                     double(channel_draws) / double(channel_draws - 1);
  est.ci95 = 1.96 * std::sqrt(var / double(channel_draws));
  return est;
}

double friis_path_loss_db(double frequency_hz, double distance_m) {
  if (!(frequency_hz > 0.0))
    throw std::invalid_argument("frequency must be positive");
  if (!(distance_m > 0.0))
    throw std::invalid_argument("distance must be positive");
  constexpr double speed_of_light = 299792458.0;
  const double wavelength = speed_of_light / frequency_hz;
  return 20.0 * std::log10(wavelength / (4.0 * M_PI * distance_m));
}

}  // namespace ambc
