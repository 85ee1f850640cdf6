#pragma once
#include "ambc/channel.hpp"
#include "ambc/params.hpp"
#include "ambc/rng.hpp"

namespace ambc {

// Gaussian tail probability P(Z > x).
double q_function(double x);

// Bit error probability of the linear detector conditioned on one channel
// draw: Q of the Frobenius norm of the effective gains (the combined
// post-projection amplitude against unit noise).
double conditional_ber(const EffectiveChannel& eff);
double conditional_ber(const SystemParams& params,
                       const ChannelRealization& ch);

// Channel-averaged bit error probability, Monte Carlo over channel draws
// with a 95% half-width on the mean.
struct BerEstimate {
  double value = 0.0;
  double ci95 = 0.0;
  long samples = 0;
};

BerEstimate theoretical_ber(const SystemParams& params, long channel_draws,
                            RandomStream& rng);

// Free-space amplitude gain in dB (negative) for isotropic antennas:
// 20*log10(wavelength / (4*pi*distance)), path-loss exponent 2.
double friis_path_loss_db(double frequency_hz, double distance_m);

}  // namespace ambc
