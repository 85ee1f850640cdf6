#pragma once
#include <cmath>
#include <stdexcept>
#include <string>

namespace ambc {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
// Amplitude quantities (field gains) use 20 dB per decade.
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

// Static description of one link: antenna counts, averaging length, and the
// power/gain constants that fix the two SNR axes (direct-link SNR P_s/noise,
// and the backscatter power deficit 1/(loss*fading)^2).
struct SystemParams {
  int tag_antennas = 1;       // transmit elements on the backscatter tag
  int reader_antennas = 1;    // receive elements on the reader
  long averaging_length = 1;  // ambient symbols averaged per tag period
  double ambient_power = 1.0;
  double noise_power = 1.0;
  double tag_loss = 1.0;          // scattering amplitude factor, in (0, 1]
  double tag_reader_gain = 1.0;   // average tag->reader channel amplitude

  double direct_snr() const { return ambient_power / noise_power; }
  double direct_snr_db() const { return linear_to_db(direct_snr()); }
  double power_deficit() const {
    const double a = tag_loss * tag_reader_gain;
    return 1.0 / (a * a);
  }
  double power_deficit_db() const { return linear_to_db(power_deficit()); }

  void validate() const {
    if (tag_antennas < 1) throw std::invalid_argument("tag_antennas must be >= 1");
    if (reader_antennas < 1)
      throw std::invalid_argument("reader_antennas must be >= 1");
    if (averaging_length < 1)
      throw std::invalid_argument("averaging_length must be >= 1");
    if (!(ambient_power > 0.0))
      throw std::invalid_argument("ambient_power must be positive");
    if (!(noise_power > 0.0))
      throw std::invalid_argument("noise_power must be positive");
    if (!(tag_loss > 0.0) || tag_loss > 1.0)
      throw std::invalid_argument("tag_loss must be in (0, 1]");
    if (!(tag_reader_gain > 0.0))
      throw std::invalid_argument("tag_reader_gain must be positive");
  }
};

// Standard construction used throughout: noise power normalized to 1, ambient
// power set from the direct-link SNR, and the tag->reader gain chosen so the
// deficit Delta comes out exactly at the requested dB value given the loss.
inline SystemParams make_params(int tag_antennas, int reader_antennas,
                                long averaging_length, double direct_snr_db,
                                double power_deficit_db,
                                double tag_loss_db = -1.1) {
  SystemParams p;
  p.tag_antennas = tag_antennas;
  p.reader_antennas = reader_antennas;
  p.averaging_length = averaging_length;
  p.noise_power = 1.0;
  p.ambient_power = db_to_linear(direct_snr_db);
  p.tag_loss = db_to_amplitude(tag_loss_db);
  p.tag_reader_gain =
      1.0 / (p.tag_loss * std::sqrt(db_to_linear(power_deficit_db)));
  p.validate();
  return p;
}

}  // namespace ambc
