#pragma once
#include <complex>
#include <vector>

#include "ambc/mat.hpp"
#include "ambc/params.hpp"
#include "ambc/rng.hpp"

namespace ambc {

// One quasi-static draw of the three links: ambient source to reader,
// ambient source to tag, tag to reader. All entries i.i.d. unit-variance
// circular complex Gaussians; the deterministic loss/gain constants live in
// SystemParams and are applied where the links are combined.
struct ChannelRealization {
  int tag_antennas = 0;
  int reader_antennas = 0;
  std::vector<std::complex<double>> source_reader;  // per reader antenna
  std::vector<std::complex<double>> source_tag;     // per tag antenna
  std::vector<std::complex<double>> tag_reader;     // row-major [reader][tag]

  std::complex<double> tag_reader_at(int q, int m) const {
    return tag_reader[std::size_t(q) * tag_antennas + m];
  }
};

// Draw order is fixed (source_reader, source_tag, tag_reader row-major) and
// is part of the reproducibility contract.
ChannelRealization sample_channel(const SystemParams& params,
                                  RandomStream& rng);

// Backscatter path seen at reader antenna q when the tag drives amplitude
// x_m on element m: loss * gain * sum_m tag_reader[q][m] * source_tag[m] * x_m.
std::complex<double> backscatter_path(const SystemParams& params,
                                      const ChannelRealization& ch, int q,
                                      const double* x);

// Real-valued equivalent channel after power averaging, bias removal and
// normalization: one gain per (reader antenna, tag antenna) pair. A reader
// observation column is gains * x + unit-variance noise in the averaged and
// normalized domain.
struct EffectiveChannel {
  RealMat gains;  // reader_antennas x tag_antennas

  double frobenius_sq() const {
    double s = 0.0;
    for (double g : gains.data) s += g * g;
    return s;
  }
};

EffectiveChannel effective_channel(const SystemParams& params,
                                   const ChannelRealization& ch);

// Second moment of the normalized single-branch gain (unit scaling factored
// out): the constant that maps averaging length and power deficit to the
// post-processing receive SNR. No closed form for Rayleigh links, so it is
// estimated by Monte Carlo with a reported 95% half-width.
struct GainPowerEstimate {
  double value = 0.0;
  double ci95 = 0.0;
  long samples = 0;
};

GainPowerEstimate estimate_gain_power(const SystemParams& params, long samples,
                                      RandomStream& rng);

// Post-processing SNR: per receive branch and after combining all branches
// (one independent copy per tag antenna thanks to the orthogonal code).
struct ReceiveSnr {
  double per_branch = 0.0;  // linear
  double combined = 0.0;    // linear
};

ReceiveSnr receive_snr(const SystemParams& params, double gain_power);

// Smallest averaging length hitting a target per-branch receive SNR.
// below_gaussian_regime flags lengths too short for the Gaussian limit of the
// averaged power to be trustworthy.
struct AveragingLengthChoice {
  long length = 1;
  bool below_gaussian_regime = false;
};

AveragingLengthChoice averaging_length_for_target(const SystemParams& params,
                                                  double gain_power,
                                                  double target_snr_linear);

}  // namespace ambc
