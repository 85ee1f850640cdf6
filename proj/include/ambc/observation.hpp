#pragma once
#include <vector>

#include "ambc/channel.hpp"
#include "ambc/mat.hpp"
#include "ambc/params.hpp"
#include "ambc/rng.hpp"

namespace ambc {

// How the averaged received power is generated.
//  symbol_level: sum |g s + w|^2 over the full averaging window, O(N) draws.
//  chi_square:   one draw from the exact law of that average (scaled
//                chi-square with 2N degrees of freedom, i.e. a gamma).
//  gaussian:     large-window limit, mean * (1 + z/sqrt(N)).
enum class Fidelity { symbol_level, chi_square, gaussian };

// Averaged received power for one code block: entry (q, j) is the power at
// reader antenna q during period j, plus the bias bookkeeping needed later.
// bias_true is the exact tag-silent level per antenna; bias_used is what
// normalization will subtract and divide by (defaults to the true value,
// replaced by a pilot estimate when bias estimation is simulated).
struct ReaderObservation {
  RealMat averaged_power;  // reader_antennas x periods
  Fidelity fidelity = Fidelity::chi_square;
  long averaging_length = 1;
  std::vector<double> bias_true;
  std::vector<double> bias_used;
};

// Tag-silent received power level per reader antenna.
std::vector<double> true_bias(const SystemParams& params,
                              const ChannelRealization& ch);

// Simulate reception of one transmit block. Draw order is row-major over
// (antenna, period). Rejects blocks whose entries exceed unit amplitude.
ReaderObservation observe_block(const SystemParams& params,
                                const ChannelRealization& ch,
                                const RealMat& block, Fidelity fidelity,
                                RandomStream& rng);

// Pilot bias estimate: the tag stays silent while the reader averages
// pilot_length ambient symbols per antenna.
std::vector<double> estimate_bias(const SystemParams& params,
                                  const ChannelRealization& ch,
                                  Fidelity fidelity, long pilot_length,
                                  RandomStream& rng);

// Bias-removed, noise-normalized observation: value (q, j) is
// sqrt(N) * (power(q, j) - bias_used[q]) / bias_used[q], which behaves as
// effective_gains * x + unit-variance noise for large N.
struct NormalizedObservation {
  RealMat values;
};

NormalizedObservation linearize_normalize(const ReaderObservation& obs);

// Relative weight of the quadratic backscatter term that linearization
// drops, averaged over channels with the all-ones transmit vector:
// E[quadratic] / E[|linear + quadratic|]. Monte Carlo ratio estimate with a
// delta-method 95% half-width.
struct LinearizationErrorEstimate {
  double value = 0.0;
  double ci95 = 0.0;
  long samples = 0;
};

LinearizationErrorEstimate linearization_error(const SystemParams& params,
                                               long samples,
                                               RandomStream& rng);

}  // namespace ambc
