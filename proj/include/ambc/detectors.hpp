#pragma once
#include <utility>
#include <vector>

#include "ambc/channel.hpp"
#include "ambc/mat.hpp"
#include "ambc/observation.hpp"
#include "ambc/ostbc.hpp"

namespace ambc {

// Per-antenna combining matrix for the orthogonal design: column k is the
// vector that projects a block observation onto symbol k. Satisfies
// L^T L = ||gains||^2 I, so projections decouple the symbols and keep the
// noise white.
RealMat build_decision_matrix(const std::vector<double>& gain_row);

// Symbol-by-symbol linear detector on the normalized observation: combine
// the per-antenna projections and take the sign (ties decide +1).
std::vector<double> detect_linear(const NormalizedObservation& obs,
                                  const EffectiveChannel& eff);

// Exhaustive nearest-codeword search on the normalized observation.
// Ties resolve to the lexicographically largest symbol vector, consistent
// with the +1 tie rule of the linear detector.
std::vector<double> detect_min_distance(const NormalizedObservation& obs,
                                        const EffectiveChannel& eff);

// Noise model for the exhaustive detector on the raw averaged powers.
//  exact:        per-hypothesis mean keeps the quadratic backscatter term and
//                the noise scale follows the hypothesis.
//  approximated: linearized mean and tag-silent noise scale; reduces to the
//                nearest-codeword rule on the normalized observation.
enum class NoiseModel { exact, approximated };

std::vector<double> detect_ml(const ReaderObservation& obs,
                              const SystemParams& params,
                              const ChannelRealization& ch, NoiseModel model);

// Differential detector over a four-period window (previous block followed
// by current block, order-2 design): correlates the two blocks, picks the
// rotation coefficient pair with the largest correlation score, and unmaps
// it to the bit pair. Needs no channel knowledge.
std::pair<int, int> detect_differential(const RealMat& window);

}  // namespace ambc
