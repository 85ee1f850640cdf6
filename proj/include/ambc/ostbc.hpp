#pragma once
#include <array>
#include <utility>
#include <vector>

#include "ambc/mat.hpp"

namespace ambc {

// Full-rate real orthogonal space-time block design. A block X carries
// `order` antipodal symbols over `order` periods (columns are per-period
// transmit vectors, rows are antennas) and satisfies X^T X = (sum_k u_k^2) I
// exactly. Such square real designs exist only for orders 1, 2, 4 and 8; the
// tables here come from left-multiplication in the real composition algebras
// (reals, complex numbers, quaternions, octonions), where that identity is
// the norm-product law. Every (antenna, period) slot carries exactly one
// symbol with sign +/-1, so unit symbols keep every entry at unit amplitude.
class OrthogonalDesign {
 public:
  // Throws std::invalid_argument for unsupported orders.
  static const OrthogonalDesign& of_order(int order);

  int order() const { return order_; }

  // X(m,j) = sign[m][j] * u[symbol[m][j]]
  int symbol_at(int antenna, int period) const {
    return symbol_[std::size_t(antenna) * order_ + period];
  }
  double sign_at(int antenna, int period) const {
    return sign_[std::size_t(antenna) * order_ + period];
  }

  void encode(const double* symbols, RealMat& block) const;

 private:
  explicit OrthogonalDesign(int order);
  int order_;
  std::vector<int> symbol_;
  std::vector<double> sign_;
};

// Encode one coherent block; symbols must be antipodal-normalized (|u| <= 1
// is enforced, the tag cannot amplify).
RealMat encode_coherent_block(const std::vector<double>& symbols);

// Differential layer (order 2 only). State is the previously transmitted
// symbol pair; each bit pair selects one of four rotation coefficients
// (exactly one of the two is nonzero), so antipodal pairs stay antipodal.
struct DiffState {
  std::array<double, 2> pair{1.0, 1.0};
};

// (bit1, bit2) -> rotation coefficients:
// (0,0)->(1,0)  (0,1)->(0,-1)  (1,0)->(0,1)  (1,1)->(-1,0)
std::array<double, 2> diff_map(int bit1, int bit2);
std::pair<int, int> diff_unmap(const std::array<double, 2>& coeff);

// Advance the differential recursion by one block.
struct DiffStep {
  RealMat block;
  DiffState next;
};
DiffStep diff_next_block(const DiffState& state, int bit1, int bit2);

// Reference block from the initial state followed by one block per bit pair;
// bits.size() must be even, output has bits.size()/2 + 1 blocks.
std::vector<RealMat> encode_diff_stream(const std::vector<int>& bits,
                                        const DiffState& init = DiffState{});

}  // namespace ambc
