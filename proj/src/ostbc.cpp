#include "ambc/ostbc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambc {

namespace {

// Cayley-Dickson product on coordinate vectors of length n in {1,2,4,8}:
// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)), conj negates all but the
// first coordinate. Integer arithmetic throughout, so the tables are exact.
void cd_conj(int n, const int* x, int* out) {
  out[0] = x[0];
  for (int i = 1; i < n; ++i) out[i] = -x[i];
}

void cd_mul(int n, const int* a, const int* b, int* out) {
  if (n == 1) {
    out[0] = a[0] * b[0];
    return;
  }
  const int h = n / 2;
  std::vector<int> t1(h), t2(h), t3(h), t4(h), cj(h);
  // left half: a1*b1 - conj(b2)*a2
  cd_mul(h, a, b, t1.data());
  cd_conj(h, b + h, cj.data());
  cd_mul(h, cj.data(), a + h, t2.data());
  // right half: b2*a1 + a2*conj(b1)
  cd_mul(h, b + h, a, t3.data());
  cd_conj(h, b, cj.data());
  cd_mul(h, a + h, cj.data(), t4.data());
  for (int i = 0; i < h; ++i) {
    out[i] = t1[i] - t2[i];
    out[i + h] = t3[i] + t4[i];
  }
}

}  // namespace

OrthogonalDesign::OrthogonalDesign(int order)
    : order_(order),
      symbol_(std::size_t(order) * order, -1),
      sign_(std::size_t(order) * order, 0.0) {
  // Column j of the block is u * e_j (basis element j). The product of two
  // basis elements is +/- another basis element, so each slot carries exactly
  // one symbol.
  std::vector<int> ek(order), ej(order), prod(order);
  for (int k = 0; k < order; ++k) {
    std::fill(ek.begin(), ek.end(), 0);
    ek[k] = 1;
    for (int j = 0; j < order; ++j) {
      std::fill(ej.begin(), ej.end(), 0);
      ej[j] = 1;
      cd_mul(order, ek.data(), ej.data(), prod.data());
      int hits = 0;
      for (int m = 0; m < order; ++m) {
        if (prod[m] != 0) {
          symbol_[std::size_t(m) * order + j] = k;
          sign_[std::size_t(m) * order + j] = double(prod[m]);
          ++hits;
        }
      }
      if (hits != 1) throw std::logic_error("basis product not monomial");
    }
  }
}

const OrthogonalDesign& OrthogonalDesign::of_order(int order) {
  static const OrthogonalDesign d1(1), d2(2), d4(4), d8(8);
  switch (order) {
    case 1:
      return d1;
    case 2:
      return d2;
    case 4:
      return d4;
    case 8:
      return d8;
    default:
      throw std::invalid_argument(
          "full-rate real orthogonal designs exist only for 1, 2, 4 or 8 "
          "antennas; got " +
          std::to_string(order));
  }
}

void OrthogonalDesign::encode(const double* symbols, RealMat& block) const {
  block.assign(order_, order_);
  for (std::size_t i = 0; i < symbol_.size(); ++i) {
    block.data[i] = sign_[i] * symbols[symbol_[i]];
  }
}

RealMat encode_coherent_block(const std::vector<double>& symbols) {
  const OrthogonalDesign& design = OrthogonalDesign::of_order(int(symbols.size()));
  for (double u : symbols) {
    if (std::abs(u) > 1.0) {
      throw std::invalid_argument(
          "symbol amplitude exceeds 1; a passive tag cannot amplify");
    }
  }
  RealMat block;
  design.encode(symbols.data(), block);
  return block;
}

std::array<double, 2> diff_map(int bit1, int bit2) {
  if ((bit1 & ~1) || (bit2 & ~1)) throw std::invalid_argument("bits must be 0/1");
  static constexpr std::array<std::array<double, 2>, 4> table{{
      {1.0, 0.0},   // 00
      {0.0, -1.0},  // 01
      {0.0, 1.0},   // 10
      {-1.0, 0.0},  // 11
  }};
  return table[bit1 * 2 + bit2];
}

std::pair<int, int> diff_unmap(const std::array<double, 2>& coeff) {
  if (coeff[0] == 1.0 && coeff[1] == 0.0) return {0, 0};
  if (coeff[0] == 0.0 && coeff[1] == -1.0) return {0, 1};
  if (coeff[0] == 0.0 && coeff[1] == 1.0) return {1, 0};
  if (coeff[0] == -1.0 && coeff[1] == 0.0) return {1, 1};
  throw std::invalid_argument("not a differential coefficient pair");
}

DiffStep diff_next_block(const DiffState& state, int bit1, int bit2) {
  const std::array<double, 2> coeff = diff_map(bit1, bit2);
  // New pair = c1 * (prev) + c2 * (rotated prev); the rotation is the same
  // skew map that builds the second column of the order-2 block, so the new
  // pair is again antipodal.
  DiffStep step;
  step.next.pair[0] = coeff[0] * state.pair[0] - coeff[1] * state.pair[1];
  step.next.pair[1] = coeff[0] * state.pair[1] + coeff[1] * state.pair[0];
  std::vector<double> symbols(step.next.pair.begin(), step.next.pair.end());
  step.block = encode_coherent_block(symbols);
  return step;
}

std::vector<RealMat> encode_diff_stream(const std::vector<int>& bits,
                                        const DiffState& init) {
  if (bits.size() % 2 != 0)
    throw std::invalid_argument("differential stream needs an even bit count");
  std::vector<RealMat> blocks;
  blocks.reserve(bits.size() / 2 + 1);
  std::vector<double> symbols(init.pair.begin(), init.pair.end());
  blocks.push_back(encode_coherent_block(symbols));
  DiffState state = init;
  for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
    DiffStep step = diff_next_block(state, bits[i], bits[i + 1]);
    blocks.push_back(std::move(step.block));
    state = step.next;
  }
  return blocks;
}

}  // namespace ambc
