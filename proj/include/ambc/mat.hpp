#pragma once
#include <cassert>
#include <cstddef>
#include <vector>

namespace ambc {

// Minimal dense real matrix, row-major. Dimensions here are tiny (antenna
// counts and block lengths), so this deliberately stays a flat buffer with
// bounds asserts instead of pulling in a linear algebra dependency.
struct RealMat {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  RealMat() = default;
  RealMat(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0.0) {}

  double& operator()(int r, int c) {
    assert(r >= 0 && r < rows && c >= 0 && c < cols);
    return data[std::size_t(r) * cols + c];
  }
  double operator()(int r, int c) const {
    assert(r >= 0 && r < rows && c >= 0 && c < cols);
    return data[std::size_t(r) * cols + c];
  }

  void assign(int r, int c) {
    rows = r;
    cols = c;
    data.assign(std::size_t(r) * c, 0.0);
  }

  bool same_shape(const RealMat& other) const {
    return rows == other.rows && cols == other.cols;
  }
};

}  // namespace ambc
