#pragma once

#include "momentkit/rational.hpp"

#include <cstddef>
#include <vector>

namespace momentkit {

/// Dense row-major matrix of rationals. Only what rank/Pfaffian need.
class RatMatrix {
public:
  RatMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rat &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_skew_symmetric() const;

private:
  std::size_t rows_, cols_;
  std::vector<Rat> data_;
};

/// Rank by fraction-free (Bareiss) elimination. Each row is first scaled by
/// the lcm of its denominators, so elimination runs on integers with exact
/// divisions.
std::size_t rank(const RatMatrix &m);

/// Pfaffian of a skew-symmetric matrix by 2x2-block Schur elimination.
/// Odd dimension gives 0.
Rat pfaffian(const RatMatrix &m);

} // namespace momentkit
