#include "momentkit/linalg.hpp"

#include "momentkit/errors.hpp"

#include <utility>

namespace momentkit {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0))
{
}

bool RatMatrix::is_skew_symmetric() const
{
  if (rows_ != cols_)
    return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if ((*this)(i, j) != -(*this)(j, i))
        return false;
  return true;
}

std::size_t rank(const RatMatrix &m)
{
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c)
      a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }

  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0)
      ++p;
    if (p == rows)
      continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class v = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

Rat pfaffian(const RatMatrix &m)
{
  if (!m.is_skew_symmetric())
    throw PreconditionError("pfaffian of a non-skew-symmetric matrix");
  const std::size_t n = m.rows();
  if (n % 2 == 1)
    return Rat(0);
  RatMatrix a = m;
  Rat pf(1);
  auto swap_index = [&](std::size_t x, std::size_t y) {
    for (std::size_t c = 0; c < n; ++c)
      std::swap(a(x, c), a(y, c));
    for (std::size_t r = 0; r < n; ++r)
      std::swap(a(r, x), a(r, y));
  };
  for (std::size_t k = 0; k < n; k += 2) {
    std::size_t p = k + 1;
    while (p < n && a(k, p) == 0)
      ++p;
    if (p == n)
      return Rat(0);
    if (p != k + 1) {
      swap_index(k + 1, p);
      pf = -pf;
    }
    const Rat pivot = a(k, k + 1);
    pf *= pivot;
    // Schur complement of the leading 2x2 block J = [[0,p],[-p,0]]:
    // C'_ij = C_ij + (A[k+1][i] A[k][j] - A[k][i] A[k+1][j]) / p
    for (std::size_t i = k + 2; i < n; ++i)
      for (std::size_t j = k + 2; j < n; ++j)
        a(i, j) += (a(k + 1, i) * a(k, j) - a(k, i) * a(k + 1, j)) / pivot;
  }
  return pf;
}

} // namespace momentkit
