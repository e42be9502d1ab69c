#pragma once

#include "momentkit/poly.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace momentkit {

/// Element c_0 + c_1 t + ... + c_N t^N of A[t]/t^{N+1}, A a polynomial ring.
///
/// The order N is part of the value: arithmetic between different orders is
/// a ShapeError. Moving between orders is always explicit (truncate / lift).
class TPoly {
public:
  TPoly(RingPtr ring, unsigned order);
  TPoly(Poly c0, unsigned order);

  static TPoly constant(RingPtr ring, unsigned order, const Rat &c);
  static TPoly generator(RingPtr ring, unsigned order, std::size_t index);
  /// t^k (zero when k > order).
  static TPoly t_power(RingPtr ring, unsigned order, unsigned k);
  static TPoly from_coefficients(std::vector<Poly> coeffs);

  const RingPtr &ring() const noexcept { return ring_; }
  unsigned order() const noexcept { return order_; }
  const Poly &coeff(unsigned k) const { return coeffs_.at(k); }
  const std::vector<Poly> &coefficients() const noexcept { return coeffs_; }

  bool is_zero() const noexcept;
  /// True when the element is a t-free constant.
  bool is_constant() const noexcept;
  /// Lowest k with c_k != 0.
  std::optional<unsigned> valuation() const;

  /// Reduce modulo t^{order+1}; order must not exceed the current one.
  TPoly truncate(unsigned order) const;
  /// Canonical lift to a higher order (new coefficients are zero).
  TPoly lift(unsigned order) const;

  /// Multiply by t^k, dropping terms past the order.
  TPoly shift(unsigned k) const;

  TPoly partial(std::size_t index) const;
  /// d/dt, landing in order N-1 (order 0 stays at order 0).
  TPoly t_derivative() const;

  Rat evaluate(std::span<const Rat> values, const Rat &t) const;

  TPoly &operator+=(const TPoly &o);
  TPoly &operator-=(const TPoly &o);
  TPoly &operator*=(const Rat &c);

  friend TPoly operator+(TPoly a, const TPoly &b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly &b) { return a -= b; }
  friend TPoly operator*(const TPoly &a, const TPoly &b);
  friend TPoly operator*(TPoly a, const Rat &c) { return a *= c; }
  friend TPoly operator*(const Rat &c, TPoly a) { return a *= c; }
  TPoly operator-() const;

  friend bool operator==(const TPoly &a, const TPoly &b);

  /// Terms by ascending power of t, each coefficient in grlex-descending
  /// order, e.g. `y - t*x + 1/2*t^2*x^2`.
  std::string to_string() const;

private:
  void require_compatible(const TPoly &o) const;

  RingPtr ring_;
  unsigned order_;
  std::vector<Poly> coeffs_;
};

TPoly pow(const TPoly &base, unsigned exponent);

/// Simultaneous substitution x_i -> assignment[i], truncated at the common
/// order. assignment must have one entry per generator of f's ring; all
/// entries share a ring and have f's order.
TPoly substitute(const TPoly &f, std::span<const TPoly> assignment);

/// True for c(1 + t q) with c a nonzero rational.
bool is_unit(const TPoly &u);

/// Inverse in A[t]/t^{N+1} by the geometric-series recursion on t-order.
/// Throws PreconditionError for non-units.
TPoly invert_unit(const TPoly &u);

} // namespace momentkit
