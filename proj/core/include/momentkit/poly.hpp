#pragma once

#include "momentkit/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace momentkit {

/// Ordered list of generator names. Shared between all polynomials over it.
class Ring {
public:
  explicit Ring(std::vector<std::string> names);

  std::size_t arity() const noexcept { return names_.size(); }
  const std::string &name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string> &names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Ring &, const Ring &) = default;

private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
bool same_ring(const RingPtr &a, const RingPtr &b);
void require_same_ring(const RingPtr &a, const RingPtr &b);

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order, descending: higher total degree first, ties
/// broken lexicographically with earlier generators heavier. Maps keyed with
/// this comparator iterate in canonical rendering order.
struct GrlexGreater {
  bool operator()(const Exponents &a, const Exponents &b) const;
};

std::uint32_t total_degree(const Exponents &e);

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
class Poly {
public:
  using TermMap = std::map<Exponents, Rat, GrlexGreater>;

  explicit Poly(RingPtr ring);

  static Poly constant(RingPtr ring, const Rat &c);
  static Poly generator(RingPtr ring, std::size_t index);
  static Poly monomial(RingPtr ring, Exponents exps, const Rat &c);

  const RingPtr &ring() const noexcept { return ring_; }
  const TermMap &terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rat constant_term() const;
  std::uint32_t degree() const;

  /// Coefficient of the given monomial (zero if absent).
  Rat coefficient(const Exponents &e) const;

  Poly partial(std::size_t index) const;
  Rat evaluate(std::span<const Rat> values) const;

  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  Poly &operator*=(const Rat &c);

  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend Poly operator*(Poly a, const Rat &c) { return a *= c; }
  friend Poly operator*(const Rat &c, Poly a) { return a *= c; }
  Poly operator-() const;

  friend bool operator==(const Poly &a, const Poly &b);

  std::string to_string() const;

private:
  void add_term(const Exponents &e, const Rat &c);

  RingPtr ring_;
  TermMap terms_;
};

Poly pow(const Poly &base, unsigned exponent);

/// Renders one unsigned term: `coeff*factor*factor`, coefficient omitted
/// when it is 1. The sign is handled by append_signed.
std::string render_term_body(const Rat &abs_coeff, std::vector<std::string> factors);

/// Joins signed term bodies as `a + b - c`; the first term keeps a leading `-`.
void append_signed(std::string &out, bool negative, const std::string &body);

std::vector<std::string> monomial_factors(const Ring &ring, const Exponents &e);

} // namespace momentkit
