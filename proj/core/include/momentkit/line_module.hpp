#pragma once

#include "momentkit/derivation.hpp"
#include "momentkit/poisson.hpp"
#include "momentkit/report.hpp"
#include "momentkit/tpoly.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace momentkit {

/// Rank-1 Poisson module L over a structure at order N >= 1, presented in
/// a global trivialization e:
///
///   {a, e} = alpha(a) e,   alpha(x_i) in A[t]/t^N,   alpha(t) = 1.
///
/// alpha is a derivation of order N -> N-1; its t-value is fixed to 1, which
/// is the statement that H_t acts on L as the identity.
class LineData {
public:
  /// alpha[i] must have order base.order() - 1.
  LineData(PoissonStructure base, std::vector<TPoly> alpha);

  /// alpha = 0 on all generators.
  static LineData zero(PoissonStructure base);

  const PoissonStructure &base() const noexcept { return base_; }
  const RingPtr &ring() const noexcept { return base_.ring(); }
  /// Order N of the functions.
  unsigned order() const noexcept { return base_.order(); }
  /// Order N-1 of sections of L.
  unsigned module_order() const noexcept { return base_.order() - 1; }

  const TPoly &alpha(std::size_t i) const { return alpha_.at(i); }
  const std::vector<TPoly> &alpha_values() const noexcept { return alpha_; }

  /// alpha as a derivation A_N -> A_{N-1} with alpha(t) = 1.
  const Derivation &alpha_derivation() const noexcept { return alpha_der_; }
  TPoly alpha_of(const TPoly &f) const { return alpha_der_.apply(f); }

  friend bool operator==(const LineData &a, const LineData &b)
  {
    return a.base_ == b.base_ && a.alpha_ == b.alpha_;
  }

private:
  PoissonStructure base_;
  std::vector<TPoly> alpha_;
  Derivation alpha_der_;
};

/// H_{x_i}(alpha(x_j)) - H_{x_j}(alpha(x_i)) - alpha({x_i, x_j}) = 0 on all
/// generator pairs, computed at order N-1. Pairs involving t reduce to
/// H_{x_i}(1) = 0 and hold automatically.
Report verify_cocycle(const LineData &l);

/// Coefficient of e in {a, m e}: H_a(m) + m alpha(a).
/// a at order N, m at order N-1.
TPoly module_bracket(const LineData &l, const TPoly &a, const TPoly &m);

/// Finite Laurent sum sum_p f_p s^p, f_p in A[t]/t^{N+1}.
class TotElement {
public:
  using TermMap = std::map<int, TPoly, std::greater<int>>;

  TotElement(RingPtr ring, unsigned order);

  static TotElement homogeneous(TPoly coeff, int degree);
  /// t^0 s^0 coefficient t (the moment parameter).
  static TotElement t(RingPtr ring, unsigned order);
  static TotElement s_power(RingPtr ring, unsigned order, int degree);

  const RingPtr &ring() const noexcept { return ring_; }
  unsigned order() const noexcept { return order_; }
  const TermMap &terms() const noexcept { return terms_; }
  /// Coefficient of s^p (zero if absent).
  TPoly coeff(int degree) const;

  bool is_zero() const noexcept { return terms_.empty(); }
  TotElement truncate(unsigned order) const;

  TotElement &operator+=(const TotElement &o);
  TotElement &operator-=(const TotElement &o);
  TotElement &operator*=(const Rat &c);

  friend TotElement operator+(TotElement a, const TotElement &b) { return a += b; }
  friend TotElement operator-(TotElement a, const TotElement &b) { return a -= b; }
  friend TotElement operator*(TotElement a, const Rat &c) { return a *= c; }
  friend TotElement operator*(const Rat &c, TotElement a) { return a *= c; }
  /// Graded product: (f s^p)(g s^q) = fg s^{p+q}.
  friend TotElement operator*(const TotElement &a, const TotElement &b);
  TotElement operator-() const;

  friend bool operator==(const TotElement &a, const TotElement &b);

  /// `f * s^p` terms, descending p; within a term the coefficient uses the
  /// TPoly rendering. Examples: `x*s^2`, `(x + y)*s^-1`, `s - t*x`.
  std::string to_string() const;

private:
  void add(int degree, const TPoly &c);

  RingPtr ring_;
  unsigned order_;
  TermMap terms_;
};

/// Largest |p| tot_bracket will produce. 16 unless MOMENTKIT_DEGREE_BOUND
/// is set to a positive integer.
int default_degree_bound();

/// Bracket on Tot(L), bilinear extension of
///
///   {f s^n, g s^m} = ({f,g} + m g alpha(f) - n f alpha(g)) s^{n+m}.
///
/// Coefficients are carried at the structure order N. alpha is only known
/// modulo t^N, so terms that pass through alpha are exact modulo t^N; the
/// degree-zero part of a bracket of degree-zero elements is exact at order N.
/// Throws Error when a degree of the result exceeds `degree_bound`.
TotElement tot_bracket(const LineData &l, const TotElement &u, const TotElement &v,
                       int degree_bound = default_degree_bound());

TotElement tot_jacobiator(const LineData &l, const TotElement &a, const TotElement &b,
                          const TotElement &c);

/// Jacobiator of tot_bracket on all triples from {x_i, s, s^-1, t},
/// compared modulo t^N (the precision of L).
Report verify_tot_jacobi(const LineData &l);

/// New trivialization u e: alpha'(a) = alpha(a) + u^-1 H_a(u).
/// u is a unit at order N-1.
LineData change_trivialization(const LineData &l, const TPoly &u);

/// f s^p -> f u^p s^p. Intertwines tot_bracket of change_trivialization(l, u)
/// with tot_bracket of l (modulo t^N). u at order N-1, lifted canonically.
TotElement rescale_sections(const TotElement &w, const TPoly &u);

} // namespace momentkit
