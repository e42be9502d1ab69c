#pragma once

#include "momentkit/derivation.hpp"
#include "momentkit/report.hpp"
#include "momentkit/tpoly.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace momentkit {

/// Bracket table {x_i, x_j} = B[i][j] on A[t]/t^{N+1}.
///
/// Only i < j is stored; B[j][i] = -B[i][j] and B[i][i] = 0 are structural.
/// t never appears as a bracket slot, so it is central by construction.
/// The Jacobi identity is not structural: see verify_jacobi.
class PoissonStructure {
public:
  using Entries = std::map<std::pair<std::size_t, std::size_t>, TPoly>;

  /// Zero bracket.
  PoissonStructure(RingPtr ring, unsigned order);
  /// Entries keyed by (i, j) with i != j; (j, i) keys are stored negated.
  /// Declaring both (i, j) and (j, i) is an error.
  PoissonStructure(RingPtr ring, unsigned order, const Entries &entries);

  const RingPtr &ring() const noexcept { return ring_; }
  unsigned order() const noexcept { return order_; }
  std::size_t arity() const noexcept { return ring_->arity(); }

  /// {x_i, x_j} with the antisymmetric mate and the zero diagonal derived.
  TPoly entry(std::size_t i, std::size_t j) const;

  PoissonStructure truncate(unsigned order) const;
  /// The t^0 part of the table as an order-0 structure.
  PoissonStructure reduction() const;
  /// Same table with every entry lifted canonically to `order`.
  PoissonStructure lift(unsigned order) const;

  friend bool operator==(const PoissonStructure &, const PoissonStructure &);

private:
  std::size_t slot(std::size_t i, std::size_t j) const;

  RingPtr ring_;
  unsigned order_;
  std::vector<TPoly> upper_; // packed i < j
};

/// {f, g} = sum_{i<j} B_ij (df/dx_i dg/dx_j - df/dx_j dg/dx_i), truncated.
/// t-coefficients of f and g behave as central scalars.
TPoly bracket(const PoissonStructure &p, const TPoly &f, const TPoly &g);

/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}.
TPoly jacobiator(const PoissonStructure &p, const TPoly &f, const TPoly &g, const TPoly &h);

/// Jacobiator on all generator triples i < j < l.
Report verify_jacobi(const PoissonStructure &p);

/// H_f with H_f(x_i) = {f, x_i}.
Derivation hamiltonian_field(const PoissonStructure &p, const TPoly &f);

/// {f, x_i} = 0 for every generator.
bool is_poisson_central(const PoissonStructure &p, const TPoly &f);

/// xi({f,g}) = {xi f, g} + {f, xi g} + weight {f,g}.
struct ConformalField {
  Derivation xi;
  Rat weight;
};

/// Conformal defect xi{a,b} - {xi a,b} - {a,xi b} - weight {a,b}.
TPoly conformal_defect(const PoissonStructure &p, const ConformalField &cf,
                       const TPoly &a, const TPoly &b);

/// Conformal defect on all generator pairs. The defect is a biderivation
/// in (a, b), so generator pairs suffice.
Report verify_conformal(const PoissonStructure &p, const ConformalField &cf);

/// Solves for the weight from the first generator pair whose bracket is a
/// nonzero rational constant. nullopt when no such pair exists or the
/// defect on it is not a constant multiple of the bracket. The result is
/// not verified; run verify_conformal on it.
std::optional<Rat> solve_conformal_weight(const PoissonStructure &p, const Derivation &xi);

/// Rational point. `s` and `t` are used by the total-space rank; `t`
/// defaults to 0 when absent.
struct Point {
  std::vector<Rat> coords;
  std::optional<Rat> s;
  std::optional<Rat> t;
};

/// Rank of the matrix ({x_i, x_j}(pt)). Always even.
std::size_t bivector_rank(const PoissonStructure &p, const Point &pt);

} // namespace momentkit
