#pragma once

#include "momentkit/line_module.hpp"
#include "momentkit/linalg.hpp"
#include "momentkit/poisson.hpp"
#include "momentkit/report.hpp"

#include <optional>
#include <vector>

namespace momentkit {

/// Order-n moment system on an affine space: a Poisson structure on
/// A[t]/t^{n+1} with t central, and a line module on the order n-1
/// restriction with {t, e} = e. The module is free, so flatness holds by
/// construction; the remaining axioms are checked by verify_system.
class MomentSystem {
public:
  explicit MomentSystem(LineData line);
  MomentSystem(PoissonStructure structure, std::vector<TPoly> alpha);

  unsigned order() const noexcept { return line_.order(); }
  const RingPtr &ring() const noexcept { return line_.ring(); }
  const PoissonStructure &structure() const noexcept { return line_.base(); }
  const LineData &line() const noexcept { return line_; }

  friend bool operator==(const MomentSystem &, const MomentSystem &) = default;

private:
  LineData line_;
};

/// X x S_n with the structure sheaf of X_{n-1} as L: the table of `base`
/// lifted t-independently, alpha = 0. Throws PreconditionError if `base`
/// fails the Jacobi identity.
MomentSystem make_trivial(const PoissonStructure &base, unsigned n);

/// jacobi (at order n), cocycle, alpha_t (alpha(t) = 1) and t_central.
ReportSet verify_system(const MomentSystem &ms);

/// Automorphism phi of A[t]/t^{n+1} with phi(x_i) = x_i mod t and phi(t) = t,
/// together with a rescaling e -> unit * e of the trivialization.
struct GaugeTwist {
  std::vector<TPoly> phi; // order n
  TPoly unit;             // order n-1

  static GaugeTwist identity(RingPtr ring, unsigned n);
};

/// Throws PreconditionError unless phi_i = x_i mod t and unit is a unit.
void validate_twist(const GaugeTwist &g, const RingPtr &ring, unsigned n);

/// psi with phi(psi_i) = x_i, by fixed-point iteration
/// psi <- psi - (phi(psi) - x); each pass gains one power of t.
std::vector<TPoly> formal_inverse(const std::vector<TPoly> &phi);

/// Transport along phi, then change the trivialization by the unit:
///   B'_ij = phi^-1({phi x_i, phi x_j}),
///   alpha_phi(x_i) = phi^-1(alpha(phi x_i)),
///   alpha'(a) = alpha_phi(a) + unit^-1 H'_a(unit).
MomentSystem twist(const MomentSystem &ms, const GaugeTwist &g);

struct TrivializationResult {
  std::vector<TPoly> lifts;   // x_i' = x_i mod t, alpha(x_i') = 0
  bool alpha_vanishes = false;
  bool poisson_compatible = false;
  std::vector<Witness> residuals;

  bool verified() const { return alpha_vanishes && poisson_compatible; }
};

/// Canonical lifts x_i' with {x_i', e} = 0.
///
/// For k = 1..n, every generator whose alpha-value has lowest term
/// t^{k-1} r is corrected by x_i' -= (1/k) t^k r, since
/// alpha(t^k r) = k t^{k-1} r + O(t^k). The result is then checked:
/// alpha(x_i') = 0 in A[t]/t^n, and {x_i', x_j'} = P_ij(x') in A[t]/t^{n+1}
/// with P the t^0 part of the table.
///
/// Throws PreconditionError if verify_system fails. A Poisson compatibility
/// failure on a verified system is a bug and throws std::logic_error.
TrivializationResult trivialize(const MomentSystem &ms);

/// tot_bracket(t, w) = p w for w = x_i s^p and w = s^p, p in [min_degree, max_degree].
Report verify_gm_hamiltonian(const MomentSystem &ms, int min_degree = -3, int max_degree = 3);

/// Rank at pt of the antisymmetric matrix on (x_1..x_k, s, t):
/// {x_i,x_j} = B_ij, {x_i,s} = alpha(x_i) s, {x_i,t} = 0, {s,t} = -s.
/// Throws PreconditionError if pt.s is missing or zero.
std::size_t tot_rank(const MomentSystem &ms, const Point &pt);

/// Tot coordinate matrix at pt (same entries as tot_rank).
RatMatrix tot_matrix(const MomentSystem &ms, const Point &pt);

struct ConformalExtension {
  /// Extended field on A[t]/t^{n+1}; field.t_value() = mu t.
  std::optional<Derivation> field;
  Rat weight;
  std::optional<Rat> mu;
  /// c in xi{a,m} = {xi a,m} + {a,xi m} + c{a,m}, solved from the (t, e) pair.
  std::optional<Rat> module_weight;
  /// True when xi(e) = h e admits every constant h (the family is free).
  bool h_constant_free = false;
  /// Residuals xi(alpha(x_i)) - alpha(xi x_i) - c alpha(x_i) that block a constant h.
  std::vector<Witness> h_obstruction;
  /// Conformality of the extended field on pairs from {x_i, s, t}.
  Report conformality;
  bool success = false;
};

/// Extends a conformal field of the reduction X_0 to the moment system.
///
/// The field is extended through the canonical lifts (in trivialized
/// coordinates x' it acts as xi(x_i') = xi_0(x_i)(x')), xi(t) = mu t with mu
/// solved from the conformality constraint on the Tot pair (t, s), and
/// xi(e) = h e with h constant when possible. On success the extended field
/// passes the full conformality check.
///
/// Throws PreconditionError if the base field is not conformal of the given
/// weight on X_0 or the system fails verify_system.
ConformalExtension extend_conformal(const MomentSystem &ms, const Derivation &xi0,
                                    const Rat &weight);

} // namespace momentkit
