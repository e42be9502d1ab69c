#include "momentkit/moment.hpp"

#include "momentkit/errors.hpp"

#include <stdexcept>

namespace momentkit {

MomentSystem::MomentSystem(LineData line) : line_(std::move(line)) {}

MomentSystem::MomentSystem(PoissonStructure structure, std::vector<TPoly> alpha)
    : line_(std::move(structure), std::move(alpha))
{
}

MomentSystem make_trivial(const PoissonStructure &base, unsigned n)
{
  if (n == 0)
    throw PreconditionError("moment system order must be >= 1");
  if (base.order() != 0)
    throw ShapeError("make_trivial expects an order-0 structure");
  Report jac = verify_jacobi(base);
  if (!jac.passed)
    throw PreconditionError("base structure fails the Jacobi identity at (" +
                            jac.witnesses.front().at[0] + "," + jac.witnesses.front().at[1] +
                            "," + jac.witnesses.front().at[2] + ")");
  return MomentSystem(LineData::zero(base.lift(n)));
}

ReportSet verify_system(const MomentSystem &ms)
{
  ReportSet out;
  out.reports.push_back(verify_jacobi(ms.structure()));
  out.reports.push_back(verify_cocycle(ms.line()));

  Report alpha_t{"alpha_t"};
  const TPoly one = TPoly::constant(ms.ring(), ms.order() - 1, Rat(1));
  const TPoly at = ms.line().alpha_derivation().t_value();
  if (at != one)
    alpha_t.fail({"t"}, (at - one).to_string());
  alpha_t.notes.emplace_back("structural: alpha(t) = 1 is fixed by LineData");
  out.reports.push_back(std::move(alpha_t));

  Report central{"t_central"};
  const TPoly t = TPoly::t_power(ms.ring(), ms.order(), 1);
  for (std::size_t i = 0; i < ms.structure().arity(); ++i) {
    TPoly r = bracket(ms.structure(), t, TPoly::generator(ms.ring(), ms.order(), i));
    if (!r.is_zero())
      central.fail({"t", ms.ring()->name(i)}, r.to_string());
  }
  central.notes.emplace_back("structural: t is never a bracket slot");
  out.reports.push_back(std::move(central));
  return out;
}

GaugeTwist GaugeTwist::identity(RingPtr ring, unsigned n)
{
  if (n == 0)
    throw PreconditionError("moment system order must be >= 1");
  GaugeTwist g{{}, TPoly::constant(ring, n - 1, Rat(1))};
  for (std::size_t i = 0; i < ring->arity(); ++i)
    g.phi.push_back(TPoly::generator(ring, n, i));
  return g;
}

void validate_twist(const GaugeTwist &g, const RingPtr &ring, unsigned n)
{
  if (g.phi.size() != ring->arity())
    throw PreconditionError("twist needs one image per generator");
  for (std::size_t i = 0; i < g.phi.size(); ++i) {
    require_same_ring(ring, g.phi[i].ring());
    if (g.phi[i].order() != n)
      throw PreconditionError("twist image of " + ring->name(i) + " must be at order " +
                              std::to_string(n));
    if (g.phi[i].coeff(0) != Poly::generator(ring, i))
      throw PreconditionError("twist image of " + ring->name(i) + " is not " + ring->name(i) +
                              " mod t");
  }
  require_same_ring(ring, g.unit.ring());
  if (g.unit.order() + 1 != n)
    throw PreconditionError("twist unit must be at order " + std::to_string(n - 1));
  if (!is_unit(g.unit))
    throw PreconditionError("twist unit " + g.unit.to_string() + " is not a unit");
}

std::vector<TPoly> formal_inverse(const std::vector<TPoly> &phi)
{
  if (phi.empty())
    return {};
  const RingPtr &ring = phi.front().ring();
  const unsigned n = phi.front().order();
  std::vector<TPoly> x, psi;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    x.push_back(TPoly::generator(ring, n, i));
    if (phi[i].coeff(0) != x.back().coeff(0))
      throw PreconditionError("formal_inverse: map is not the identity mod t");
  }
  psi = x;
  for (unsigned pass = 0; pass < n; ++pass) {
    std::vector<TPoly> next;
    next.reserve(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i)
      next.push_back(psi[i] - (substitute(psi[i], phi) - x[i]));
    psi = std::move(next);
  }
  return psi;
}

namespace {

std::vector<TPoly> truncate_all(const std::vector<TPoly> &v, unsigned order)
{
  std::vector<TPoly> out;
  out.reserve(v.size());
  for (const auto &p : v)
    out.push_back(p.truncate(order));
  return out;
}

} // namespace

MomentSystem twist(const MomentSystem &ms, const GaugeTwist &g)
{
  const unsigned n = ms.order();
  const RingPtr &ring = ms.ring();
  validate_twist(g, ring, n);
  const auto k = ring->arity();
  const std::vector<TPoly> psi = formal_inverse(g.phi);
  const std::vector<TPoly> psi_low = truncate_all(psi, n - 1);

  PoissonStructure::Entries entries;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      TPoly b = substitute(bracket(ms.structure(), g.phi[i], g.phi[j]), psi);
      if (!b.is_zero())
        entries.emplace(std::pair{i, j}, std::move(b));
    }
  PoissonStructure transported(ring, n, entries);

  std::vector<TPoly> alpha;
  alpha.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    alpha.push_back(substitute(ms.line().alpha_of(g.phi[i]), psi_low));

  LineData moved(std::move(transported), std::move(alpha));
  return MomentSystem(change_trivialization(moved, g.unit));
}

TrivializationResult trivialize(const MomentSystem &ms)
{
  ReportSet check = verify_system(ms);
  if (!check.passed())
    throw PreconditionError("trivialize: system fails verification");

  const unsigned n = ms.order();
  const RingPtr &ring = ms.ring();
  const auto k = ring->arity();
  TrivializationResult res;
  for (std::size_t i = 0; i < k; ++i)
    res.lifts.push_back(TPoly::generator(ring, n, i));

  for (unsigned step = 1; step <= n; ++step) {
    const Rat inv_step = Rat(1, step);
    for (std::size_t i = 0; i < k; ++i) {
      TPoly a = ms.line().alpha_of(res.lifts[i]);
      auto v = a.valuation();
      if (!v)
        continue;
      if (*v + 1 < step)
        throw std::logic_error("trivialize: residual below the current t-order");
      if (*v + 1 > step)
        continue;
      TPoly correction = TPoly(a.coeff(step - 1), n).shift(step) * inv_step;
      res.lifts[i] -= correction;
    }
  }

  res.alpha_vanishes = true;
  for (std::size_t i = 0; i < k; ++i) {
    TPoly a = ms.line().alpha_of(res.lifts[i]);
    if (!a.is_zero()) {
      res.alpha_vanishes = false;
      res.residuals.push_back({{"alpha", ring->name(i)}, a.to_string()});
    }
  }

  const PoissonStructure p0 = ms.structure().reduction();
  res.poisson_compatible = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      TPoly lhs = bracket(ms.structure(), res.lifts[i], res.lifts[j]);
      TPoly rhs = substitute(p0.entry(i, j).lift(n), res.lifts);
      if (lhs != rhs) {
        res.poisson_compatible = false;
        res.residuals.push_back({{ring->name(i), ring->name(j)}, (lhs - rhs).to_string()});
      }
    }

  if (res.alpha_vanishes && !res.poisson_compatible)
    throw std::logic_error("trivialize: lifts with vanishing alpha are not Poisson-compatible");
  return res;
}

Report verify_gm_hamiltonian(const MomentSystem &ms, int min_degree, int max_degree)
{
  Report rep{"gm_hamiltonian"};
  const unsigned n = ms.order();
  const RingPtr &ring = ms.ring();
  const TotElement t = TotElement::t(ring, n);
  for (int p = min_degree; p <= max_degree; ++p) {
    std::vector<TotElement> ws;
    for (std::size_t i = 0; i < ring->arity(); ++i)
      ws.push_back(TotElement::homogeneous(TPoly::generator(ring, n, i), p));
    ws.push_back(TotElement::s_power(ring, n, p));
    for (const auto &w : ws) {
      TotElement r = tot_bracket(ms.line(), t, w) - w * Rat(p);
      if (!r.is_zero())
        rep.fail({"t", w.to_string()}, r.to_string());
    }
  }
  return rep;
}

RatMatrix tot_matrix(const MomentSystem &ms, const Point &pt)
{
  const auto k = ms.structure().arity();
  if (pt.coords.size() != k)
    throw ShapeError("point does not cover the generators");
  if (!pt.s || *pt.s == 0)
    throw PreconditionError("total-space point needs a nonzero s coordinate");
  const Rat s = *pt.s;
  const Rat t = pt.t.value_or(Rat(0));
  RatMatrix m(k + 2, k + 2);
  auto set = [&](std::size_t i, std::size_t j, const Rat &v) {
    m(i, j) = v;
    m(j, i) = -v;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j)
      set(i, j, ms.structure().entry(i, j).evaluate(pt.coords, t));
    set(i, k, ms.line().alpha(i).evaluate(pt.coords, t) * s);
  }
  set(k, k + 1, -s);
  return m;
}

std::size_t tot_rank(const MomentSystem &ms, const Point &pt) { return rank(tot_matrix(ms, pt)); }

// ---------------------------------------------------------------------------
// Conformal extension

namespace {

// xi(f s^p) = (xi f + p h f) s^p
TotElement apply_field(const Derivation &xi, const TPoly &h, const TotElement &w)
{
  TotElement out(w.ring(), w.order());
  for (const auto &[p, f] : w.terms())
    out += TotElement::homogeneous(xi.apply(f) + f * h * Rat(p), p);
  return out;
}

TotElement tot_conformal_defect(const LineData &l, const Derivation &xi, const TPoly &h,
                                const Rat &weight, const TotElement &a, const TotElement &b)
{
  TotElement ab = tot_bracket(l, a, b);
  TotElement d = apply_field(xi, h, ab) - tot_bracket(l, apply_field(xi, h, a), b) -
                 tot_bracket(l, a, apply_field(xi, h, b)) - ab * weight;
  return d.truncate(l.module_order());
}

Derivation field_with_mu(const std::vector<TPoly> &base_values,
                         const std::vector<TPoly> &t_values, const Rat &mu,
                         const RingPtr &ring, unsigned n)
{
  std::vector<TPoly> values;
  values.reserve(base_values.size());
  for (std::size_t i = 0; i < base_values.size(); ++i)
    values.push_back(base_values[i] + t_values[i] * mu);
  return Derivation(std::move(values), TPoly::t_power(ring, n, 1) * mu, n);
}

Derivation truncate_field(const Derivation &xi, unsigned order)
{
  return Derivation(truncate_all(xi.values(), order), xi.t_value().truncate(order), order);
}

// mu with r0 + mu r1 = 0, if it exists.
std::optional<Rat> solve_linear(const TotElement &r0, const TotElement &r1)
{
  if (r1.is_zero())
    return r0.is_zero() ? std::optional<Rat>(Rat(0)) : std::nullopt;
  const auto &[p, c1] = *r1.terms().begin();
  const TPoly c0 = r0.coeff(p);
  std::optional<Rat> ratio;
  for (unsigned k = 0; k <= c1.order() && !ratio; ++k)
    for (const auto &[e, v] : c1.coeff(k).terms()) {
      ratio = c0.coeff(k).coefficient(e) / v;
      break;
    }
  if (!ratio || r0 != r1 * *ratio)
    return std::nullopt;
  return Rat(-*ratio);
}

} // namespace

ConformalExtension extend_conformal(const MomentSystem &ms, const Derivation &xi0,
                                    const Rat &weight)
{
  const unsigned n = ms.order();
  const RingPtr &ring = ms.ring();
  require_same_ring(ring, xi0.ring());
  if (xi0.source_order() != 0 || xi0.target_order() != 0)
    throw ShapeError("extend_conformal expects a field on the order-0 reduction");

  Report base = verify_conformal(ms.structure().reduction(), ConformalField{xi0, weight});
  if (!base.passed)
    throw PreconditionError("field is not conformal of weight " + to_string(weight) +
                            " on the reduction");
  if (!verify_system(ms).passed())
    throw PreconditionError("extend_conformal: system fails verification");

  ConformalExtension out;
  out.weight = weight;
  out.conformality.check = "conformal_extension";

  const TrivializationResult triv = trivialize(ms);
  const std::vector<TPoly> &lifts = triv.lifts;
  const std::vector<TPoly> psi = formal_inverse(lifts);

  // In trivialized coordinates: xi(x_k') = xi0_k(x'), xi(t) = mu t.
  std::vector<TPoly> lifted_values;
  for (const auto &v : xi0.values())
    lifted_values.push_back(v.lift(n));
  const Derivation d0(lifted_values, TPoly(ring, n), n);
  const Derivation dt(std::vector<TPoly>(ring->arity(), TPoly(ring, n)),
                      TPoly::t_power(ring, n, 1), n);
  std::vector<TPoly> base_values, t_values;
  for (const auto &p : psi) {
    base_values.push_back(substitute(d0.apply(p), lifts));
    t_values.push_back(substitute(dt.apply(p), lifts));
  }

  const LineData &line = ms.line();
  const TPoly h0(ring, n);
  const TotElement t = TotElement::t(ring, n);
  const TotElement s = TotElement::s_power(ring, n, 1);

  const TotElement r0 = tot_conformal_defect(
      line, field_with_mu(base_values, t_values, Rat(0), ring, n), h0, weight, t, s);
  const TotElement r1 =
      tot_conformal_defect(line, field_with_mu(base_values, t_values, Rat(1), ring, n), h0,
                           weight, t, s) -
      r0;
  out.mu = solve_linear(r0, r1);
  if (!out.mu) {
    out.conformality.fail({"t", "s"}, r0.to_string());
    return out;
  }
  const Rat mu = *out.mu;
  const Derivation xi = field_with_mu(base_values, t_values, mu, ring, n);
  out.field = xi;

  // Module weight from the (t, e) pair: xi{t,e} = {xi t,e} + {t,xi e} + c{t,e}.
  {
    const unsigned m = line.module_order();
    const Derivation xi_low = truncate_field(xi, m);
    const TPoly one = TPoly::constant(ring, m, Rat(1));
    const TPoly te = module_bracket(line, TPoly::t_power(ring, n, 1), one);
    const TPoly lhs = xi_low.apply(te) + te * h0.truncate(m);
    const TPoly rhs0 = module_bracket(line, xi.apply(TPoly::t_power(ring, n, 1)), one) +
                       module_bracket(line, TPoly::t_power(ring, n, 1), h0.truncate(m));
    const TPoly diff = lhs - rhs0; // = c * te
    if (te.is_constant() && diff.is_constant())
      out.module_weight = diff.coeff(0).constant_term() / te.coeff(0).constant_term();
  }

  // xi(e) = h e: H_{x_i}(h) = xi(alpha(x_i)) - alpha(xi x_i) - c alpha(x_i).
  if (out.module_weight) {
    const unsigned m = line.module_order();
    const Derivation xi_low = truncate_field(xi, m);
    out.h_constant_free = true;
    for (std::size_t i = 0; i < ring->arity(); ++i) {
      TPoly d = xi_low.apply(line.alpha(i)) - line.alpha_of(xi.value(i)) -
                line.alpha(i) * *out.module_weight;
      if (!d.is_zero()) {
        out.h_constant_free = false;
        out.h_obstruction.push_back({{ring->name(i), "e"}, d.to_string()});
      }
    }
  }

  // Full re-check: base pairs exactly at order n, Tot pairs modulo t^n.
  Report exact = verify_conformal(ms.structure(), ConformalField{xi, weight});
  for (auto &w : exact.witnesses)
    out.conformality.fail(std::move(w.at), std::move(w.residual));

  std::vector<std::pair<std::string, TotElement>> coords;
  for (std::size_t i = 0; i < ring->arity(); ++i)
    coords.emplace_back(ring->name(i), TotElement::homogeneous(TPoly::generator(ring, n, i), 0));
  coords.emplace_back("s", s);
  coords.emplace_back("t", t);
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = i + 1; j < coords.size(); ++j) {
      TotElement d =
          tot_conformal_defect(line, xi, h0, weight, coords[i].second, coords[j].second);
      if (!d.is_zero())
        out.conformality.fail({coords[i].first, coords[j].first}, d.to_string());
    }

  out.conformality.notes.push_back("mu = " + to_string(mu) + ", weight = " + to_string(weight));
  out.success = out.conformality.passed && out.h_constant_free;
  return out;
}

} // namespace momentkit
