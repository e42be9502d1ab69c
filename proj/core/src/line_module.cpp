#include "momentkit/line_module.hpp"

#include "momentkit/errors.hpp"

#include <cstdlib>
#include <string>

namespace momentkit {

namespace {

Derivation make_alpha_derivation(const PoissonStructure &base, const std::vector<TPoly> &alpha)
{
  if (base.order() == 0)
    throw ShapeError("a line module needs structure order >= 1");
  const unsigned m = base.order() - 1;
  if (alpha.size() != base.arity())
    throw ShapeError("alpha needs one value per generator");
  for (const auto &a : alpha) {
    require_same_ring(base.ring(), a.ring());
    if (a.order() != m)
      throw ShapeError("alpha value at order " + std::to_string(a.order()) +
                       ", sections of L live at order " + std::to_string(m));
  }
  return Derivation(alpha, TPoly::constant(base.ring(), m, Rat(1)), base.order());
}

} // namespace

LineData::LineData(PoissonStructure base, std::vector<TPoly> alpha)
    : base_(std::move(base)), alpha_(std::move(alpha)),
      alpha_der_(make_alpha_derivation(base_, alpha_))
{
}

LineData LineData::zero(PoissonStructure base)
{
  if (base.order() == 0)
    throw ShapeError("a line module needs structure order >= 1");
  std::vector<TPoly> alpha(base.arity(), TPoly(base.ring(), base.order() - 1));
  return LineData(std::move(base), std::move(alpha));
}

Report verify_cocycle(const LineData &l)
{
  Report rep{"cocycle"};
  const unsigned m = l.module_order();
  const PoissonStructure low = l.base().truncate(m);
  const auto &ring = *l.ring();
  const auto k = l.base().arity();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      TPoly xi = TPoly::generator(l.ring(), m, i);
      TPoly xj = TPoly::generator(l.ring(), m, j);
      TPoly defect = bracket(low, xi, l.alpha(j)) - bracket(low, xj, l.alpha(i)) -
                     l.alpha_of(l.base().entry(i, j));
      if (!defect.is_zero())
        rep.fail({ring.name(i), ring.name(j)}, defect.to_string());
    }
  return rep;
}

TPoly module_bracket(const LineData &l, const TPoly &a, const TPoly &m)
{
  require_same_ring(l.ring(), a.ring());
  require_same_ring(l.ring(), m.ring());
  if (a.order() != l.order())
    throw ShapeError("module_bracket: function must be at order " + std::to_string(l.order()));
  if (m.order() != l.module_order())
    throw ShapeError("module_bracket: section must be at order " +
                     std::to_string(l.module_order()));
  const unsigned mo = l.module_order();
  return bracket(l.base().truncate(mo), a.truncate(mo), m) + m * l.alpha_of(a);
}

// ---------------------------------------------------------------------------
// TotElement

TotElement::TotElement(RingPtr ring, unsigned order) : ring_(std::move(ring)), order_(order) {}

TotElement TotElement::homogeneous(TPoly coeff, int degree)
{
  TotElement out(coeff.ring(), coeff.order());
  out.add(degree, coeff);
  return out;
}

TotElement TotElement::t(RingPtr ring, unsigned order)
{
  return homogeneous(TPoly::t_power(std::move(ring), order, 1), 0);
}

TotElement TotElement::s_power(RingPtr ring, unsigned order, int degree)
{
  return homogeneous(TPoly::constant(std::move(ring), order, Rat(1)), degree);
}

TPoly TotElement::coeff(int degree) const
{
  auto it = terms_.find(degree);
  return it == terms_.end() ? TPoly(ring_, order_) : it->second;
}

void TotElement::add(int degree, const TPoly &c)
{
  require_same_ring(ring_, c.ring());
  if (c.order() != order_)
    throw ShapeError("Tot coefficient at order " + std::to_string(c.order()) +
                     ", element has order " + std::to_string(order_));
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(degree, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

TotElement TotElement::truncate(unsigned order) const
{
  TotElement out(ring_, order);
  for (const auto &[p, c] : terms_)
    out.add(p, c.truncate(order));
  return out;
}

TotElement &TotElement::operator+=(const TotElement &o)
{
  if (o.order_ != order_)
    throw ShapeError("Tot elements at different orders");
  for (const auto &[p, c] : o.terms_)
    add(p, c);
  return *this;
}

TotElement &TotElement::operator-=(const TotElement &o)
{
  if (o.order_ != order_)
    throw ShapeError("Tot elements at different orders");
  for (const auto &[p, c] : o.terms_)
    add(p, -c);
  return *this;
}

TotElement &TotElement::operator*=(const Rat &c)
{
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto &[p, v] : terms_)
    v *= c;
  return *this;
}

TotElement operator*(const TotElement &a, const TotElement &b)
{
  if (a.order_ != b.order_)
    throw ShapeError("Tot elements at different orders");
  TotElement out(a.ring_, a.order_);
  for (const auto &[p, f] : a.terms_)
    for (const auto &[q, g] : b.terms_)
      out.add(p + q, f * g);
  return out;
}

TotElement TotElement::operator-() const
{
  TotElement out = *this;
  for (auto &[p, v] : out.terms_)
    v = -v;
  return out;
}

bool operator==(const TotElement &a, const TotElement &b)
{
  return a.order_ == b.order_ && same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string TotElement::to_string() const
{
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto &[p, c] : terms_) {
    if (p == 0) {
      // A degree-0 coefficient is spliced in term by term.
      std::string body = c.to_string();
      if (out.empty())
        out = body;
      else if (body.front() == '-')
        out += " - " + body.substr(1);
      else
        out += " + " + body;
      continue;
    }
    const std::string spow = p == 1 ? "s" : "s^" + std::to_string(p);
    std::string body = c.to_string();
    bool single_term = body.find(" + ") == std::string::npos &&
                       body.find(" - ") == std::string::npos;
    bool negative = false;
    if (single_term) {
      if (body.front() == '-') {
        negative = true;
        body.erase(0, 1);
      }
      body = body == "1" ? spow : body + "*" + spow;
    } else {
      body = "(" + body + ")*" + spow;
    }
    append_signed(out, negative, body);
  }
  return out;
}

// ---------------------------------------------------------------------------

int default_degree_bound()
{
  if (const char *env = std::getenv("MOMENTKIT_DEGREE_BOUND")) {
    char *end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1'000'000)
      return static_cast<int>(v);
  }
  return 16;
}

namespace {

void check_degree(int p, int bound)
{
  if (p > bound || p < -bound)
    throw Error("Tot degree " + std::to_string(p) + " exceeds the bound " +
                std::to_string(bound) + " (MOMENTKIT_DEGREE_BOUND)");
}

} // namespace

TotElement tot_bracket(const LineData &l, const TotElement &u, const TotElement &v,
                       int degree_bound)
{
  require_same_ring(l.ring(), u.ring());
  require_same_ring(l.ring(), v.ring());
  if (u.order() != l.order() || v.order() != l.order())
    throw ShapeError("tot_bracket operands must be at the structure order");
  const unsigned n = l.order();
  TotElement out(l.ring(), n);
  for (const auto &[p, f] : u.terms()) {
    check_degree(p, degree_bound);
    for (const auto &[q, g] : v.terms()) {
      check_degree(q, degree_bound);
      check_degree(p + q, degree_bound);
      TPoly c = bracket(l.base(), f, g);
      if (q != 0)
        c += g * l.alpha_of(f).lift(n) * Rat(q);
      if (p != 0)
        c -= f * l.alpha_of(g).lift(n) * Rat(p);
      out += TotElement::homogeneous(std::move(c), p + q);
    }
  }
  return out;
}

TotElement tot_jacobiator(const LineData &l, const TotElement &a, const TotElement &b,
                          const TotElement &c)
{
  return tot_bracket(l, a, tot_bracket(l, b, c)) + tot_bracket(l, b, tot_bracket(l, c, a)) +
         tot_bracket(l, c, tot_bracket(l, a, b));
}

Report verify_tot_jacobi(const LineData &l)
{
  Report rep{"tot_jacobi"};
  const unsigned n = l.order();
  std::vector<std::pair<std::string, TotElement>> elems;
  for (std::size_t i = 0; i < l.base().arity(); ++i)
    elems.emplace_back(l.ring()->name(i),
                       TotElement::homogeneous(TPoly::generator(l.ring(), n, i), 0));
  elems.emplace_back("s", TotElement::s_power(l.ring(), n, 1));
  elems.emplace_back("s^-1", TotElement::s_power(l.ring(), n, -1));
  elems.emplace_back("t", TotElement::t(l.ring(), n));

  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      for (std::size_t k = j + 1; k < elems.size(); ++k) {
        TotElement r = tot_jacobiator(l, elems[i].second, elems[j].second, elems[k].second)
                           .truncate(l.module_order());
        if (!r.is_zero())
          rep.fail({elems[i].first, elems[j].first, elems[k].first}, r.to_string());
      }
  return rep;
}

LineData change_trivialization(const LineData &l, const TPoly &u)
{
  require_same_ring(l.ring(), u.ring());
  if (u.order() != l.module_order())
    throw ShapeError("trivialization unit must be at order " +
                     std::to_string(l.module_order()));
  const TPoly u_inv = invert_unit(u);
  const PoissonStructure low = l.base().truncate(l.module_order());
  std::vector<TPoly> alpha;
  alpha.reserve(l.base().arity());
  for (std::size_t i = 0; i < l.base().arity(); ++i) {
    TPoly xi = TPoly::generator(l.ring(), l.module_order(), i);
    alpha.push_back(l.alpha(i) + u_inv * bracket(low, xi, u));
  }
  return LineData(l.base(), std::move(alpha));
}

TotElement rescale_sections(const TotElement &w, const TPoly &u)
{
  require_same_ring(w.ring(), u.ring());
  const unsigned n = w.order();
  if (u.order() + 1 != n)
    throw ShapeError("rescale_sections: unit must be at order " + std::to_string(n - 1));
  const TPoly lifted = u.lift(n);
  const TPoly inv = invert_unit(lifted);
  TotElement out(w.ring(), n);
  for (const auto &[p, f] : w.terms()) {
    const TPoly factor = p >= 0 ? pow(lifted, static_cast<unsigned>(p))
                                : pow(inv, static_cast<unsigned>(-p));
    out += TotElement::homogeneous(f * factor, p);
  }
  return out;
}

} // namespace momentkit
