#include "momentkit/tpoly.hpp"

#include "momentkit/errors.hpp"

namespace momentkit {

TPoly::TPoly(RingPtr ring, unsigned order)
    : ring_(std::move(ring)), order_(order), coeffs_(order + 1, Poly(ring_))
{
}

TPoly::TPoly(Poly c0, unsigned order) : TPoly(c0.ring(), order)
{
  coeffs_[0] = std::move(c0);
}

TPoly TPoly::constant(RingPtr ring, unsigned order, const Rat &c)
{
  return TPoly(Poly::constant(std::move(ring), c), order);
}

TPoly TPoly::generator(RingPtr ring, unsigned order, std::size_t index)
{
  return TPoly(Poly::generator(std::move(ring), index), order);
}

TPoly TPoly::t_power(RingPtr ring, unsigned order, unsigned k)
{
  TPoly out(std::move(ring), order);
  if (k <= order)
    out.coeffs_[k] = Poly::constant(out.ring_, Rat(1));
  return out;
}

TPoly TPoly::from_coefficients(std::vector<Poly> coeffs)
{
  if (coeffs.empty())
    throw ShapeError("TPoly needs at least one coefficient");
  TPoly out(coeffs.front().ring(), static_cast<unsigned>(coeffs.size() - 1));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    require_same_ring(out.ring_, coeffs[k].ring());
    out.coeffs_[k] = std::move(coeffs[k]);
  }
  return out;
}

bool TPoly::is_zero() const noexcept
{
  for (const auto &c : coeffs_)
    if (!c.is_zero())
      return false;
  return true;
}

bool TPoly::is_constant() const noexcept
{
  if (!coeffs_[0].is_constant())
    return false;
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    if (!coeffs_[k].is_zero())
      return false;
  return true;
}

std::optional<unsigned> TPoly::valuation() const
{
  for (unsigned k = 0; k <= order_; ++k)
    if (!coeffs_[k].is_zero())
      return k;
  return std::nullopt;
}

TPoly TPoly::truncate(unsigned order) const
{
  if (order > order_)
    throw ShapeError("truncate: target order " + std::to_string(order) +
                     " exceeds " + std::to_string(order_));
  TPoly out(ring_, order);
  for (unsigned k = 0; k <= order; ++k)
    out.coeffs_[k] = coeffs_[k];
  return out;
}

TPoly TPoly::lift(unsigned order) const
{
  if (order < order_)
    throw ShapeError("lift: target order " + std::to_string(order) +
                     " below " + std::to_string(order_));
  TPoly out(ring_, order);
  for (unsigned k = 0; k <= order_; ++k)
    out.coeffs_[k] = coeffs_[k];
  return out;
}

TPoly TPoly::shift(unsigned k) const
{
  TPoly out(ring_, order_);
  for (unsigned j = 0; j + k <= order_; ++j)
    out.coeffs_[j + k] = coeffs_[j];
  return out;
}

TPoly TPoly::partial(std::size_t index) const
{
  TPoly out(ring_, order_);
  for (unsigned k = 0; k <= order_; ++k)
    out.coeffs_[k] = coeffs_[k].partial(index);
  return out;
}

TPoly TPoly::t_derivative() const
{
  if (order_ == 0)
    return TPoly(ring_, 0);
  TPoly out(ring_, order_ - 1);
  for (unsigned k = 1; k <= order_; ++k)
    out.coeffs_[k - 1] = coeffs_[k] * Rat(k);
  return out;
}

Rat TPoly::evaluate(std::span<const Rat> values, const Rat &t) const
{
  Rat sum(0), tk(1);
  for (unsigned k = 0; k <= order_; ++k) {
    if (!coeffs_[k].is_zero())
      sum += tk * coeffs_[k].evaluate(values);
    tk *= t;
  }
  return sum;
}

void TPoly::require_compatible(const TPoly &o) const
{
  require_same_ring(ring_, o.ring_);
  if (order_ != o.order_)
    throw ShapeError("t-order mismatch: " + std::to_string(order_) + " vs " +
                     std::to_string(o.order_));
}

TPoly &TPoly::operator+=(const TPoly &o)
{
  require_compatible(o);
  for (unsigned k = 0; k <= order_; ++k)
    coeffs_[k] += o.coeffs_[k];
  return *this;
}

TPoly &TPoly::operator-=(const TPoly &o)
{
  require_compatible(o);
  for (unsigned k = 0; k <= order_; ++k)
    coeffs_[k] -= o.coeffs_[k];
  return *this;
}

TPoly &TPoly::operator*=(const Rat &c)
{
  for (auto &p : coeffs_)
    p *= c;
  return *this;
}

TPoly operator*(const TPoly &a, const TPoly &b)
{
  a.require_compatible(b);
  TPoly out(a.ring_, a.order_);
  for (unsigned i = 0; i <= a.order_; ++i) {
    if (a.coeffs_[i].is_zero())
      continue;
    for (unsigned j = 0; i + j <= a.order_; ++j) {
      if (b.coeffs_[j].is_zero())
        continue;
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

TPoly TPoly::operator-() const
{
  TPoly out = *this;
  for (auto &p : out.coeffs_)
    p = -p;
  return out;
}

bool operator==(const TPoly &a, const TPoly &b)
{
  return a.order_ == b.order_ && same_ring(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_;
}

std::string TPoly::to_string() const
{
  std::string out;
  for (unsigned k = 0; k <= order_; ++k) {
    for (const auto &[e, c] : coeffs_[k].terms()) {
      std::vector<std::string> factors;
      if (k == 1)
        factors.emplace_back("t");
      else if (k > 1)
        factors.push_back("t^" + std::to_string(k));
      for (auto &f : monomial_factors(*ring_, e))
        factors.push_back(std::move(f));
      append_signed(out, c < 0, render_term_body(abs(c), std::move(factors)));
    }
  }
  return out.empty() ? "0" : out;
}

TPoly pow(const TPoly &base, unsigned exponent)
{
  TPoly result = TPoly::constant(base.ring(), base.order(), Rat(1));
  TPoly sq = base;
  while (exponent) {
    if (exponent & 1u)
      result = result * sq;
    exponent >>= 1;
    if (exponent)
      sq = sq * sq;
  }
  return result;
}

TPoly substitute(const TPoly &f, std::span<const TPoly> assignment)
{
  const auto &ring = *f.ring();
  if (assignment.size() < ring.arity())
    throw ShapeError("assignment does not cover generator " +
                     ring.name(assignment.size()));
  if (assignment.size() > ring.arity())
    throw ShapeError("assignment has more entries than generators");
  if (assignment.empty()) {
    // Nothing to substitute; constants stay fixed.
    return f;
  }
  const RingPtr &target = assignment.front().ring();
  const unsigned order = f.order();
  for (const auto &a : assignment) {
    require_same_ring(target, a.ring());
    if (a.order() != order)
      throw ShapeError("substitution order mismatch");
  }

  // powers[i][e] = assignment[i]^e, grown on demand
  std::vector<std::vector<TPoly>> powers(ring.arity());
  auto power_of = [&](std::size_t i, std::uint32_t e) -> const TPoly & {
    auto &cache = powers[i];
    if (cache.empty())
      cache.push_back(TPoly::constant(target, order, Rat(1)));
    while (cache.size() <= e)
      cache.push_back(cache.back() * assignment[i]);
    return cache[e];
  };

  TPoly out(target, order);
  for (unsigned k = 0; k <= order; ++k) {
    for (const auto &[e, c] : f.coeff(k).terms()) {
      TPoly term = TPoly::t_power(target, order, k) * c;
      for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
        if (e[i] > 0)
          term = term * power_of(i, e[i]);
      out += term;
    }
  }
  return out;
}

bool is_unit(const TPoly &u)
{
  const Poly &c0 = u.coeff(0);
  return c0.is_constant() && !c0.is_zero();
}

TPoly invert_unit(const TPoly &u)
{
  if (!is_unit(u))
    throw PreconditionError("not a recognized unit: constant term of " +
                            u.to_string() + " is not a nonzero rational");
  const unsigned order = u.order();
  const Rat inv_c0 = 1 / u.coeff(0).constant_term();
  std::vector<Poly> v(order + 1, Poly(u.ring()));
  v[0] = Poly::constant(u.ring(), inv_c0);
  // u * v = 1  =>  c0 v_k = -sum_{j=1..k} u_j v_{k-j}
  for (unsigned k = 1; k <= order; ++k) {
    Poly acc(u.ring());
    for (unsigned j = 1; j <= k; ++j)
      if (!u.coeff(j).is_zero() && !v[k - j].is_zero())
        acc += u.coeff(j) * v[k - j];
    v[k] = acc * Rat(-inv_c0);
  }
  return TPoly::from_coefficients(std::move(v));
}

} // namespace momentkit
