#include "momentkit/poisson.hpp"

#include "momentkit/errors.hpp"
#include "momentkit/linalg.hpp"

namespace momentkit {

PoissonStructure::PoissonStructure(RingPtr ring, unsigned order)
    : ring_(std::move(ring)), order_(order)
{
  const auto k = ring_->arity();
  upper_.assign(k * (k > 0 ? k - 1 : 0) / 2, TPoly(ring_, order_));
}

PoissonStructure::PoissonStructure(RingPtr ring, unsigned order, const Entries &entries)
    : PoissonStructure(std::move(ring), order)
{
  std::vector<bool> declared(upper_.size(), false);
  for (const auto &[key, value] : entries) {
    auto [i, j] = key;
    if (i >= arity() || j >= arity())
      throw ShapeError("bracket entry references an unknown generator");
    if (i == j)
      throw Error("bracket {" + ring_->name(i) + "," + ring_->name(i) +
                  "} is zero by antisymmetry and cannot be declared");
    require_same_ring(ring_, value.ring());
    if (value.order() != order_)
      throw ShapeError("bracket entry at order " + std::to_string(value.order()) +
                       ", structure has order " + std::to_string(order_));
    const auto s = slot(i, j);
    if (declared[s])
      throw Error("bracket {" + ring_->name(std::min(i, j)) + "," +
                  ring_->name(std::max(i, j)) + "} declared twice");
    declared[s] = true;
    upper_[s] = i < j ? value : -value;
  }
}

std::size_t PoissonStructure::slot(std::size_t i, std::size_t j) const
{
  if (i > j)
    std::swap(i, j);
  const auto k = arity();
  // row-major index of (i, j), j > i, in the strict upper triangle
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

TPoly PoissonStructure::entry(std::size_t i, std::size_t j) const
{
  if (i >= arity() || j >= arity())
    throw ShapeError("bracket index out of range");
  if (i == j)
    return TPoly(ring_, order_);
  const TPoly &v = upper_[slot(i, j)];
  return i < j ? v : -v;
}

PoissonStructure PoissonStructure::truncate(unsigned order) const
{
  PoissonStructure out(ring_, order);
  for (std::size_t s = 0; s < upper_.size(); ++s)
    out.upper_[s] = upper_[s].truncate(order);
  return out;
}

PoissonStructure PoissonStructure::reduction() const { return truncate(0); }

PoissonStructure PoissonStructure::lift(unsigned order) const
{
  PoissonStructure out(ring_, order);
  for (std::size_t s = 0; s < upper_.size(); ++s)
    out.upper_[s] = upper_[s].lift(order);
  return out;
}

bool operator==(const PoissonStructure &a, const PoissonStructure &b)
{
  return a.order_ == b.order_ && same_ring(a.ring_, b.ring_) && a.upper_ == b.upper_;
}

TPoly bracket(const PoissonStructure &p, const TPoly &f, const TPoly &g)
{
  require_same_ring(p.ring(), f.ring());
  require_same_ring(p.ring(), g.ring());
  if (f.order() != p.order() || g.order() != p.order())
    throw ShapeError("bracket operands at order " + std::to_string(f.order()) + "/" +
                     std::to_string(g.order()) + ", structure has order " +
                     std::to_string(p.order()));
  const auto k = p.arity();
  std::vector<TPoly> df, dg;
  df.reserve(k);
  dg.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    df.push_back(f.partial(i));
    dg.push_back(g.partial(i));
  }
  TPoly out(p.ring(), p.order());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      TPoly b = p.entry(i, j);
      if (b.is_zero())
        continue;
      TPoly cross = df[i] * dg[j] - df[j] * dg[i];
      if (!cross.is_zero())
        out += b * cross;
    }
  return out;
}

TPoly jacobiator(const PoissonStructure &p, const TPoly &f, const TPoly &g, const TPoly &h)
{
  return bracket(p, f, bracket(p, g, h)) + bracket(p, g, bracket(p, h, f)) +
         bracket(p, h, bracket(p, f, g));
}

Report verify_jacobi(const PoissonStructure &p)
{
  Report rep{"jacobi"};
  const auto k = p.arity();
  const auto &ring = *p.ring();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        TPoly r = jacobiator(p, TPoly::generator(p.ring(), p.order(), i),
                             TPoly::generator(p.ring(), p.order(), j),
                             TPoly::generator(p.ring(), p.order(), l));
        if (!r.is_zero())
          rep.fail({ring.name(i), ring.name(j), ring.name(l)}, r.to_string());
      }
  return rep;
}

Derivation hamiltonian_field(const PoissonStructure &p, const TPoly &f)
{
  std::vector<TPoly> values;
  values.reserve(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i)
    values.push_back(bracket(p, f, TPoly::generator(p.ring(), p.order(), i)));
  return Derivation(std::move(values), TPoly(p.ring(), p.order()), p.order());
}

bool is_poisson_central(const PoissonStructure &p, const TPoly &f)
{
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (!bracket(p, f, TPoly::generator(p.ring(), p.order(), i)).is_zero())
      return false;
  return true;
}

namespace {

void require_field_over(const PoissonStructure &p, const Derivation &xi)
{
  require_same_ring(p.ring(), xi.ring());
  if (xi.source_order() != p.order() || xi.target_order() != p.order())
    throw ShapeError("vector field order does not match the structure");
}

} // namespace

TPoly conformal_defect(const PoissonStructure &p, const ConformalField &cf,
                       const TPoly &a, const TPoly &b)
{
  require_field_over(p, cf.xi);
  TPoly ab = bracket(p, a, b);
  return cf.xi.apply(ab) - bracket(p, cf.xi.apply(a), b) - bracket(p, a, cf.xi.apply(b)) -
         ab * cf.weight;
}

Report verify_conformal(const PoissonStructure &p, const ConformalField &cf)
{
  require_field_over(p, cf.xi);
  Report rep{"conformal"};
  const auto &ring = *p.ring();
  for (std::size_t i = 0; i < p.arity(); ++i)
    for (std::size_t j = i + 1; j < p.arity(); ++j) {
      TPoly d = conformal_defect(p, cf, TPoly::generator(p.ring(), p.order(), i),
                                 TPoly::generator(p.ring(), p.order(), j));
      if (!d.is_zero())
        rep.fail({ring.name(i), ring.name(j)}, d.to_string());
    }
  return rep;
}

std::optional<Rat> solve_conformal_weight(const PoissonStructure &p, const Derivation &xi)
{
  require_field_over(p, xi);
  for (std::size_t i = 0; i < p.arity(); ++i)
    for (std::size_t j = i + 1; j < p.arity(); ++j) {
      TPoly b = p.entry(i, j);
      if (!b.is_constant() || b.is_zero())
        continue;
      ConformalField zero_weight{xi, Rat(0)};
      TPoly d = conformal_defect(p, zero_weight, TPoly::generator(p.ring(), p.order(), i),
                                 TPoly::generator(p.ring(), p.order(), j));
      if (!d.is_constant())
        return std::nullopt;
      return d.coeff(0).constant_term() / b.coeff(0).constant_term();
    }
  return std::nullopt;
}

std::size_t bivector_rank(const PoissonStructure &p, const Point &pt)
{
  const auto k = p.arity();
  if (pt.coords.size() != k)
    throw ShapeError("point does not cover the generators");
  const Rat t = pt.t.value_or(Rat(0));
  RatMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Rat v = p.entry(i, j).evaluate(pt.coords, t);
      m(i, j) = v;
      m(j, i) = -v;
    }
  return rank(m);
}

} // namespace momentkit
