#include "momentkit/poly.hpp"

#include "momentkit/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace momentkit {

Ring::Ring(std::vector<std::string> names) : names_(std::move(names))
{
  std::set<std::string> seen;
  for (const auto &n : names_) {
    if (n.empty())
      throw Error("empty generator name");
    if (!seen.insert(n).second)
      throw Error("duplicate generator " + n);
  }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const
{
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

RingPtr make_ring(std::vector<std::string> names)
{
  return std::make_shared<const Ring>(std::move(names));
}

bool same_ring(const RingPtr &a, const RingPtr &b)
{
  return a == b || (a && b && *a == *b);
}

void require_same_ring(const RingPtr &a, const RingPtr &b)
{
  if (!same_ring(a, b))
    throw ShapeError("operands over different generator lists");
}

std::uint32_t total_degree(const Exponents &e)
{
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GrlexGreater::operator()(const Exponents &a, const Exponents &b) const
{
  auto da = total_degree(a), db = total_degree(b);
  if (da != db)
    return da > db;
  return a > b;
}

Poly::Poly(RingPtr ring) : ring_(std::move(ring))
{
  if (!ring_)
    throw Error("polynomial without ring");
}

Poly Poly::constant(RingPtr ring, const Rat &c)
{
  Poly p(std::move(ring));
  p.add_term(Exponents(p.ring_->arity(), 0), c);
  return p;
}

Poly Poly::generator(RingPtr ring, std::size_t index)
{
  Poly p(std::move(ring));
  if (index >= p.ring_->arity())
    throw ShapeError("generator index out of range");
  Exponents e(p.ring_->arity(), 0);
  e[index] = 1;
  p.add_term(e, Rat(1));
  return p;
}

Poly Poly::monomial(RingPtr ring, Exponents exps, const Rat &c)
{
  Poly p(std::move(ring));
  if (exps.size() != p.ring_->arity())
    throw ShapeError("exponent vector arity mismatch");
  p.add_term(exps, c);
  return p;
}

bool Poly::is_constant() const noexcept
{
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rat Poly::constant_term() const
{
  return coefficient(Exponents(ring_->arity(), 0));
}

std::uint32_t Poly::degree() const
{
  // Grlex-descending: the first term has maximal total degree.
  return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

Rat Poly::coefficient(const Exponents &e) const
{
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Exponents &e, const Rat &c)
{
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Poly Poly::partial(std::size_t index) const
{
  if (index >= ring_->arity())
    throw ShapeError("generator index out of range");
  Poly out(ring_);
  for (const auto &[e, c] : terms_) {
    if (e[index] == 0)
      continue;
    Exponents d = e;
    --d[index];
    out.add_term(d, c * e[index]);
  }
  return out;
}

Rat Poly::evaluate(std::span<const Rat> values) const
{
  if (values.size() != ring_->arity())
    throw ShapeError("evaluation point arity mismatch");
  Rat sum(0);
  for (const auto &[e, c] : terms_) {
    Rat term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k)
        term *= values[i];
    sum += term;
  }
  return sum;
}

Poly &Poly::operator+=(const Poly &o)
{
  require_same_ring(ring_, o.ring_);
  for (const auto &[e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

Poly &Poly::operator-=(const Poly &o)
{
  require_same_ring(ring_, o.ring_);
  for (const auto &[e, c] : o.terms_)
    add_term(e, -c);
  return *this;
}

Poly &Poly::operator*=(const Rat &c)
{
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, v] : terms_)
    v *= c;
  return *this;
}

Poly operator*(const Poly &a, const Poly &b)
{
  require_same_ring(a.ring_, b.ring_);
  Poly out(a.ring_);
  const auto n = a.ring_->arity();
  Exponents e(n);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i)
        e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Poly Poly::operator-() const
{
  Poly out = *this;
  for (auto &[e, v] : out.terms_)
    v = -v;
  return out;
}

bool operator==(const Poly &a, const Poly &b)
{
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

Poly pow(const Poly &base, unsigned exponent)
{
  Poly result = Poly::constant(base.ring(), Rat(1));
  Poly sq = base;
  while (exponent) {
    if (exponent & 1u)
      result = result * sq;
    exponent >>= 1;
    if (exponent)
      sq = sq * sq;
  }
  return result;
}

std::vector<std::string> monomial_factors(const Ring &ring, const Exponents &e)
{
  std::vector<std::string> out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0)
      continue;
    out.push_back(e[i] == 1 ? ring.name(i)
                            : ring.name(i) + "^" + std::to_string(e[i]));
  }
  return out;
}

std::string render_term_body(const Rat &abs_coeff, std::vector<std::string> factors)
{
  std::string out;
  if (factors.empty())
    return to_string(abs_coeff);
  if (abs_coeff != 1)
    out = to_string(abs_coeff);
  for (const auto &f : factors) {
    if (!out.empty())
      out += '*';
    out += f;
  }
  return out;
}

void append_signed(std::string &out, bool negative, const std::string &body)
{
  if (out.empty())
    out = negative ? "-" + body : body;
  else
    out += (negative ? " - " : " + ") + body;
}

std::string Poly::to_string() const
{
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto &[e, c] : terms_)
    append_signed(out, c < 0, render_term_body(abs(c), monomial_factors(*ring_, e)));
  return out;
}

} // namespace momentkit
