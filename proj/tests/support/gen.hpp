#pragma once

// Seeded random inputs for property tests.

#include <momentkit/line_module.hpp>
#include <momentkit/poisson.hpp>
#include <momentkit/tpoly.hpp>

#include <random>
#include <vector>

namespace testgen {

using namespace momentkit;

struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::mt19937_64 rng;

  std::uint64_t below(std::uint64_t n) { return rng() % n; }

  Rat rat()
  {
    static const long nums[] = {1, -1, 2, -3, 1, 5, -1, 7};
    static const long dens[] = {1, 1, 1, 1, 2, 3, 4, 2};
    auto i = below(8);
    return make_rat(nums[i], dens[i]);
  }

  Poly poly(const RingPtr &ring, unsigned max_deg, unsigned terms = 4)
  {
    Poly out(ring);
    for (unsigned n = 0; n < terms; ++n) {
      Exponents e(ring->arity(), 0);
      unsigned deg = static_cast<unsigned>(below(max_deg + 1));
      for (unsigned d = 0; d < deg; ++d)
        ++e[below(ring->arity())];
      out += Poly::monomial(ring, e, rat());
    }
    return out;
  }

  TPoly tpoly(const RingPtr &ring, unsigned order, unsigned max_deg, unsigned terms = 3)
  {
    std::vector<Poly> cs;
    for (unsigned k = 0; k <= order; ++k)
      cs.push_back(poly(ring, max_deg, terms));
    return TPoly::from_coefficients(std::move(cs));
  }

  // c (1 + t q) at the given order.
  TPoly unit(const RingPtr &ring, unsigned order, unsigned max_deg)
  {
    TPoly q = tpoly(ring, order, max_deg, 2);
    return (TPoly::constant(ring, order, Rat(1)) + q.shift(1)) * rat();
  }
};

// Generators x_0..x_{k-1} at an order, for writing polynomials inline.
inline std::vector<TPoly> gens(const RingPtr &ring, unsigned order)
{
  std::vector<TPoly> out;
  for (std::size_t i = 0; i < ring->arity(); ++i)
    out.push_back(TPoly::generator(ring, order, i));
  return out;
}

inline TPoly tt(const RingPtr &ring, unsigned order, unsigned k = 1)
{
  return TPoly::t_power(ring, order, k);
}

inline TPoly cst(const RingPtr &ring, unsigned order, const Rat &c)
{
  return TPoly::constant(ring, order, c);
}

} // namespace testgen
