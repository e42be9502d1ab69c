#pragma once

#include <momentkit/poisson.hpp>

namespace testgen {

using namespace momentkit;

// {x,y} = c
inline PoissonStructure plane(unsigned n, TPoly c)
{
  auto r = c.ring();
  return PoissonStructure(r, n, {{{0, 1}, c}});
}

inline PoissonStructure plane(unsigned n)
{
  auto r = make_ring({"x", "y"});
  return plane(n, TPoly::constant(r, n, Rat(1)));
}

// {x,y} = c z, {y,z} = c x, {z,x} = c y
inline PoissonStructure so3(unsigned n, const TPoly *scale = nullptr)
{
  auto r = scale ? scale->ring() : make_ring({"x", "y", "z"});
  TPoly c = scale ? *scale : TPoly::constant(r, n, Rat(1));
  auto g = [&](std::size_t i) { return c * TPoly::generator(r, n, i); };
  return PoissonStructure(r, n, {{{0, 1}, g(2)}, {{1, 2}, g(0)}, {{2, 0}, g(1)}});
}

// {x,y} = x
inline PoissonStructure aff1(unsigned n)
{
  auto r = make_ring({"x", "y"});
  return PoissonStructure(r, n, {{{0, 1}, TPoly::generator(r, n, 0)}});
}

// {x,y} = z, {y,z} = y^2, {z,x} = 0: fails Jacobi with residual 2yz
inline PoissonStructure counterexample()
{
  auto r = make_ring({"x", "y", "z"});
  TPoly y = TPoly::generator(r, 0, 1);
  return PoissonStructure(r, 0, {{{0, 1}, TPoly::generator(r, 0, 2)}, {{1, 2}, y * y}});
}

// Random Jacobi-valid structure: a catalog table scaled by a random
// polynomial in t alone (t is central, so Jacobi is preserved).
template <class G> PoissonStructure random_valid(G &gen, unsigned n)
{
  const auto kind = gen.below(4);
  auto r = kind == 1 ? make_ring({"x", "y", "z"}) : make_ring({"x", "y"});
  std::vector<Poly> cs;
  for (unsigned k = 0; k <= n; ++k)
    cs.push_back(k == 0 ? Poly::constant(r, Rat(1)) : Poly::constant(r, gen.rat()));
  TPoly c = TPoly::from_coefficients(std::move(cs));
  switch (kind) {
  case 0:
    return plane(n, c);
  case 1:
    return so3(n, &c);
  case 2:
    return PoissonStructure(r, n, {{{0, 1}, c * TPoly::generator(r, n, 0)}});
  default:
    return PoissonStructure(r, n);
  }
}

} // namespace testgen
