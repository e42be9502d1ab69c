#include "momentkit/cli/instance.hpp"

#include <momentkit/errors.hpp>

#include <algorithm>
#include <random>

namespace momentkit::cli {

const std::vector<CatalogEntry> &catalog()
{
  static const std::vector<CatalogEntry> entries = {
      {"symplectic plane", 2, 2, true},
      {"so(3)", 3, 3, false},
      {"aff(1)", 2, 2, true},
      {"zero bracket", 1, 3, false},
  };
  return entries;
}

PoissonStructure catalog_structure(std::size_t index, std::size_t generators)
{
  const auto &entries = catalog();
  if (index >= entries.size())
    throw Error("no catalog entry " + std::to_string(index));
  const auto &e = entries[index];
  if (generators < e.min_generators || generators > e.max_generators)
    throw Error("catalog entry '" + e.name + "' does not take " + std::to_string(generators) +
                " generators");
  static const std::vector<std::string> names = {"x", "y", "z"};
  RingPtr ring = make_ring({names.begin(), names.begin() + static_cast<long>(generators)});
  auto gen = [&](std::size_t i) { return TPoly::generator(ring, 0, i); };
  auto one = TPoly::constant(ring, 0, Rat(1));
  PoissonStructure::Entries table;
  switch (index) {
  case 0:
    table.emplace(std::pair{0, 1}, one);
    break;
  case 1:
    table.emplace(std::pair{0, 1}, gen(2));
    table.emplace(std::pair{1, 2}, gen(0));
    table.emplace(std::pair{2, 0}, gen(1));
    break;
  case 2:
    table.emplace(std::pair{0, 1}, gen(0));
    break;
  default:
    break;
  }
  return PoissonStructure(ring, 0, table);
}

void validate_params(const InstanceParams &p)
{
  if (p.max_generators == 0 || p.max_generators > 3)
    throw Error("generators must be in [1, 3]");
  if (p.max_order == 0 || p.max_order > 4)
    throw Error("order must be in [1, 4]");
  if (p.max_degree > 2)
    throw Error("coefficient degree must be <= 2");
}

namespace {

class Draw {
public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  // Modulo mapping rather than std::uniform_int_distribution, whose output
  // is implementation-defined; the generator must agree across platforms.
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

  Rat coefficient()
  {
    static const long nums[] = {1, -1, 2, -2, 1, -1, 3};
    static const long dens[] = {1, 1, 1, 1, 2, 2, 1};
    const auto i = below(7);
    return make_rat(nums[i], dens[i]);
  }

  // Each monomial of degree <= d present with probability 1/3.
  Poly poly(const RingPtr &ring, unsigned d)
  {
    Poly out(ring);
    const std::size_t k = ring->arity();
    Exponents e(k, 0);
    // enumerate all exponent vectors with total degree <= d
    std::vector<Exponents> monos;
    auto rec = [&](auto &&self, std::size_t i, unsigned left) -> void {
      if (i == k) {
        monos.push_back(e);
        return;
      }
      for (unsigned a = 0; a <= left; ++a) {
        e[i] = a;
        self(self, i + 1, left - a);
      }
      e[i] = 0;
    };
    rec(rec, 0, d);
    std::sort(monos.begin(), monos.end(), GrlexGreater{});
    for (const auto &m : monos)
      if (below(3) == 0)
        out += Poly::monomial(ring, m, coefficient());
    return out;
  }

  // sum_{k=lo..order} t^k q_k
  TPoly tpoly(const RingPtr &ring, unsigned order, unsigned lo, unsigned d)
  {
    std::vector<Poly> cs(order + 1, Poly(ring));
    for (unsigned k = lo; k <= order; ++k)
      cs[k] = poly(ring, d);
    return TPoly::from_coefficients(std::move(cs));
  }

private:
  std::mt19937_64 rng_;
};

GaugeTwist draw_twist(Draw &draw, const RingPtr &ring, unsigned n, unsigned d)
{
  GaugeTwist g = GaugeTwist::identity(ring, n);
  for (auto &phi : g.phi)
    phi += draw.tpoly(ring, n, 1, d);
  Rat c = draw.coefficient();
  g.unit = (TPoly::constant(ring, n - 1, Rat(1)) + draw.tpoly(ring, n - 1, 1, d)) * c;
  return g;
}

} // namespace

GaugeTwist random_twist(std::uint64_t seed, const RingPtr &ring, unsigned n, unsigned max_degree)
{
  if (n == 0)
    throw Error("twists need order >= 1");
  Draw draw(seed);
  return draw_twist(draw, ring, n, max_degree);
}

Instance random_instance(std::uint64_t seed, const InstanceParams &params)
{
  validate_params(params);
  if (seed == 0) {
    const unsigned n = std::min(2u, params.max_order);
    PoissonStructure base = catalog_structure(0, 2);
    return {model_of(make_trivial(base, n)), GaugeTwist::identity(base.ring(), n), 0};
  }

  Draw draw(seed);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < catalog().size(); ++i)
    if (catalog()[i].min_generators <= params.max_generators)
      candidates.push_back(i);
  const std::size_t index = candidates[draw.below(candidates.size())];
  const auto &entry = catalog()[index];
  const std::size_t hi = std::min(entry.max_generators, params.max_generators);
  const std::size_t k = entry.min_generators + draw.below(hi - entry.min_generators + 1);
  const unsigned n = 1 + static_cast<unsigned>(draw.below(params.max_order));

  PoissonStructure base = catalog_structure(index, k);
  const RingPtr &ring = base.ring();
  MomentSystem trivial = make_trivial(base, n);

  // alpha = H_f + d/dt on generators: alpha(x_i) = {f, x_i}.
  const PoissonStructure low = trivial.structure().truncate(n - 1);
  const TPoly f = draw.tpoly(ring, n - 1, 0, params.max_degree);
  std::vector<TPoly> alpha;
  for (std::size_t i = 0; i < k; ++i)
    alpha.push_back(bracket(low, f, TPoly::generator(ring, n - 1, i)));
  MomentSystem start(trivial.structure(), std::move(alpha));

  GaugeTwist g = draw_twist(draw, ring, n, params.max_degree);
  return {model_of(twist(start, g)), std::move(g), index};
}

} // namespace momentkit::cli
