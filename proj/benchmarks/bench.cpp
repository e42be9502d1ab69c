#include <momentkit/cli/instance.hpp>
#include <momentkit/cli/model.hpp>
#include <momentkit/moment.hpp>

#include <benchmark/benchmark.h>

using namespace momentkit;

namespace {

TPoly dense(const RingPtr &r, unsigned n, unsigned degree)
{
  TPoly f(r, n);
  TPoly one = TPoly::constant(r, n, Rat(1));
  for (std::size_t i = 0; i < r->arity(); ++i) {
    TPoly x = TPoly::generator(r, n, i), p = one;
    for (unsigned d = 0; d <= degree; ++d, p = p * x)
      f += Rat(static_cast<long>(d + i + 1)) * p;
  }
  return f * f;
}

void BM_Bracket(benchmark::State &state)
{
  const unsigned n = static_cast<unsigned>(state.range(0));
  PoissonStructure p = cli::catalog_structure(1, 3).lift(n);
  TPoly f = dense(p.ring(), n, 3), g = dense(p.ring(), n, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(bracket(p, f, g));
}
BENCHMARK(BM_Bracket)->Arg(0)->Arg(2)->Arg(4);

void BM_TotBracket(benchmark::State &state)
{
  cli::Instance in = cli::random_instance(static_cast<std::uint64_t>(state.range(0)));
  MomentSystem ms = cli::system_of(in.model);
  const auto &r = ms.ring();
  const unsigned n = ms.order();
  TotElement u = TotElement::homogeneous(dense(r, n, 2), 2);
  TotElement v = TotElement::homogeneous(dense(r, n, 2), -1);
  for (auto _ : state)
    benchmark::DoNotOptimize(tot_bracket(ms.line(), u, v));
}
BENCHMARK(BM_TotBracket)->Arg(3)->Arg(11);

void BM_Twist(benchmark::State &state)
{
  const unsigned n = static_cast<unsigned>(state.range(0));
  PoissonStructure base = cli::catalog_structure(1, 3);
  MomentSystem ms = make_trivial(base, n);
  GaugeTwist g = cli::random_twist(5, base.ring(), n, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(twist(ms, g));
}
BENCHMARK(BM_Twist)->DenseRange(1, 4);

void BM_Trivialize(benchmark::State &state)
{
  const unsigned n = static_cast<unsigned>(state.range(0));
  PoissonStructure base = cli::catalog_structure(1, 3);
  MomentSystem ms = twist(make_trivial(base, n), cli::random_twist(5, base.ring(), n, 2));
  for (auto _ : state)
    benchmark::DoNotOptimize(trivialize(ms));
}
BENCHMARK(BM_Trivialize)->DenseRange(1, 4);

} // namespace

BENCHMARK_MAIN();
