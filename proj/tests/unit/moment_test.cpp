#include "../oracle/naive.hpp"
#include "../support/gen.hpp"
#include "../support/structures.hpp"

#include <momentkit/errors.hpp>
#include <momentkit/moment.hpp>

#include <gtest/gtest.h>

using namespace momentkit;
using testgen::cst;
using testgen::gens;
using testgen::tt;

namespace {

Point at(std::vector<long> xs, std::optional<long> s, std::optional<long> t = 0)
{
  Point p;
  for (long v : xs)
    p.coords.push_back(Rat(v));
  if (s)
    p.s = Rat(*s);
  if (t)
    p.t = Rat(*t);
  return p;
}

// phi_i = x_i + sum_k t^k q_ik, unit = c (1 + t q)
GaugeTwist random_gauge(testgen::Gen &gen, const RingPtr &r, unsigned n)
{
  GaugeTwist g = GaugeTwist::identity(r, n);
  for (auto &phi : g.phi)
    phi += gen.tpoly(r, n, 2, 2).shift(1);
  g.unit = gen.unit(r, n - 1, 2);
  return g;
}

oracle::QMatrix to_q(const RatMatrix &m)
{
  oracle::QMatrix q(m.rows(), std::vector<oracle::Q>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      q[i][j] = m(i, j);
  return q;
}

} // namespace

TEST(MakeTrivial, Examples)
{
  MomentSystem ms = make_trivial(testgen::plane(0), 2);
  EXPECT_EQ(ms.order(), 2u);
  EXPECT_EQ(ms.structure().entry(0, 1).to_string(), "1");
  EXPECT_TRUE(ms.line().alpha(0).is_zero() && ms.line().alpha(1).is_zero());
  EXPECT_TRUE(verify_system(ms).passed());
  EXPECT_TRUE(verify_system(make_trivial(PoissonStructure(make_ring({"x"}), 0), 1)).passed());
  EXPECT_TRUE(verify_system(make_trivial(testgen::so3(0), 3)).passed());
  EXPECT_THROW(make_trivial(testgen::counterexample(), 1), PreconditionError);
  EXPECT_THROW(make_trivial(testgen::plane(0), 0), Error);
}

TEST(VerifySystem, CorruptedAlpha)
{
  auto base = testgen::plane(1);
  auto r = base.ring();
  MomentSystem ms(base, {TPoly(r, 0), TPoly::generator(r, 0, 1)});
  ReportSet rs = verify_system(ms);
  EXPECT_FALSE(rs.passed());
  const Report *c = rs.find("cocycle");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->witnesses, (std::vector<Witness>{{{"x", "y"}, "1"}}));
  EXPECT_TRUE(rs.find("jacobi")->passed);
  EXPECT_TRUE(rs.find("alpha_t")->passed);
  EXPECT_TRUE(rs.find("t_central")->passed);
}

TEST(Twist, Identity)
{
  MomentSystem ms = make_trivial(testgen::so3(0), 2);
  EXPECT_EQ(twist(ms, GaugeTwist::identity(ms.ring(), 2)), ms);
}

TEST(Twist, UnitOnPlane)
{
  // alpha lives at order n-1: the t^2 term only appears from n = 3 on
  auto r = make_ring({"x", "y"});
  GaugeTwist g2 = GaugeTwist::identity(r, 2);
  g2.unit = cst(r, 1, Rat(1)) + tt(r, 1) * TPoly::generator(r, 1, 0);
  MomentSystem ms2 = twist(make_trivial(testgen::plane(0), 2), g2);
  EXPECT_TRUE(ms2.line().alpha(0).is_zero());
  EXPECT_EQ(ms2.line().alpha(1).to_string(), "-t");

  MomentSystem base3 = make_trivial(testgen::plane(0), 3);
  GaugeTwist g = GaugeTwist::identity(r, 3);
  g.unit = cst(r, 2, Rat(1)) + tt(r, 2) * TPoly::generator(r, 2, 0);
  MomentSystem ms3 = twist(base3, g);
  EXPECT_TRUE(ms3.line().alpha(0).is_zero());
  EXPECT_EQ(ms3.line().alpha(1).to_string(), "-t + t^2*x");
  EXPECT_TRUE(verify_system(ms3).passed());
}

TEST(Twist, RejectsBadShape)
{
  auto r = make_ring({"x", "y"});
  MomentSystem ms = make_trivial(testgen::plane(0), 2);
  GaugeTwist g = GaugeTwist::identity(r, 2);
  g.phi[0] += cst(r, 2, Rat(1));
  EXPECT_THROW(twist(ms, g), PreconditionError);
  g = GaugeTwist::identity(r, 2);
  g.unit = TPoly::generator(r, 1, 0);
  EXPECT_THROW(twist(ms, g), PreconditionError);
}

TEST(FormalInverse, InvertsPhi)
{
  auto r = make_ring({"x", "y"});
  auto g = gens(r, 3);
  std::vector<TPoly> phi = {g[0] + tt(r, 3) * g[1] * g[1], g[1] + tt(r, 3, 2) * g[0]};
  std::vector<TPoly> psi = formal_inverse(phi);
  EXPECT_EQ(substitute(phi[0], psi), g[0]);
  EXPECT_EQ(substitute(phi[1], psi), g[1]);
  EXPECT_EQ(substitute(psi[0], phi), g[0]);
}

TEST(Trivialize, TrivialSystemIsIdentity)
{
  MomentSystem ms = make_trivial(testgen::so3(0), 3);
  TrivializationResult tr = trivialize(ms);
  EXPECT_TRUE(tr.verified());
  EXPECT_EQ(tr.lifts, gens(ms.ring(), 3));
}

TEST(Trivialize, WorkedLift)
{
  auto base = testgen::plane(1);
  auto r = base.ring();
  MomentSystem ms(base, {TPoly(r, 0), TPoly::generator(r, 0, 0)});
  TrivializationResult tr = trivialize(ms);
  ASSERT_TRUE(tr.verified());
  EXPECT_EQ(tr.lifts[0].to_string(), "x");
  EXPECT_EQ(tr.lifts[1].to_string(), "y - t*x");
  EXPECT_TRUE(tr.residuals.empty());
}

TEST(Trivialize, RefusesUnverified)
{
  auto base = testgen::plane(1);
  auto r = base.ring();
  MomentSystem ms(base, {TPoly(r, 0), TPoly::generator(r, 0, 1)});
  EXPECT_THROW(trivialize(ms), PreconditionError);
}

TEST(GmHamiltonian, Examples)
{
  MomentSystem ms = make_trivial(testgen::plane(0), 2);
  const auto &r = ms.ring();
  EXPECT_TRUE(verify_gm_hamiltonian(ms).passed);
  const LineData &l = ms.line();
  EXPECT_EQ(tot_bracket(l, TotElement::t(r, 2), TotElement::s_power(r, 2, 1)),
            TotElement::s_power(r, 2, 1));
  auto x = TPoly::generator(r, 2, 0);
  EXPECT_EQ(tot_bracket(l, TotElement::t(r, 2), TotElement::homogeneous(x, 2)).to_string(),
            "2*x*s^2");
  EXPECT_TRUE(tot_bracket(l, TotElement::t(r, 2), TotElement::homogeneous(x * x, 0)).is_zero());
}

TEST(TotRank, Examples)
{
  MomentSystem plane = make_trivial(testgen::plane(0), 2);
  EXPECT_EQ(tot_rank(plane, at({1, 2}, 1)), 4u);
  RatMatrix m = tot_matrix(plane, at({1, 2}, 1));
  EXPECT_EQ(pfaffian(m), Rat(-1));
  EXPECT_EQ(oracle::pfaffian(to_q(m)), Rat(-1));

  MomentSystem zero = make_trivial(PoissonStructure(make_ring({"x", "y"}), 0), 1);
  EXPECT_EQ(tot_rank(zero, at({3, 4}, 2)), 2u);

  auto base = testgen::plane(1);
  auto r = base.ring();
  MomentSystem consts(base, {cst(r, 0, Rat(3)), cst(r, 0, Rat(-5, 2))});
  EXPECT_EQ(tot_rank(consts, at({1, 2}, 1)), 4u);
  EXPECT_EQ(pfaffian(tot_matrix(consts, at({1, 2}, 1))), Rat(-1));

  EXPECT_THROW(tot_rank(plane, at({1, 2}, 0)), PreconditionError);
  EXPECT_THROW(tot_rank(plane, at({1, 2}, std::nullopt)), PreconditionError);
}

TEST(ExtendConformal, EulerOnPlane)
{
  MomentSystem ms = make_trivial(testgen::plane(0), 2);
  Derivation euler(gens(ms.ring(), 0), std::nullopt, 0);
  ConformalExtension ext = extend_conformal(ms, euler, Rat(-2));
  ASSERT_TRUE(ext.success);
  EXPECT_EQ(ext.mu, Rat(2));
  EXPECT_TRUE(ext.conformality.passed);
  EXPECT_TRUE(ext.h_constant_free);
  ASSERT_TRUE(ext.field);
  EXPECT_EQ(ext.field->t_value(), tt(ms.ring(), 2) * Rat(2));
  EXPECT_THROW(extend_conformal(ms, euler, Rat(0)), PreconditionError);
}

TEST(ExtendConformal, WeightZero)
{
  MomentSystem so3 = make_trivial(testgen::so3(0), 2);
  auto g = gens(so3.ring(), 0);
  Derivation h = hamiltonian_field(so3.structure().reduction(), g[0] * g[1]);
  ConformalExtension ext = extend_conformal(so3, h, Rat(0));
  EXPECT_TRUE(ext.success);
  EXPECT_EQ(ext.mu, Rat(0));
  EXPECT_TRUE(ext.field->t_value().is_zero());

  MomentSystem zero = make_trivial(PoissonStructure(make_ring({"x", "y"}), 0), 2);
  auto z = gens(zero.ring(), 0);
  ConformalExtension ez = extend_conformal(zero, Derivation({z[1] * z[1], z[0]}, std::nullopt, 0),
                                          Rat(0));
  EXPECT_TRUE(ez.success);
  EXPECT_EQ(ez.mu, Rat(0));
}

// --- properties -------------------------------------------------------------

class MomentProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(MomentProperty, TwistTrivializeRoundTrip)
{
  testgen::Gen gen(GetParam());
  const unsigned n = 1 + static_cast<unsigned>(gen.below(4));
  const auto kind = gen.below(4);
  PoissonStructure base = kind == 0   ? testgen::plane(0)
                          : kind == 1 ? testgen::so3(0)
                          : kind == 2 ? testgen::aff1(0)
                                      : PoissonStructure(make_ring({"x", "y", "z"}), 0);
  MomentSystem ms = twist(make_trivial(base, n), random_gauge(gen, base.ring(), n));
  ASSERT_TRUE(verify_system(ms).passed());
  EXPECT_TRUE(verify_gm_hamiltonian(ms).passed);
  EXPECT_TRUE(verify_tot_jacobi(ms.line()).passed);

  TrivializationResult tr = trivialize(ms);
  ASSERT_TRUE(tr.verified());
  const auto &r = ms.ring();
  const auto k = r->arity();
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_EQ(tr.lifts[i].truncate(0), TPoly::generator(r, 0, i));
    EXPECT_TRUE(ms.line().alpha_of(tr.lifts[i]).is_zero());
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      EXPECT_EQ(bracket(ms.structure(), tr.lifts[i], tr.lifts[j]),
                substitute(base.entry(i, j).lift(n), tr.lifts));

  // uniqueness: perturbing a lift by t^j c breaks alpha = 0
  const unsigned j = 1 + static_cast<unsigned>(gen.below(n));
  const std::size_t i = gen.below(k);
  TPoly c = gen.tpoly(r, n, 2, 2).truncate(0).lift(n);
  if (c.is_zero())
    c = cst(r, n, Rat(1));
  EXPECT_FALSE(ms.line().alpha_of(tr.lifts[i] + c.shift(j)).is_zero());

  // idempotence on the trivial system
  EXPECT_EQ(trivialize(make_trivial(base, n)).lifts, gens(r, n));
}

TEST_P(MomentProperty, TotRankIsBaseRankPlusTwo)
{
  testgen::Gen gen(GetParam());
  const unsigned n = 1 + static_cast<unsigned>(gen.below(3));
  const auto kind = gen.below(3);
  PoissonStructure base = kind == 0 ? testgen::plane(0) : kind == 1 ? testgen::aff1(0)
                                                                     : testgen::so3(0);
  MomentSystem ms = twist(make_trivial(base, n), random_gauge(gen, base.ring(), n));
  Point pt;
  for (std::size_t i = 0; i < base.arity(); ++i)
    pt.coords.push_back(Rat(static_cast<long>(gen.below(7)) - 3));
  pt.s = gen.rat();
  pt.t = Rat(static_cast<long>(gen.below(3)));
  const std::size_t rk = tot_rank(ms, pt);
  EXPECT_EQ(rk, bivector_rank(ms.structure(), pt) + 2);
  EXPECT_EQ(rk % 2, 0u);
  EXPECT_EQ(rk, oracle::rank_by_minors(to_q(tot_matrix(ms, pt))));
}

TEST_P(MomentProperty, ConformalExtensionOnTwistedSystems)
{
  testgen::Gen gen(GetParam());
  const unsigned n = 1 + static_cast<unsigned>(gen.below(3));
  const auto kind = gen.below(3);
  PoissonStructure base = kind == 0 ? testgen::plane(0) : kind == 1 ? testgen::aff1(0)
                                                                     : testgen::so3(0);
  MomentSystem ms = twist(make_trivial(base, n), random_gauge(gen, base.ring(), n));
  Derivation euler(gens(base.ring(), 0), std::nullopt, 0);
  const Rat lambda = kind == 0 ? Rat(-2) : Rat(-1);
  ConformalExtension ext = extend_conformal(ms, euler, lambda);
  EXPECT_TRUE(ext.success);
  EXPECT_TRUE(ext.conformality.passed);
  EXPECT_EQ(ext.mu, -lambda);
}

INSTANTIATE_TEST_SUITE_P(Seeds, MomentProperty, ::testing::Range<std::uint64_t>(1, 41));
