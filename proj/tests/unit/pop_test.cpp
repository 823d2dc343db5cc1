#include <gtest/gtest.h>

#include "cptp/coefficient_tensor.hpp"
#include "cptp/error.hpp"
#include "cptp/pop.hpp"
#include "oracles.hpp"

using namespace cptp;
using oracle::q;
using oracle::rv;

namespace {

PolyhedralSet simplex2() { return PolyhedralSet(DenseMatrix::from_rows({rv({1, 1})}, 2), rv({1})); }

PopInstance finite_example() {
  const Polynomial f(2, {{q(4), {1, 0}}, {q(-1), {0, 1}}, {q(-2), {2, 0}}, {q(-2), {1, 1}}, {q(-1), {0, 2}}});
  return PopInstance(f, FiniteSet({rv({0, 0}), rv({0, 1}), rv({1, 1})}), ProblemKind::Inhomogeneous);
}

}  // namespace

TEST(PopInstance, Validation) {
  const Polynomial f(2, {{q(1), {1, 0}}, {q(1), {2, 0}}});
  EXPECT_THROW(PopInstance(f, simplex2(), ProblemKind::Homogeneous), InvalidArgument);
  EXPECT_THROW(PopInstance(f, PolyhedralSet::orthant(3), ProblemKind::Inhomogeneous), InvalidArgument);
  EXPECT_EQ(parse_problem_kind("homogeneous"), ProblemKind::Homogeneous);
  EXPECT_THROW(parse_problem_kind("other"), ParseError);
}

TEST(BruteForce, FiniteExampleIsExact) {
  const auto r = brute_force_solve(finite_example());
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.value, q(-2));
  EXPECT_EQ(r.argmins, (std::vector<RationalVector>{rv({0, 1}), rv({1, 1})}));
}

TEST(BruteForce, FiniteEqualsExplicitMinimum) {
  oracle::Random rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.index(1, 3);
    const auto f = rng.polynomial(n, 3, 4);
    std::set<RationalVector> pts;
    while (pts.size() < 5) pts.insert(rng.vector(n));
    const std::vector<RationalVector> list(pts.begin(), pts.end());
    Rational best = oracle::eval_poly(f, list.front());
    for (const auto& x : list) best = std::min(best, Rational(oracle::eval_poly(f, x)));
    EXPECT_EQ(brute_force_solve(PopInstance(f, FiniteSet(list), ProblemKind::Inhomogeneous)).value, best);
  }
}

TEST(BruteForce, BilinearOnSimplex) {
  const PopInstance p(Polynomial(2, {{q(-2), {1, 1}}}), simplex2(), ProblemKind::Homogeneous);
  const auto r = brute_force_solve(p);
  EXPECT_EQ(r.value, q(-1, 2));
  ASSERT_FALSE(r.argmins.empty());
  EXPECT_EQ(r.argmins.front(), (RationalVector{q(1, 2), q(1, 2)}));
}

TEST(BruteForce, QuadraticOnInterval) {
  const PolyhedralSet f(DenseMatrix::from_rows({rv({1})}, 1), rv({1}));
  const PopInstance p(Polynomial(1, {{q(1), {2}}, {q(-2), {1}}}), f, ProblemKind::Inhomogeneous);
  const auto r = brute_force_solve(p);
  EXPECT_EQ(r.value, q(-1));
  EXPECT_EQ(r.argmins, std::vector<RationalVector>{rv({1})});
}

TEST(BruteForce, ErrorsAndBoxes) {
  const PolyhedralSet empty(DenseMatrix::from_rows({rv({1})}, 1), rv({-1}));
  EXPECT_THROW(brute_force_solve(PopInstance(Polynomial(1, {{q(1), {1}}}), empty, ProblemKind::Inhomogeneous)),
               Infeasible);
  const PopInstance down(Polynomial(1, {{q(-1), {2}}}), PolyhedralSet::orthant(1), ProblemKind::Inhomogeneous);
  EXPECT_THROW(brute_force_solve(down), Unbounded);
  const PopInstance up(Polynomial(1, {{q(1), {2}}, {q(-2), {1}}}), PolyhedralSet::orthant(1),
                       ProblemKind::Inhomogeneous);
  EXPECT_THROW(brute_force_solve(up), InvalidArgument);
  BruteForceOptions o;
  o.box = Box{rv({0}), rv({4})};
  const auto r = brute_force_solve(up, o);
  EXPECT_EQ(r.status, SolveStatus::BoxRestricted);
  EXPECT_EQ(r.value, q(-1));
}

TEST(BruteForce, RefinementIsMonotoneInResolution) {
  oracle::Random rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = rng.polynomial(2, 3, 5);
    const PopInstance p(f, simplex2(), ProblemKind::Inhomogeneous);
    // Resolutions 2^k nest, so finer grids contain coarser ones.
    Rational previous = 0;
    for (std::size_t k = 1; k <= 6; ++k) {
      BruteForceOptions o;
      o.resolution = std::size_t{1} << k;
      o.refine = false;
      const auto r = brute_force_solve(p, o);
      if (k > 1) EXPECT_LE(r.value, previous);
      previous = r.value;
    }
  }
}

TEST(BruteForce, MatchesDenseGridOracle) {
  oracle::Random rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = rng.polynomial(2, 3, 5);
    const PopInstance p(f, simplex2(), ProblemKind::Inhomogeneous);
    Rational best = oracle::eval_poly(f, rv({0, 0}));
    const long k = 200;
    for (long i = 0; i <= k; ++i) {
      for (long j = 0; i + j <= k; ++j) best = std::min(best, Rational(oracle::eval_poly(f, {q(i, k), q(j, k)})));
    }
    const auto r = brute_force_solve(p);
    EXPECT_LE(to_double(r.value), to_double(best) + 1e-9);
  }
}

TEST(RecessionNonnegativity, BoundedAndOrthantCases) {
  const PopInstance bounded(Polynomial(2, {{q(-1), {2, 0}}}), simplex2(), ProblemKind::Inhomogeneous);
  const auto b = recession_nonnegativity_check(bounded, 32);
  EXPECT_TRUE(b.holds);
  EXPECT_EQ(b.directions_checked, 0u);

  const PopInstance sos(Polynomial(2, {{q(1), {2, 0}}, {q(1), {0, 2}}}), PolyhedralSet::orthant(2),
                        ProblemKind::Homogeneous);
  EXPECT_TRUE(recession_nonnegativity_check(sos, 32).holds);

  const PopInstance bad(Polynomial(2, {{q(-1), {2, 0}}}), PolyhedralSet::orthant(2), ProblemKind::Homogeneous);
  const auto r = recession_nonnegativity_check(bad, 32);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, rv({1, 0}));
}

TEST(RecessionSamples, StayInConeUnderScaling) {
  const PolyhedralSet f(DenseMatrix::from_rows({rv({1, -1})}, 2), rv({1}));
  const auto cone = recession_cone(f);
  for (const auto& y : sample_cone_directions(cone, 20, 3)) {
    EXPECT_TRUE(cone.contains(y));
    for (long s : {0L, 1L, 7L}) {
      RationalVector scaled = y;
      for (auto& v : scaled) v *= s;
      EXPECT_TRUE(cone.contains(scaled));
    }
  }
}

TEST(CopositivityPop, Construction) {
  SymmetricTensor::EntryMap e;
  e.emplace(MultiIndex({0, 0}, 2), q(1));
  e.emplace(MultiIndex({0, 1}, 2), q(-2));
  e.emplace(MultiIndex({1, 1}, 2), q(1));
  const PopInstance p = copositivity_pop(SymmetricTensor(2, 2, e));
  EXPECT_EQ(p.kind(), ProblemKind::Homogeneous);
  ASSERT_NE(p.polyhedral(), nullptr);
  EXPECT_EQ(p.polyhedral()->nconstraints(), 0u);
  EXPECT_EQ(evaluate(p.objective(), rv({1, 1})), q(-2));
  EXPECT_THROW(brute_force_solve(p), Unbounded);

  const PopInstance zero = copositivity_pop(SymmetricTensor(2, 2));
  EXPECT_TRUE(zero.objective().is_zero());
}
