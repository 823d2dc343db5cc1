#include <gtest/gtest.h>

#include <cmath>

#include "cptp/coefficient_tensor.hpp"
#include "cptp/cone_oracle.hpp"
#include "cptp/error.hpp"
#include "oracles.hpp"

using namespace cptp;
using oracle::q;
using oracle::rv;

namespace {

SymmetricTensor matrix2(const Rational& a, const Rational& b, const Rational& c) {
  SymmetricTensor::EntryMap e;
  e.emplace(MultiIndex({0, 0}, 2), a);
  e.emplace(MultiIndex({0, 1}, 2), b);
  e.emplace(MultiIndex({1, 1}, 2), c);
  return SymmetricTensor(2, 2, e);
}

SymmetricTensor identity(std::size_t d, std::size_t n) {
  SymmetricTensor::EntryMap e;
  for (std::size_t i = 0; i < n; ++i) e.emplace(MultiIndex(std::vector<std::size_t>(d, i), n), q(1));
  return SymmetricTensor(d, n, e);
}

// min of a t^2 + 2 b t (1-t) + c (1-t)^2 over t in [0, 1].
double simplex_min_2x2(double a, double b, double c) {
  double best = std::min(a, c);
  const double curvature = a - 2 * b + c;
  if (curvature > 0) {
    const double t = (c - b) / curvature;
    if (t > 0 && t < 1) best = std::min(best, a * t * t + 2 * b * t * (1 - t) + c * (1 - t) * (1 - t));
  }
  return best;
}

PolyhedralSet simplex2() { return PolyhedralSet(DenseMatrix::from_rows({rv({1, 1})}, 2), rv({1})); }
PolyhedralSet unit_interval() { return PolyhedralSet(DenseMatrix::from_rows({rv({1})}, 1), rv({1})); }

struct Built {
  LiftingData data;
  CpTensorProgram prog;
  CopositiveProgram dual;
};

Built build(const PopInstance& p, const RationalVector& alpha) {
  auto data = build_lifting_data(p, alpha);
  auto prog = p.kind() == ProblemKind::Homogeneous ? build_homogeneous_cptp(p, data) : build_inhomogeneous_cptp(p, data);
  auto dual = build_dual(prog);
  return {std::move(data), std::move(prog), std::move(dual)};
}

PopInstance bilinear() { return PopInstance(Polynomial(2, {{q(-2), {1, 1}}}), simplex2(), ProblemKind::Homogeneous); }

PopInstance quadratic() {
  return PopInstance(Polynomial(1, {{q(1), {2}}, {q(-2), {1}}}), unit_interval(), ProblemKind::Inhomogeneous);
}

}  // namespace

TEST(CopositiveCheck, IdentityMarginsAreAnalytic) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto v = copositive_check(identity(2, n));
    EXPECT_EQ(v.status, CopositivityStatus::Copositive);
    EXPECT_NEAR(v.margin, 1.0 / n, 1e-6) << n;
  }
  const auto cubic = copositive_check(identity(3, 3));
  EXPECT_NEAR(cubic.margin, 1.0 / 9, 1e-6);
}

TEST(CopositiveCheck, AllOnesMarginIsOne) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t d = 2; d <= 3; ++d) {
      const auto v = copositive_check(rank_one_power(RationalVector(n, q(1)), d));
      EXPECT_EQ(v.status, CopositivityStatus::Copositive);
      EXPECT_NEAR(v.margin, 1.0, 1e-6);
    }
  }
}

TEST(CopositiveCheck, IndefiniteExample) {
  const auto v = copositive_check(matrix2(q(1), q(-2), q(1)));
  ASSERT_EQ(v.status, CopositivityStatus::NotCopositive);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, (RationalVector{q(1, 2), q(1, 2)}));
  EXPECT_EQ(*v.witness_value, q(-1, 2));
}

TEST(CopositiveCheck, ZeroTensor) {
  const auto v = copositive_check(SymmetricTensor(3, 4));
  EXPECT_EQ(v.status, CopositivityStatus::Copositive);
  EXPECT_EQ(v.margin, 0.0);
}

TEST(CopositiveCheck, LatticeCap) {
  OracleOptions o;
  o.max_lattice_points = 100;
  EXPECT_THROW(copositive_check(identity(2, 6), o), ResourceLimit);
}

TEST(CopositiveCheck, MarginMatchesAnalyticMinimumIn2D) {
  oracle::Random rng(97);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational a = rng.rational(), b = rng.rational(), c = rng.rational();
    const auto v = copositive_check(matrix2(a, b, c));
    EXPECT_NEAR(v.margin, simplex_min_2x2(a.get_d(), b.get_d(), c.get_d()), 1e-9);
  }
}

TEST(CopositiveCheck, WitnessesReverifyExactly) {
  oracle::Random rng(101);
  int violations = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = rng.index(2, 3), n = rng.index(2, 4);
    const auto t = rng.tensor(d, n);
    const auto v = copositive_check(t);
    if (v.status != CopositivityStatus::NotCopositive) continue;
    ++violations;
    ASSERT_TRUE(v.witness.has_value());
    for (const auto& c : *v.witness) EXPECT_GE(c, 0);
    const Rational value = oracle::inner(oracle::expand(t), oracle::outer_power(*v.witness, d));
    EXPECT_EQ(value, *v.witness_value);
    EXPECT_LT(value.get_d(), -v.tol);
  }
  EXPECT_GT(violations, 0);
}

TEST(CopositiveCheck, MarginNeverIncreasesWithDepth) {
  oracle::Random rng(103);
  for (int trial = 0; trial < 15; ++trial) {
    const auto t = rng.tensor(rng.index(2, 3), rng.index(2, 4));
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t depth = 0; depth <= 4; ++depth) {
      OracleOptions o;
      o.depth = depth;
      const double margin = copositive_check(t, o).margin;
      EXPECT_LE(margin, previous);
      previous = margin;
    }
  }
}

TEST(CopositiveCheck, ThreadCountDoesNotChangeResult) {
  oracle::Random rng(107);
  const auto t = rng.tensor(3, 4);
  OracleOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = copositive_check(t, one), b = copositive_check(t, many);
  EXPECT_EQ(a.margin, b.margin);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(CpReconstruct, Examples) {
  const auto one = cp_reconstruct({2, 3, {{q(1), rv({1, 0, 1})}}});
  EXPECT_EQ(oracle::expand(one).values, oracle::outer_power(rv({1, 0, 1}), 2).values);
  EXPECT_TRUE(cp_reconstruct({2, 3, {}}).is_zero());
  const auto half = cp_reconstruct({2, 3, {{q(1, 2), rv({1, 0, 1})}, {q(1, 2), rv({1, 1, 1})}}});
  EXPECT_EQ(half.entry({0, 0}), q(1));
  EXPECT_EQ(half.entry({0, 1}), q(1, 2));
  EXPECT_EQ(half.entry({1, 1}), q(1, 2));
  EXPECT_EQ(half.entry({0, 2}), q(1));
  EXPECT_EQ(half.entry({1, 2}), q(1, 2));
  EXPECT_THROW(cp_reconstruct({2, 2, {{q(1), rv({1, -1})}}}), InvalidArgument);
  EXPECT_THROW(cp_reconstruct({2, 2, {{q(-1), rv({1, 1})}}}), InvalidArgument);
  EXPECT_THROW(cp_reconstruct({2, 2, {{q(1), rv({1})}}}), InvalidArgument);
}

TEST(CptpFeasibility, Examples) {
  const auto ones = build(bilinear(), rv({1, 1}));
  const auto lifted = lift_homogeneous_point(RationalVector{q(1, 2), q(1, 2)}, ones.data);
  EXPECT_TRUE(cptp_feasibility_check(ones.prog, {2, 3, {{q(1), lifted}}}).passed());

  const auto zero = build(bilinear(), rv({0, 0}));
  const auto bad = cptp_feasibility_check(zero.prog, {2, 3, {{q(1), rv({1, 1, 0})}}});
  EXPECT_FALSE(bad.passed());
  bool named = false;
  for (const auto& c : bad.checks) {
    if (c.name == "map[0]") {
      EXPECT_FALSE(c.passed);
      EXPECT_NE(c.detail.find("row 0"), std::string::npos);
      EXPECT_NE(c.detail.find("-2/1"), std::string::npos);
      named = true;
    }
  }
  EXPECT_TRUE(named);

  const auto empty = cptp_feasibility_check(ones.prog, {2, 3, {}});
  EXPECT_FALSE(empty.passed());
  EXPECT_FALSE(empty.checks[1].passed);
  EXPECT_THROW(cptp_feasibility_check(ones.prog, {2, 4, {}}), InvalidArgument);
}

TEST(CptpFeasibility, ReconstructedAtomsAlwaysPassMembership) {
  oracle::Random rng(109);
  const auto b = build(quadratic(), rv({1}));
  for (int trial = 0; trial < 30; ++trial) {
    AtomDecomposition dec{2, 3, {}};
    for (int k = 0; k < 3; ++k) {
      const RationalVector x{rng.nonneg_rational(1, 7)};
      if (x[0] > 1) continue;
      dec.atoms.push_back({q(1, 3), lift_inhomogeneous_point(x, b.data)});
    }
    const auto report = cptp_feasibility_check(b.prog, dec);
    for (const auto& c : report.checks) {
      if (c.name.rfind("map", 0) == 0 || c.name == "cone") EXPECT_TRUE(c.passed) << c.name << c.detail;
    }
  }
}

TEST(DualFeasibility, Examples) {
  const auto b = build(bilinear(), rv({1, 1}));
  const auto ok = dual_feasibility_check(b.dual, make_assignment(b.dual, {q(-3)}));
  EXPECT_EQ(ok.status, CopositivityStatus::Copositive);
  EXPECT_NEAR(ok.margin, 2.5, 1e-9);

  const auto bad = dual_feasibility_check(b.dual, make_assignment(b.dual, {q(0)}));
  ASSERT_EQ(bad.status, CopositivityStatus::NotCopositive);
  EXPECT_EQ(*bad.witness, (RationalVector{q(1, 2), q(1, 2), q(0)}));
  EXPECT_EQ(*bad.witness_value, q(-1, 2));

  const PopInstance zero(Polynomial(2), simplex2(), ProblemKind::Homogeneous);
  const auto z = build(zero, rv({1, 1}));
  EXPECT_EQ(dual_feasibility_check(z.dual, make_assignment(z.dual, {q(0)})).status, CopositivityStatus::Copositive);

  auto negative = make_assignment(b.dual, {q(-3)});
  negative.multipliers[0] = q(-1) * rank_one_power(rv({1, 0, 0, 0}), 2);
  EXPECT_THROW(dual_feasibility_check(b.dual, negative), InvalidArgument);
}

TEST(DualFeasibility, InhomogeneousNeedsNegativeMu) {
  const auto b = build(quadratic(), rv({1}));
  // With mu = 0 nothing dominates -2 y0 y1 near y = (1, 0, 0): the form is -2e + 5e^2 at (1, e, 0).
  const auto no_mu = dual_feasibility_check(b.dual, make_assignment(b.dual, {q(-4), q(0)}));
  ASSERT_EQ(no_mu.status, CopositivityStatus::NotCopositive);
  const auto expr = assemble_expression(b.dual, make_assignment(b.dual, {q(-4), q(0)}));
  EXPECT_EQ(form_value(expr, *no_mu.witness), *no_mu.witness_value);
  EXPECT_LT(form_value(expr, RationalVector{q(1), q(1, 10), q(0)}), 0);

  EXPECT_EQ(dual_feasibility_check(b.dual, make_assignment(b.dual, {q(-4), q(-2)})).status,
            CopositivityStatus::Copositive);
  const auto bad = dual_feasibility_check(b.dual, make_assignment(b.dual, {q(0), q(0)}));
  EXPECT_EQ(bad.status, CopositivityStatus::NotCopositive);
}

TEST(DualFeasibility, DownMonotoneInLambda) {
  oracle::Random rng(113);
  const auto b = build(bilinear(), rv({1, 1}));
  for (int trial = 0; trial < 10; ++trial) {
    const Rational lambda = rng.rational(4, 3);
    if (dual_feasibility_check(b.dual, make_assignment(b.dual, {lambda})).status != CopositivityStatus::Copositive) {
      continue;
    }
    for (long drop : {1L, 5L, 40L}) {
      EXPECT_EQ(dual_feasibility_check(b.dual, make_assignment(b.dual, {lambda - drop})).status,
                CopositivityStatus::Copositive);
    }
  }
}

TEST(BoundSolve, Examples) {
  const auto b = build(bilinear(), rv({1, 1}));
  const auto r = bound_solve(b.dual);
  EXPECT_GE(r.lambda, -0.52);
  EXPECT_LE(r.lambda, -0.5 + 1e-12);

  const PopInstance zero(Polynomial(2), simplex2(), ProblemKind::Homogeneous);
  EXPECT_EQ(bound_solve(build(zero, rv({1, 1})).dual).lambda, 0.0);

  const PopInstance sq(Polynomial(1, {{q(1), {2}}}), unit_interval(), ProblemKind::Homogeneous);
  EXPECT_NEAR(bound_solve(build(sq, rv({1})).dual).lambda, 0.0, 1e-9);
}

TEST(BoundSolve, Preconditions) {
  EXPECT_THROW(bound_solve(build(bilinear(), rv({0, 0})).dual), InvalidArgument);
  EXPECT_THROW(bound_solve(build(quadratic(), rv({1})).dual), InvalidArgument);
}

TEST(BoundSolve, NeverExceedsBruteForce) {
  oracle::Random rng(127);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Term> terms;
    for (int k = 0; k < 3; ++k) {
      Exponent e(2, 0);
      ++e[rng.index(0, 1)];
      ++e[rng.index(0, 1)];
      terms.push_back({rng.rational(), e});
    }
    const PopInstance p(Polynomial(2, terms), simplex2(), ProblemKind::Homogeneous);
    const double bound = bound_solve(build(p, rv({1, 1})).dual).lambda;
    EXPECT_LE(bound, brute_force_solve(p).value.get_d() + 1e-8);
  }
}

TEST(StrictProbe, Examples) {
  const auto b = build(bilinear(), rv({1, 1}));
  const auto r = strict_feasibility_probe(b.dual);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.assignment.scalars[0], q(-1));
  EXPECT_NEAR(r.verdict.margin, 0.5, 1e-9);

  const PopInstance zero(Polynomial(2), simplex2(), ProblemKind::Homogeneous);
  const auto z = strict_feasibility_probe(build(zero, rv({1, 1})).dual);
  ASSERT_TRUE(z.found);
  EXPECT_EQ(z.assignment.scalars[0], q(-1));
  EXPECT_NEAR(z.verdict.margin, 1.0, 1e-9);

  const auto inh = strict_feasibility_probe(build(quadratic(), rv({1})).dual);
  ASSERT_TRUE(inh.found);
  EXPECT_EQ(inh.assignment.scalars[0], q(-4));
  EXPECT_GT(inh.verdict.margin, 0);
}

TEST(StrictProbe, RequiresPositiveLiftVector) {
  EXPECT_THROW(strict_feasibility_probe(build(bilinear(), rv({0, 0})).dual), InvalidArgument);
}
