#include <gtest/gtest.h>

#include "cptp/coefficient_tensor.hpp"
#include "cptp/conic.hpp"
#include "cptp/error.hpp"
#include "cptp/text_format.hpp"
#include "oracles.hpp"

using namespace cptp;
using oracle::q;
using oracle::rv;

namespace {

CpTensorProgram quadratic_program(std::size_t t = 1) {
  const PolyhedralSet f(DenseMatrix::from_rows({rv({1})}, 1), rv({1}));
  const PopInstance p(Polynomial(1, {{q(1), {2}}, {q(-2), {1}}}), f, ProblemKind::Inhomogeneous);
  return build_inhomogeneous_cptp(p, build_lifting_data(p, rv({1}), t));
}

std::size_t error_line(const std::string& text, SymmetricTensor (*reader)(std::string_view)) {
  try {
    reader(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(TensorText, CanonicalOutput) {
  SymmetricTensor::EntryMap e;
  e.emplace(MultiIndex({1, 0}, 2), q(-1, 2));
  e.emplace(MultiIndex({0, 0}, 2), q(3));
  EXPECT_EQ(write_tensor(SymmetricTensor(2, 2, e)), "symtensor 2 2\n0 0 3/1\n0 1 -1/2\n");
  EXPECT_EQ(write_tensor(SymmetricTensor(1, 3)), "symtensor 1 3\n");
}

TEST(TensorText, RoundTripRandomTensors) {
  oracle::Random rng(131);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = rng.tensor(rng.index(1, 4), rng.index(1, 4));
    EXPECT_EQ(read_tensor(write_tensor(t)), t);
  }
}

TEST(TensorText, AcceptsCommentsAndUnsortedIndices) {
  const auto t = read_tensor("# header\nsymtensor 2 3\n\n2 0 1/2  # entry\n");
  EXPECT_EQ(t.entry({0, 2}), q(1, 2));
}

TEST(TensorText, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("symtensor 2 2\n0 0 1\n0 5 1\n", read_tensor), 3u);
  EXPECT_EQ(error_line("symtensor 2 2\n0 0 1\n0 0 2\n", read_tensor), 3u);
  EXPECT_EQ(error_line("symtensor 2 2\n0 1 x\n", read_tensor), 2u);
  EXPECT_EQ(error_line("symtensor 2 2\n0 1\n", read_tensor), 2u);
  EXPECT_EQ(error_line("tensor 2 2\n", read_tensor), 1u);
  EXPECT_THROW(read_tensor(""), ParseError);
}

TEST(MatrixText, RoundTrip) {
  oracle::Random rng(137);
  const auto m = rng.matrix(3, 2);
  EXPECT_EQ(read_matrix(write_matrix(m)), m);
  EXPECT_EQ(read_matrix(write_matrix(DenseMatrix(0, 3))), DenseMatrix(0, 3));
  EXPECT_THROW(read_matrix("matrix 2 2\n1 2\n3\n"), ParseError);
  EXPECT_THROW(read_matrix("matrix 1 1\n1\n2\n"), ParseError);
}

TEST(PolynomialText, RoundTrip) {
  oracle::Random rng(139);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = rng.polynomial(rng.index(1, 4), 4, rng.index(0, 5));
    EXPECT_EQ(read_polynomial(write_polynomial(f)), f);
  }
  EXPECT_EQ(write_polynomial(Polynomial(2, {{q(-2), {1, 1}}})), "polynomial 2\n-2/1 : 1 1\n");
  EXPECT_THROW(read_polynomial("polynomial 2\n1 : 1\n"), ParseError);
}

TEST(ProgramText, RoundTripAndDeterminism) {
  for (std::size_t t : {1u, 3u}) {
    const auto prog = quadratic_program(t);
    const std::string text = write_program(prog);
    EXPECT_EQ(write_program(read_program(text)), text);
    const auto back = read_program(text);
    EXPECT_EQ(back.objective, prog.objective);
    EXPECT_EQ(back.maps, prog.maps);
    EXPECT_EQ(back.t, t);
    ASSERT_EQ(back.equalities.size(), 2u);
    EXPECT_EQ(back.equalities[1].rhs, q(0));
  }
}

TEST(DualText, RoundTripAndTagMismatch) {
  const auto dual = build_dual(quadratic_program());
  const std::string text = write_dual(dual);
  const auto back = read_dual(text);
  EXPECT_EQ(write_dual(back), text);
  ASSERT_EQ(back.scalars.size(), 2u);
  EXPECT_EQ(back.scalars[1].name, "mu");
  EXPECT_EQ(back.slots[1].adjoint, dual.slots[1].adjoint);
  EXPECT_THROW(read_program(text), ParseError);
  EXPECT_THROW(read_dual(write_program(quadratic_program())), ParseError);
}

TEST(ProgramText, RejectsInconsistentShapes) {
  std::string text = write_program(quadratic_program());
  const auto pos = text.find("map 1\nmatrix 1 3");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_THROW(read_program(text.replace(pos, 5, "map 2")), ParseError);
  EXPECT_THROW(read_program("cptp-program 2\n"), ParseError);
}
