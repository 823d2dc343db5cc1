#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cptp/dense_matrix.hpp"
#include "cptp/pop.hpp"
#include "cptp/symmetric_tensor.hpp"

namespace cptp {

// ---------------------------------------------------------------------------
// Lifted convex model: min <A_f, X> over conv{M_d(1,x) | x in F} + conv{M_d(0,y) | y in rec F}.

struct LiftedProgram {
  std::size_t order;
  SymmetricTensor objective;  // coefficient tensor, dimension n+1
  FeasibleSet feasible;
  ConeSet recession;

  /// M_d(1, x); throws InvalidArgument if x is not in F.
  SymmetricTensor feasible_atom(std::span<const Rational> x) const;
  /// M_d(0, y); throws InvalidArgument if y is not in the recession cone.
  SymmetricTensor recession_atom(std::span<const Rational> y) const;
};

/// `order` defaults to max(deg f, 1).
LiftedProgram build_lifted_program(const PopInstance& p, std::optional<std::size_t> order = {});

struct LiftedFiniteSolution {
  Rational value;
  std::vector<RationalVector> argmin_points;
  /// M_d(1, x) for each argmin; the optimal face is their convex hull.
  std::vector<SymmetricTensor> optimal_atoms;

  /// Convex combination of the optimal atoms. Throws unless weights are >= 0 and sum to 1.
  SymmetricTensor hull_point(std::span<const Rational> weights) const;
};

/// Minimizes the lifted objective over the simplex of atom weights. The objective is
/// linear in the weights, so the optimum is attained on the atoms themselves.
/// Throws InvalidArgument unless the instance has a finite feasible set.
LiftedFiniteSolution solve_lifted_finite(const PopInstance& p, std::optional<std::size_t> order = {});

// ---------------------------------------------------------------------------
// Completely positive reformulation over F = {Bx <= b, x >= 0}.

/// Every auxiliary object of the reformulation, for a certified alpha (alpha^T x <= 1 on F).
struct LiftingData {
  PolyhedralSet feasible;
  std::size_t order;
  RationalVector alpha;
  /// a = (alpha, 1), length n+1.
  RationalVector lift_vector;
  /// A = [b a^T - (B | 0); I_{n+1}], (m+n+1) x (n+1). A y >= 0 encodes x in F.
  DenseMatrix certificate_map;
  std::size_t t;
  /// (0, a), length n+2.
  RationalVector padded_lift_vector;
  /// t identical rows (1, -a^T).
  DenseMatrix homogenizer_map;
  /// (0 | A), (m+n+1) x (n+2).
  DenseMatrix padded_certificate_map;
  /// M_d((1, -a)).
  SymmetricTensor homogenizer_tensor;
};

/// Throws InvalidArgument if the instance is not polyhedral, t < 1, or alpha fails the certificate.
LiftingData build_lifting_data(const PopInstance& p, std::span<const Rational> alpha, std::size_t t = 1,
                               std::optional<std::size_t> order = {});

/// y = (x, 1 - alpha^T x); throws InvalidArgument if x is infeasible.
RationalVector lift_homogeneous_point(std::span<const Rational> x, const LiftingData& data);
/// (1, x, 1 - alpha^T x); throws InvalidArgument if x is infeasible.
RationalVector lift_inhomogeneous_point(std::span<const Rational> x, const LiftingData& data);

struct EqualityConstraint {
  SymmetricTensor tensor;
  Rational rhs;
};

/// min <objective, X> s.t. <X, C_i> = c_i, X x M_k ... M_k completely positive, X completely positive.
struct CpTensorProgram {
  ProblemKind kind;
  std::size_t order;
  std::size_t base_dim;
  SymmetricTensor objective;
  std::vector<EqualityConstraint> equalities;
  /// Membership maps; the image dimension is the row count.
  std::vector<DenseMatrix> maps;
  RationalVector alpha;
  std::size_t t;

  /// Throws InvalidArgument when constraint shapes disagree with (order, base_dim).
  void validate() const;
};

CpTensorProgram build_homogeneous_cptp(const PopInstance& p, const LiftingData& data);
CpTensorProgram build_inhomogeneous_cptp(const PopInstance& p, const LiftingData& data);

// ---------------------------------------------------------------------------
// Copositive duals.

struct ScalarVariable {
  std::string name;
  /// Coefficient subtracted from the affine expression.
  SymmetricTensor coefficient;
  /// Weight in the maximized objective (the primal right-hand side).
  Rational objective_weight;
};

struct MultiplierSlot {
  /// Dimension of the copositive multiplier U.
  std::size_t dim;
  /// Transpose of the primal membership map; U enters as U x M^T ... M^T.
  DenseMatrix adjoint;
};

/// max sum w_i s_i  s.t.  base - sum s_i C_i + sum U_k x M_k^T...M_k^T copositive, U_k copositive.
struct CopositiveProgram {
  ProblemKind kind;
  std::size_t order;
  std::size_t base_dim;
  SymmetricTensor base;
  std::vector<ScalarVariable> scalars;
  std::vector<MultiplierSlot> slots;
  RationalVector alpha;
  std::size_t t;

  /// a = (alpha, 1).
  RationalVector lift_vector() const;
  /// v with scalars[0].coefficient = M_d(v): a (homogeneous) or (0, a) (inhomogeneous).
  RationalVector normalization_vector() const;
  void validate() const;
};

struct DualAssignment {
  RationalVector scalars;
  std::vector<SymmetricTensor> multipliers;
};

/// Zero multipliers of the right shapes with the given scalar values.
DualAssignment make_assignment(const CopositiveProgram& dual, RationalVector scalars);

/// base - sum s_i C_i + sum U_k x adjoint_k ..., exactly. Throws on shape mismatch.
SymmetricTensor assemble_expression(const CopositiveProgram& dual, const DualAssignment& assignment);

/// Lagrangian dual of any program built here.
CopositiveProgram build_dual(const CpTensorProgram& prog);
CopositiveProgram dual_homogeneous(const CpTensorProgram& prog, const LiftingData& data);
CopositiveProgram dual_inhomogeneous(const CpTensorProgram& prog, const LiftingData& data);

// ---------------------------------------------------------------------------

/// Splits generators y_i of X = sum M_d(y_i) by a^T y_i > 0 (rescaled to z_i = y_i / lambda_i
/// with lambda_i = a^T y_i) versus a^T y_i = 0.
struct NormalizationSplit {
  std::vector<std::pair<Rational, RationalVector>> normalized;
  std::vector<RationalVector> recession;

  /// sum lambda_i^d M_d(z_i) + sum M_d(y_j).
  SymmetricTensor reconstruct(std::size_t order, std::size_t dim) const;
};

/// Throws InvalidArgument when some a^T y_i < 0 or lengths disagree.
NormalizationSplit normalization_split(std::span<const RationalVector> generators,
                                       std::span<const Rational> a);

}  // namespace cptp
