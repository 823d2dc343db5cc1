#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cptp/conic.hpp"
#include "cptp/rational.hpp"
#include "cptp/symmetric_tensor.hpp"

namespace cptp {

enum class CopositivityStatus { Copositive, NotCopositive, Inconclusive };

std::string_view to_string(CopositivityStatus s);

struct OracleOptions {
  /// Refinement levels past the base lattice; the searched neighborhood halves per level.
  std::size_t depth = 4;
  double tol = 1e-8;
  /// 0 selects hardware concurrency. CPTP_THREADS caps either choice.
  std::size_t threads = 0;
  /// Largest admissible base lattice; bigger instances raise ResourceLimit.
  std::uint64_t max_lattice_points = 2'000'000;
};

/// Result of a simplex-lattice copositivity test.
///
/// `margin` is the smallest value of T x^d seen on the unit simplex. It is an upper bound
/// on the true minimum, so Copositive is approximate: the minimum may still lie below
/// -tol at points the search never visited. NotCopositive is exact: `witness` is a
/// nonnegative rational point with T witness^d = witness_value < -tol.
struct CopositivityVerdict {
  CopositivityStatus status;
  double margin;
  std::optional<RationalVector> witness;
  std::optional<Rational> witness_value;
  std::size_t depth;
  double tol;
  std::uint64_t evaluations;
};

CopositivityVerdict copositive_check(const SymmetricTensor& t, const OracleOptions& options = {});

// ---------------------------------------------------------------------------

struct WeightedAtom {
  Rational weight;
  RationalVector vector;
};

/// X = sum weight_i * M_order(vector_i), all weights and vectors nonnegative.
struct AtomDecomposition {
  std::size_t order;
  std::size_t dim;
  std::vector<WeightedAtom> atoms;
};

/// Exact reconstruction. Throws InvalidArgument on a negative weight or component,
/// or a vector whose length differs from dim.
SymmetricTensor cp_reconstruct(const AtomDecomposition& decomposition);

struct ConstraintCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct FeasibilityReport {
  std::vector<ConstraintCheck> checks;
  bool passed() const;
};

/// Verifies a candidate primal point given by its atoms: every equality exactly, and
/// every membership map by checking that each atom image M v is >= -tol componentwise
/// (which certifies X x M...M completely positive).
FeasibilityReport cptp_feasibility_check(const CpTensorProgram& prog, const AtomDecomposition& x,
                                         double tol = 1e-8);

/// Assembles the dual expression and tests it. Throws InvalidArgument if a multiplier
/// is shown not to be copositive.
CopositivityVerdict dual_feasibility_check(const CopositiveProgram& dual, const DualAssignment& assignment,
                                           const OracleOptions& options = {});

struct BoundResult {
  /// min over the simplex of base(x) / (v^T x)^d, the largest feasible first scalar
  /// when the remaining scalars and the multipliers are pinned to zero.
  double lambda;
  std::vector<double> minimizer;
  std::uint64_t evaluations;
};

/// Throws InvalidArgument when the normalization vector v is not componentwise positive.
BoundResult bound_solve(const CopositiveProgram& dual, const OracleOptions& options = {});

struct ProbeResult {
  bool found;
  DualAssignment assignment;
  CopositivityVerdict verdict;
  std::size_t attempts;
};

/// Searches lambda = -1, -2, -4, ... (mu = lambda / 2 where present, multipliers zero)
/// for a strictly feasible dual point: Copositive with margin > tol.
/// Throws InvalidArgument unless the lift vector is componentwise positive.
ProbeResult strict_feasibility_probe(const CopositiveProgram& dual, const OracleOptions& options = {},
                                     std::size_t max_doublings = 40);

}  // namespace cptp
