#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cptp/polyhedron.hpp"
#include "cptp/polynomial.hpp"
#include "cptp/symmetric_tensor.hpp"

namespace cptp {

enum class ProblemKind { Homogeneous, Inhomogeneous };

std::string_view to_string(ProblemKind kind);
/// Accepts "homogeneous" / "inhomogeneous". Throws ParseError otherwise.
ProblemKind parse_problem_kind(std::string_view text);

using FeasibleSet = std::variant<PolyhedralSet, FiniteSet>;

/// min f(x) s.t. x in F. Attainment of the minimum is a caller assertion; nothing here decides it.
class PopInstance {
 public:
  /// Throws InvalidArgument if variable counts disagree or a homogeneous
  /// instance has a non-homogeneous objective.
  PopInstance(Polynomial objective, FeasibleSet feasible, ProblemKind kind);

  const Polynomial& objective() const noexcept { return objective_; }
  const FeasibleSet& feasible() const noexcept { return feasible_; }
  ProblemKind kind() const noexcept { return kind_; }
  std::size_t nvars() const noexcept { return objective_.nvars(); }

  const PolyhedralSet* polyhedral() const { return std::get_if<PolyhedralSet>(&feasible_); }
  const FiniteSet* finite() const { return std::get_if<FiniteSet>(&feasible_); }

 private:
  Polynomial objective_;
  FeasibleSet feasible_;
  ProblemKind kind_;
};

ConeSet recession_cone(const FeasibleSet& f);

struct BruteForceOptions {
  /// Grid steps per axis; 0 picks the finest grid with at most kMaxGridPoints points.
  std::size_t resolution = 0;
  /// Required when the polyhedron is unbounded; derived from the vertices otherwise.
  std::optional<Box> box;
  bool refine = true;
  /// Random recession directions tried by the unboundedness test (on top of the extreme rays).
  std::size_t direction_samples = 64;
  std::uint64_t seed = 0x5eedULL;
  double tie_tolerance = 1e-9;
};

inline constexpr std::size_t kMaxGridPoints = 100000;

enum class SolveStatus {
  Attained,       ///< whole feasible set covered (finite set, or bounded polyhedron)
  BoxRestricted,  ///< unbounded polyhedron searched inside the box; no descent direction found
};

struct BruteForceResult {
  SolveStatus status = SolveStatus::Attained;
  /// Best exactly evaluated objective value.
  Rational value;
  /// Best value on the grid before local refinement (equals value for finite sets).
  Rational grid_value;
  /// True when `value` is the exact optimum (finite feasible sets).
  bool exact = false;
  /// Every evaluated point within the tie tolerance of `value`, sorted lexicographically.
  std::vector<RationalVector> argmins;
  std::size_t evaluations = 0;
};

/// Desk-scale global minimization: exact enumeration for finite sets, feasible grid
/// scan plus coordinate refinement for polyhedra.
/// Throws Infeasible for an empty feasible set, Unbounded when a sampled recession
/// direction makes the leading form negative, InvalidArgument when an unbounded
/// polyhedron comes without a box.
BruteForceResult brute_force_solve(const PopInstance& p, const BruteForceOptions& options = {});

/// Extreme rays, their centroid and pairwise midpoints, plus `random_count` random
/// nonnegative combinations; every direction is normalized to sum 1. Empty when the cone is {0}.
std::vector<RationalVector> sample_cone_directions(const ConeSet& cone, std::size_t random_count,
                                                   std::uint64_t seed);

/// Vertices first, then random convex combinations of vertices plus random ray multiples.
/// Throws Infeasible when F is empty.
std::vector<RationalVector> sample_feasible_points(const PolyhedralSet& f, std::size_t count,
                                                   std::uint64_t seed);

struct RecessionCheck {
  bool holds = true;
  std::optional<RationalVector> witness;
  std::size_t directions_checked = 0;
};

/// Verifies the leading form is nonnegative on sampled recession directions; a minimizer
/// can only exist when it is. Bounded feasible sets pass vacuously.
RecessionCheck recession_nonnegativity_check(const PopInstance& p, std::size_t samples, std::uint64_t seed = 0x5eedULL);

/// min <t, M_d(x)> over the nonnegative orthant; t is copositive iff the optimum is 0.
PopInstance copositivity_pop(const SymmetricTensor& t);

}  // namespace cptp
