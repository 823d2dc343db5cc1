#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cptp/dense_matrix.hpp"
#include "cptp/rational.hpp"

namespace cptp {

/// Largest n + m handled by exact vertex enumeration.
inline constexpr std::size_t kDeskScaleCap = 12;

/// F = {x | Bx <= b, x >= 0}. Zero rows of B describe the nonnegative orthant.
class PolyhedralSet {
 public:
  PolyhedralSet(DenseMatrix B, RationalVector b);
  static PolyhedralSet orthant(std::size_t nvars);

  const DenseMatrix& B() const noexcept { return B_; }
  const RationalVector& b() const noexcept { return b_; }
  std::size_t nvars() const noexcept { return B_.cols(); }
  std::size_t nconstraints() const noexcept { return B_.rows(); }

  bool operator==(const PolyhedralSet&) const = default;

 private:
  DenseMatrix B_;
  RationalVector b_;
};

/// Explicit list of distinct feasible points.
class FiniteSet {
 public:
  explicit FiniteSet(std::vector<RationalVector> points);

  const std::vector<RationalVector>& points() const noexcept { return points_; }
  std::size_t nvars() const noexcept { return points_.front().size(); }

  bool operator==(const FiniteSet&) const = default;

 private:
  std::vector<RationalVector> points_;
};

/// Polyhedral cone {y | By <= 0, y >= 0}.
class ConeSet {
 public:
  explicit ConeSet(DenseMatrix B);

  const DenseMatrix& B() const noexcept { return B_; }
  std::size_t nvars() const noexcept { return B_.cols(); }
  bool contains(std::span<const Rational> y) const;

 private:
  DenseMatrix B_;
};

struct Box {
  RationalVector lower;
  RationalVector upper;

  bool contains(std::span<const Rational> x) const;
};

ConeSet recession_cone(const PolyhedralSet& f);
/// A finite set is bounded: its recession cone is {0}.
ConeSet recession_cone(const FiniteSet& f);

bool is_feasible(const PolyhedralSet& f, std::span<const Rational> x);
bool is_feasible(const FiniteSet& f, std::span<const Rational> x);

/// Basic feasible solutions of F, sorted lexicographically. Empty iff F is empty.
/// Throws ResourceLimit when n + m exceeds kDeskScaleCap.
std::vector<RationalVector> enumerate_vertices(const PolyhedralSet& f);

/// Extreme rays of the cone, each scaled so its components sum to 1. Empty iff the cone is {0}.
std::vector<RationalVector> extreme_rays(const ConeSet& cone);

/// Decides exactly whether alpha^T x <= 1 on all of F (vacuously true when F is empty).
/// Throws InvalidArgument for negative or mis-sized alpha, ResourceLimit above the cap.
bool alpha_certificate(const PolyhedralSet& f, std::span<const Rational> alpha);

/// Per-coordinate [0, max over vertices] box, or nullopt when F is unbounded.
/// Throws Infeasible when F is empty.
std::optional<Box> bounding_box(const PolyhedralSet& f);

}  // namespace cptp
