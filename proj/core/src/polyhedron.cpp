#include "cptp/polyhedron.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>

#include "cptp/error.hpp"

namespace cptp {

namespace {

// Solves the square system M x = r exactly; nullopt when M is singular.
std::optional<RationalVector> solve_square(std::vector<RationalVector> m, RationalVector r) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(r[pivot], r[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
      r[row] -= factor * r[col];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / m[i][i];
  return x;
}

struct LinearSystem {
  std::vector<RationalVector> ineq_rows;  // rows g with g.x <= h
  RationalVector ineq_rhs;
  std::vector<RationalVector> eq_rows;
  RationalVector eq_rhs;
};

// Inequalities Bx <= h followed by -x <= 0.
LinearSystem orthant_system(const DenseMatrix& B, const RationalVector& h) {
  LinearSystem sys;
  const std::size_t n = B.cols();
  for (std::size_t r = 0; r < B.rows(); ++r) {
    sys.ineq_rows.emplace_back(B.row(r).begin(), B.row(r).end());
    sys.ineq_rhs.push_back(h[r]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector row(n, 0);
    row[i] = -1;
    sys.ineq_rows.push_back(std::move(row));
    sys.ineq_rhs.push_back(0);
  }
  return sys;
}

std::vector<RationalVector> vertices_of(const LinearSystem& sys, std::size_t n) {
  const std::size_t k_total = sys.ineq_rows.size();
  if (k_total > kDeskScaleCap) {
    throw ResourceLimit("vertex enumeration capped at n + m <= " + std::to_string(kDeskScaleCap) +
                        " (got " + std::to_string(k_total) + ")");
  }
  const std::size_t active = n - sys.eq_rows.size();
  std::set<RationalVector> found;
  for (std::uint32_t mask = 0; mask < (1u << k_total); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != active) continue;
    std::vector<RationalVector> rows = sys.eq_rows;
    RationalVector rhs = sys.eq_rhs;
    for (std::size_t k = 0; k < k_total; ++k) {
      if (mask & (1u << k)) {
        rows.push_back(sys.ineq_rows[k]);
        rhs.push_back(sys.ineq_rhs[k]);
      }
    }
    auto x = solve_square(std::move(rows), std::move(rhs));
    if (!x) continue;
    bool ok = true;
    for (std::size_t k = 0; k < k_total && ok; ++k) {
      ok = dot(sys.ineq_rows[k], *x) <= sys.ineq_rhs[k];
    }
    if (ok) found.insert(std::move(*x));
  }
  return {found.begin(), found.end()};
}

}  // namespace

PolyhedralSet::PolyhedralSet(DenseMatrix B, RationalVector b) : B_(std::move(B)), b_(std::move(b)) {
  if (B_.rows() != b_.size()) {
    throw InvalidArgument("polyhedral set: B has " + std::to_string(B_.rows()) + " rows but b has " +
                          std::to_string(b_.size()) + " entries");
  }
  if (B_.cols() == 0) throw InvalidArgument("polyhedral set: no variables");
}

PolyhedralSet PolyhedralSet::orthant(std::size_t nvars) {
  return PolyhedralSet(DenseMatrix(0, nvars), {});
}

FiniteSet::FiniteSet(std::vector<RationalVector> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("finite set: no points");
  const std::size_t n = points_.front().size();
  if (n == 0) throw InvalidArgument("finite set: points have no coordinates");
  std::set<RationalVector> seen;
  for (const auto& p : points_) {
    if (p.size() != n) throw InvalidArgument("finite set: points of unequal length");
    if (!seen.insert(p).second) throw InvalidArgument("finite set: duplicate point");
  }
}

ConeSet::ConeSet(DenseMatrix B) : B_(std::move(B)) {}

bool ConeSet::contains(std::span<const Rational> y) const {
  if (y.size() != nvars()) throw InvalidArgument("cone membership: length mismatch");
  if (std::any_of(y.begin(), y.end(), [](const Rational& v) { return v < 0; })) return false;
  const auto by = B_.apply(y);
  return std::all_of(by.begin(), by.end(), [](const Rational& v) { return v <= 0; });
}

bool Box::contains(std::span<const Rational> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

ConeSet recession_cone(const PolyhedralSet& f) { return ConeSet(f.B()); }

ConeSet recession_cone(const FiniteSet& f) { return ConeSet(DenseMatrix::identity(f.nvars())); }

bool is_feasible(const PolyhedralSet& f, std::span<const Rational> x) {
  if (x.size() != f.nvars()) {
    throw InvalidArgument("feasibility check: point of length " + std::to_string(x.size()) +
                          " for set in R^" + std::to_string(f.nvars()));
  }
  if (std::any_of(x.begin(), x.end(), [](const Rational& v) { return v < 0; })) return false;
  const auto bx = f.B().apply(x);
  for (std::size_t r = 0; r < bx.size(); ++r) {
    if (bx[r] > f.b()[r]) return false;
  }
  return true;
}

bool is_feasible(const FiniteSet& f, std::span<const Rational> x) {
  if (x.size() != f.nvars()) throw InvalidArgument("feasibility check: length mismatch");
  return std::any_of(f.points().begin(), f.points().end(),
                     [&](const RationalVector& p) { return std::equal(p.begin(), p.end(), x.begin()); });
}

std::vector<RationalVector> enumerate_vertices(const PolyhedralSet& f) {
  return vertices_of(orthant_system(f.B(), f.b()), f.nvars());
}

std::vector<RationalVector> extreme_rays(const ConeSet& cone) {
  // Vertices of the cross-section {y in cone | sum y = 1}.
  LinearSystem sys = orthant_system(cone.B(), RationalVector(cone.B().rows(), 0));
  sys.eq_rows.push_back(RationalVector(cone.nvars(), 1));
  sys.eq_rhs.push_back(1);
  return vertices_of(sys, cone.nvars());
}

bool alpha_certificate(const PolyhedralSet& f, std::span<const Rational> alpha) {
  if (alpha.size() != f.nvars()) {
    throw InvalidArgument("alpha has length " + std::to_string(alpha.size()) + ", expected " +
                          std::to_string(f.nvars()));
  }
  if (std::any_of(alpha.begin(), alpha.end(), [](const Rational& v) { return v < 0; })) {
    throw InvalidArgument("alpha must be componentwise nonnegative");
  }
  const auto vertices = enumerate_vertices(f);
  if (vertices.empty()) return true;
  for (const auto& v : vertices) {
    if (dot(alpha, v) > 1) return false;
  }
  for (const auto& ray : extreme_rays(recession_cone(f))) {
    if (dot(alpha, ray) > 0) return false;
  }
  return true;
}

std::optional<Box> bounding_box(const PolyhedralSet& f) {
  const auto vertices = enumerate_vertices(f);
  if (vertices.empty()) throw Infeasible("feasible set is empty");
  if (!extreme_rays(recession_cone(f)).empty()) return std::nullopt;
  Box box{RationalVector(f.nvars(), 0), RationalVector(f.nvars(), 0)};
  for (const auto& v : vertices) {
    for (std::size_t i = 0; i < v.size(); ++i) box.upper[i] = std::max(box.upper[i], v[i]);
  }
  return box;
}

}  // namespace cptp
