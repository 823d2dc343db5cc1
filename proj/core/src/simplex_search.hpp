#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cptp/symmetric_tensor.hpp"

namespace cptp::detail {

/// Floating-point evaluator for x -> <t, M_d(x)>.
class CompiledForm {
 public:
  explicit CompiledForm(const SymmetricTensor& t);

  double operator()(std::span<const double> x) const;
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
  std::size_t order_;
  std::vector<double> coef_;
  std::vector<std::uint32_t> idx_;
};

struct SimplexSearchOptions {
  std::size_t depth = 4;
  std::size_t threads = 0;
  std::uint64_t max_points = 2'000'000;
};

struct SimplexSearchResult {
  /// Minimum over every lattice point and polished point.
  double best_value;
  std::vector<double> best_point;
  /// Best lattice point as integer counts over `lattice_denominator`.
  double lattice_value;
  std::vector<std::uint64_t> lattice_counts;
  std::uint64_t lattice_denominator;
  std::uint64_t evaluations;
};

using SimplexObjective = std::function<double(std::span<const double>)>;

/// Minimizes `objective` over the standard simplex in R^dim.
///
/// Level 0 scans the full lattice with denominator 8. Level l in 1..depth doubles the
/// denominator and rescans a fixed-radius lattice neighborhood of the previous level's
/// best points, so the searched region halves per level. Each level's best point is
/// then polished by pairwise mass-transfer descent. The reported minimum ranges over
/// every evaluated point, so it never increases with depth.
/// Throws ResourceLimit when the level-0 lattice exceeds max_points.
SimplexSearchResult minimize_on_simplex(std::size_t dim, const SimplexObjective& objective,
                                        const SimplexSearchOptions& options);

/// Worker count: `requested` if nonzero, else hardware concurrency; capped by CPTP_THREADS.
std::size_t resolve_threads(std::size_t requested);

}  // namespace cptp::detail
