#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace cptp {

/// Canonical (non-decreasing) index tuple of a symmetric tensor entry orbit.
class MultiIndex {
 public:
  MultiIndex() = default;

  /// Sorts `indices` into canonical form. Throws InvalidArgument if the tuple is
  /// empty or any index is >= dim.
  MultiIndex(std::span<const std::size_t> indices, std::size_t dim);
  MultiIndex(std::initializer_list<std::size_t> indices, std::size_t dim);

  std::size_t order() const noexcept { return indices_.size(); }
  std::span<const std::uint32_t> indices() const noexcept { return indices_; }
  std::uint32_t operator[](std::size_t k) const { return indices_[k]; }

  /// Number of distinct tuples in the orbit: d! / prod(count_i!).
  std::uint64_t multiplicity() const;

  /// Occurrences of index `i` in the tuple.
  std::size_t count(std::uint32_t i) const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<std::uint32_t> indices_;
};

/// d! / prod(m_i!) for the multiset given by `counts` (zeros allowed).
std::uint64_t orbit_multiplicity(std::span<const std::uint32_t> counts);

/// Number of canonical indices of order `order` in dimension `dim`: C(dim + order - 1, order).
std::uint64_t canonical_count(std::size_t order, std::size_t dim);

/// Visits every canonical index of (order, dim) in lexicographic order.
template <typename Fn>
void for_each_canonical(std::size_t order, std::size_t dim, Fn&& fn) {
  if (order == 0 || dim == 0) return;
  std::vector<std::size_t> idx(order, 0);
  while (true) {
    fn(MultiIndex(idx, dim));
    std::size_t k = order;
    while (k > 0 && idx[k - 1] == dim - 1) --k;
    if (k == 0) return;
    const std::size_t next = idx[k - 1] + 1;
    for (std::size_t j = k - 1; j < order; ++j) idx[j] = next;
  }
}

}  // namespace cptp
