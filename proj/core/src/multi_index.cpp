#include "cptp/multi_index.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cptp/error.hpp"

namespace cptp {

namespace {

constexpr std::size_t kMaxOrder = 20;  // 20! still fits in uint64

std::uint64_t factorial_u64(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

MultiIndex::MultiIndex(std::span<const std::size_t> indices, std::size_t dim) {
  if (indices.empty()) throw InvalidArgument("multi-index must have order >= 1");
  indices_.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= dim) {
      throw InvalidArgument("index " + std::to_string(i) + " out of range for dimension " +
                            std::to_string(dim));
    }
    indices_.push_back(static_cast<std::uint32_t>(i));
  }
  std::sort(indices_.begin(), indices_.end());
}

MultiIndex::MultiIndex(std::initializer_list<std::size_t> indices, std::size_t dim)
    : MultiIndex(std::span<const std::size_t>(indices.begin(), indices.size()), dim) {}

std::size_t MultiIndex::count(std::uint32_t i) const {
  const auto range = std::equal_range(indices_.begin(), indices_.end(), i);
  return static_cast<std::size_t>(range.second - range.first);
}

std::uint64_t MultiIndex::multiplicity() const {
  std::vector<std::uint32_t> counts;
  for (std::size_t k = 0; k < indices_.size();) {
    std::size_t j = k;
    while (j < indices_.size() && indices_[j] == indices_[k]) ++j;
    counts.push_back(static_cast<std::uint32_t>(j - k));
    k = j;
  }
  return orbit_multiplicity(counts);
}

std::uint64_t orbit_multiplicity(std::span<const std::uint32_t> counts) {
  // Keyed by the sorted count signature; each thread owns its cache.
  thread_local std::map<std::vector<std::uint32_t>, std::uint64_t> cache;

  std::vector<std::uint32_t> signature;
  std::size_t order = 0;
  for (auto c : counts) {
    if (c == 0) continue;
    signature.push_back(c);
    order += c;
  }
  if (order > kMaxOrder) {
    throw ResourceLimit("tensor order " + std::to_string(order) + " exceeds supported maximum " +
                        std::to_string(kMaxOrder));
  }
  std::sort(signature.begin(), signature.end());
  if (auto it = cache.find(signature); it != cache.end()) return it->second;

  std::uint64_t value = factorial_u64(order);
  for (auto c : signature) value /= factorial_u64(c);
  cache.emplace(std::move(signature), value);
  return value;
}

std::uint64_t canonical_count(std::size_t order, std::size_t dim) {
  if (order == 0 || dim == 0) return 0;
  // C(dim + order - 1, order), computed incrementally so intermediates stay exact.
  std::uint64_t result = 1;
  for (std::size_t k = 1; k <= order; ++k) {
    result = result * (dim - 1 + k) / k;
  }
  return result;
}

}  // namespace cptp
