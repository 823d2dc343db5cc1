#include "cptp/symmetric_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cptp/error.hpp"

namespace cptp {

namespace {

void require_same_shape(const SymmetricTensor& a, const SymmetricTensor& b, const char* op) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    throw InvalidArgument(std::string(op) + ": shape mismatch (" + std::to_string(a.order()) + "," +
                          std::to_string(a.dim()) + ") vs (" + std::to_string(b.order()) + "," +
                          std::to_string(b.dim()) + ")");
  }
}

}  // namespace

SymmetricTensor::SymmetricTensor(std::size_t order, std::size_t dim) : order_(order), dim_(dim) {
  if (order == 0) throw InvalidArgument("symmetric tensor order must be >= 1");
  if (dim == 0) throw InvalidArgument("symmetric tensor dimension must be >= 1");
}

SymmetricTensor::SymmetricTensor(std::size_t order, std::size_t dim, EntryMap entries)
    : SymmetricTensor(order, dim) {
  for (auto it = entries.begin(); it != entries.end();) {
    const MultiIndex& key = it->first;
    if (key.order() != order_) {
      throw InvalidArgument("entry of order " + std::to_string(key.order()) +
                            " in tensor of order " + std::to_string(order_));
    }
    if (key.indices().back() >= dim_) {
      throw InvalidArgument("entry index " + std::to_string(key.indices().back()) +
                            " out of range for dimension " + std::to_string(dim_));
    }
    if (it->second == 0) {
      it = entries.erase(it);
    } else {
      ++it;
    }
  }
  entries_ = std::move(entries);
}

Rational SymmetricTensor::entry(std::span<const std::size_t> idx) const {
  if (idx.size() != order_) {
    throw InvalidArgument("index tuple of length " + std::to_string(idx.size()) +
                          " for tensor of order " + std::to_string(order_));
  }
  return entry(MultiIndex(idx, dim_));
}

Rational SymmetricTensor::entry(std::initializer_list<std::size_t> idx) const {
  return entry(std::span<const std::size_t>(idx.begin(), idx.size()));
}

Rational SymmetricTensor::entry(const MultiIndex& idx) const {
  if (idx.order() != order_ || (idx.order() > 0 && idx.indices().back() >= dim_)) {
    throw InvalidArgument("multi-index does not fit tensor shape");
  }
  const auto it = entries_.find(idx);
  return it == entries_.end() ? Rational(0) : it->second;
}

SymmetricTensor operator+(const SymmetricTensor& a, const SymmetricTensor& b) {
  require_same_shape(a, b, "tensor sum");
  SymmetricTensor::EntryMap out = a.entries();
  for (const auto& [key, value] : b.entries()) out[key] += value;
  return SymmetricTensor(a.order(), a.dim(), std::move(out));
}

SymmetricTensor operator-(const SymmetricTensor& a, const SymmetricTensor& b) {
  require_same_shape(a, b, "tensor difference");
  SymmetricTensor::EntryMap out = a.entries();
  for (const auto& [key, value] : b.entries()) out[key] -= value;
  return SymmetricTensor(a.order(), a.dim(), std::move(out));
}

SymmetricTensor operator*(const Rational& s, const SymmetricTensor& t) {
  SymmetricTensor::EntryMap out;
  if (s != 0) {
    for (const auto& [key, value] : t.entries()) out.emplace(key, s * value);
  }
  return SymmetricTensor(t.order(), t.dim(), std::move(out));
}

SymmetricTensor rank_one_power(std::span<const Rational> x, std::size_t order) {
  if (order == 0) throw InvalidArgument("rank_one_power: order must be >= 1");
  if (x.empty()) throw InvalidArgument("rank_one_power: empty vector");

  // Only indices with nonzero components contribute.
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) support.push_back(i);
  }
  SymmetricTensor::EntryMap entries;
  if (!support.empty()) {
    std::vector<std::size_t> idx(order);
    for_each_canonical(order, support.size(), [&](const MultiIndex& local) {
      Rational prod = 1;
      for (std::size_t k = 0; k < order; ++k) {
        idx[k] = support[local[k]];
        prod *= x[idx[k]];
      }
      entries.emplace(MultiIndex(idx, x.size()), prod);
    });
  }
  return SymmetricTensor(order, x.size(), std::move(entries));
}

Rational inner(const SymmetricTensor& a, const SymmetricTensor& b) {
  require_same_shape(a, b, "inner");
  const auto& small = a.nnz() <= b.nnz() ? a : b;
  const auto& large = a.nnz() <= b.nnz() ? b : a;
  Rational sum = 0;
  for (const auto& [key, value] : small.entries()) {
    const auto it = large.entries().find(key);
    if (it == large.entries().end()) continue;
    sum += Rational(static_cast<unsigned long>(key.multiplicity())) * value * it->second;
  }
  return sum;
}

Rational form_value(const SymmetricTensor& t, std::span<const Rational> x) {
  if (x.size() != t.dim()) {
    throw InvalidArgument("form_value: vector length " + std::to_string(x.size()) +
                          " != tensor dimension " + std::to_string(t.dim()));
  }
  Rational sum = 0;
  for (const auto& [key, value] : t.entries()) {
    Rational term = Rational(static_cast<unsigned long>(key.multiplicity())) * value;
    for (auto i : key.indices()) term *= x[i];
    sum += term;
  }
  return sum;
}

namespace detail {

// Orbit-by-orbit expansion; cheap when the input is sparse.
SymmetricTensor mode_multiply_sparse(const SymmetricTensor& t, const DenseMatrix& m) {
  const std::size_t d = t.order();
  // Result entry J = sum over stored orbits I of t_I * sum_{distinct perms pi of I} prod_k M(J_k, pi_k).
  struct Orbit {
    std::vector<std::vector<std::uint32_t>> perms;
    Rational value;
  };
  std::vector<Orbit> orbits;
  orbits.reserve(t.nnz());
  for (const auto& [key, value] : t.entries()) {
    Orbit orbit{{}, value};
    std::vector<std::uint32_t> perm(key.indices().begin(), key.indices().end());
    do {
      orbit.perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    orbits.push_back(std::move(orbit));
  }

  SymmetricTensor::EntryMap out;
  for_each_canonical(d, m.rows(), [&](const MultiIndex& target) {
    Rational total = 0;
    for (const auto& orbit : orbits) {
      Rational orbit_sum = 0;
      for (const auto& perm : orbit.perms) {
        Rational prod = 1;
        for (std::size_t k = 0; k < d && prod != 0; ++k) prod *= m(target[k], perm[k]);
        orbit_sum += prod;
      }
      if (orbit_sum != 0) total += orbit.value * orbit_sum;
    }
    if (total != 0) out.emplace(target, std::move(total));
  });
  return SymmetricTensor(d, m.rows(), std::move(out));
}

// Sequential single-mode contractions on a full dense array.
SymmetricTensor mode_multiply_dense(const SymmetricTensor& t, const DenseMatrix& m) {
  const std::size_t d = t.order();
  const std::size_t n = t.dim();
  const std::size_t p = m.rows();

  std::vector<std::size_t> shape(d, n);
  auto linear = [&](std::span<const std::uint32_t> idx, std::span<const std::size_t> dims) {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) pos = pos * dims[k] + idx[k];
    return pos;
  };

  std::size_t size = 1;
  for (auto s : shape) size *= s;
  std::vector<Rational> cur(size);
  for (const auto& [key, value] : t.entries()) {
    std::vector<std::uint32_t> perm(key.indices().begin(), key.indices().end());
    do {
      cur[linear(perm, shape)] = value;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  for (std::size_t k = 0; k < d; ++k) {
    std::size_t outer = 1;
    std::size_t inner_sz = 1;
    for (std::size_t j = 0; j < k; ++j) outer *= shape[j];
    for (std::size_t j = k + 1; j < d; ++j) inner_sz *= shape[j];
    std::vector<Rational> next(outer * p * inner_sz);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t in_base = (o * n + i) * inner_sz;
        for (std::size_t j = 0; j < p; ++j) {
          const Rational& coef = m(j, i);
          if (coef == 0) continue;
          const std::size_t out_base = (o * p + j) * inner_sz;
          for (std::size_t r = 0; r < inner_sz; ++r) {
            if (cur[in_base + r] != 0) next[out_base + r] += coef * cur[in_base + r];
          }
        }
      }
    }
    shape[k] = p;
    cur = std::move(next);
  }

  SymmetricTensor::EntryMap out;
  for_each_canonical(d, p, [&](const MultiIndex& target) {
    const Rational& value = cur[linear(target.indices(), shape)];
    if (value != 0) out.emplace(target, value);
  });
  return SymmetricTensor(d, p, std::move(out));
}

}  // namespace detail

SymmetricTensor mode_multiply_uniform(const SymmetricTensor& t, const DenseMatrix& m) {
  if (m.cols() != t.dim()) {
    throw InvalidArgument("mode product: matrix has " + std::to_string(m.cols()) +
                          " columns, tensor dimension is " + std::to_string(t.dim()));
  }
  if (m.rows() == 0) throw InvalidArgument("mode product: matrix has no rows");
  const std::size_t d = t.order();
  const double n = static_cast<double>(t.dim());
  const double p = static_cast<double>(m.rows());

  double sparse_cost = 0;
  for (const auto& entry : t.entries()) sparse_cost += static_cast<double>(entry.first.multiplicity());
  sparse_cost *= static_cast<double>(canonical_count(d, m.rows())) * static_cast<double>(d);

  double dense_cost = 0;
  for (std::size_t k = 1; k <= d; ++k) {
    dense_cost += std::pow(p, static_cast<double>(k)) * std::pow(n, static_cast<double>(d - k + 1));
  }
  const double dense_cells = std::pow(std::max(n, p), static_cast<double>(d));
  if (dense_cost < sparse_cost && dense_cells <= 4.0e6) return detail::mode_multiply_dense(t, m);
  return detail::mode_multiply_sparse(t, m);
}

bool adjoint_pairing_check(const SymmetricTensor& x, const SymmetricTensor& a, const DenseMatrix& m) {
  if (x.order() != a.order()) throw InvalidArgument("adjoint check: orders differ");
  if (x.dim() != m.rows() || a.dim() != m.cols()) {
    throw InvalidArgument("adjoint check: expected x in S^{d," + std::to_string(m.rows()) +
                          "} and a in S^{d," + std::to_string(m.cols()) + "}");
  }
  const Rational lhs = inner(x, mode_multiply_uniform(a, m));
  const Rational rhs = inner(mode_multiply_uniform(x, m.transpose()), a);
  return lhs == rhs;
}

}  // namespace cptp
