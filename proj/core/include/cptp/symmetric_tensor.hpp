#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>

#include "cptp/dense_matrix.hpp"
#include "cptp/multi_index.hpp"
#include "cptp/rational.hpp"

namespace cptp {

/// Order-d, dimension-n symmetric tensor with exact rational entries.
///
/// Each permutation orbit is stored once, keyed by its canonical MultiIndex.
/// Absent keys read as zero; explicit zeros passed to the constructor are
/// dropped, so two equal tensors always compare equal.
class SymmetricTensor {
 public:
  using EntryMap = std::map<MultiIndex, Rational>;

  SymmetricTensor(std::size_t order, std::size_t dim);
  /// Throws InvalidArgument if a key has the wrong order or an index >= dim.
  SymmetricTensor(std::size_t order, std::size_t dim, EntryMap entries);

  std::size_t order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return dim_; }
  const EntryMap& entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }

  /// Value at any (not necessarily sorted) index tuple.
  Rational entry(std::span<const std::size_t> idx) const;
  Rational entry(std::initializer_list<std::size_t> idx) const;
  Rational entry(const MultiIndex& idx) const;

  bool operator==(const SymmetricTensor&) const = default;

 private:
  std::size_t order_;
  std::size_t dim_;
  EntryMap entries_;
};

SymmetricTensor operator+(const SymmetricTensor& a, const SymmetricTensor& b);
SymmetricTensor operator-(const SymmetricTensor& a, const SymmetricTensor& b);
SymmetricTensor operator*(const Rational& s, const SymmetricTensor& t);

/// M_d(x): the d-fold outer power of x.
SymmetricTensor rank_one_power(std::span<const Rational> x, std::size_t order);

/// Full-index-space inner product, computed as a multiplicity-weighted sum over orbits.
Rational inner(const SymmetricTensor& a, const SymmetricTensor& b);

/// The homogeneous form A x^d = <A, M_d(x)>.
Rational form_value(const SymmetricTensor& t, std::span<const Rational> x);

/// T x_1 M x_2 M ... x_d M for a p-by-n matrix M; the result has dimension p.
SymmetricTensor mode_multiply_uniform(const SymmetricTensor& t, const DenseMatrix& m);

/// Exact check of <x, a x M...M> == <x x M^T...M^T, a>, with x in S^{d,p},
/// a in S^{d,n} and M p-by-n.
bool adjoint_pairing_check(const SymmetricTensor& x, const SymmetricTensor& a, const DenseMatrix& m);

namespace detail {
// The two evaluation strategies behind mode_multiply_uniform; shapes are not re-checked.
SymmetricTensor mode_multiply_sparse(const SymmetricTensor& t, const DenseMatrix& m);
SymmetricTensor mode_multiply_dense(const SymmetricTensor& t, const DenseMatrix& m);
}  // namespace detail

}  // namespace cptp
