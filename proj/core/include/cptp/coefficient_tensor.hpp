#pragma once

#include <cstddef>

#include "cptp/polynomial.hpp"
#include "cptp/symmetric_tensor.hpp"

namespace cptp {

/// Coefficient tensor of f in S^{order, n+1} with f(x) = <A_f, M_order(1, x)>.
///
/// Index 0 is the homogenizing (constant) slot and variable i maps to index i+1.
/// A term f_alpha x^alpha fills its orbit with (order-|alpha|)! alpha_1! ... alpha_n! / order! * f_alpha.
/// Throws InvalidArgument if order < 1 or order < deg f.
SymmetricTensor coefficient_tensor(const Polynomial& f, std::size_t order);

/// Tensor of a homogeneous f in S^{order, n} with f(x) = <A, M_order(x)>; variable i maps to index i.
/// Throws InvalidArgument if some term does not have degree `order`.
SymmetricTensor homogeneous_tensor(const Polynomial& f, std::size_t order);

/// Same, with order = deg f. Throws InvalidArgument for the zero polynomial.
SymmetricTensor homogeneous_tensor(const Polynomial& f);

/// Inverse of coefficient_tensor: multiplicity x entry recovers each coefficient.
Polynomial polynomial_from_coefficient_tensor(const SymmetricTensor& t);

/// The homogeneous form x -> <t, M_d(x)> as a polynomial in t.dim() variables.
Polynomial form_polynomial(const SymmetricTensor& t);

/// Zero-padding embedding into a larger dimension: entries with every index
/// below t.dim() are copied, the rest are zero. Throws if new_dim < t.dim().
SymmetricTensor embed_tensor(const SymmetricTensor& t, std::size_t new_dim);

}  // namespace cptp
