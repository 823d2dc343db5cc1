#include "cptp/coefficient_tensor.hpp"

#include <string>
#include <vector>

#include "cptp/error.hpp"

namespace cptp {

namespace {

// alpha_0! alpha_1! ... / d!, where alpha_0 is the count of the slot index (if any).
Rational multinomial_weight(std::size_t order, std::size_t slot_count, const Exponent& exp) {
  Rational num = factorial(static_cast<unsigned>(slot_count));
  for (auto e : exp) num *= factorial(e);
  return num / factorial(static_cast<unsigned>(order));
}

std::vector<std::size_t> orbit_indices(std::size_t slot_count, const Exponent& exp, std::size_t offset) {
  std::vector<std::size_t> idx(slot_count, 0);
  for (std::size_t i = 0; i < exp.size(); ++i) idx.insert(idx.end(), exp[i], i + offset);
  return idx;
}

}  // namespace

SymmetricTensor coefficient_tensor(const Polynomial& f, std::size_t order) {
  if (order < 1) throw InvalidArgument("coefficient_tensor: order must be >= 1");
  if (order < f.degree()) {
    throw InvalidArgument("coefficient_tensor: order " + std::to_string(order) +
                          " below polynomial degree " + std::to_string(f.degree()));
  }
  const std::size_t dim = f.nvars() + 1;
  SymmetricTensor::EntryMap entries;
  for (const auto& [exp, coef] : f.terms()) {
    const std::size_t slot = order - total_degree(exp);
    entries.emplace(MultiIndex(orbit_indices(slot, exp, 1), dim),
                    multinomial_weight(order, slot, exp) * coef);
  }
  return SymmetricTensor(order, dim, std::move(entries));
}

SymmetricTensor homogeneous_tensor(const Polynomial& f, std::size_t order) {
  if (order < 1) throw InvalidArgument("homogeneous_tensor: order must be >= 1");
  if (f.nvars() == 0) throw InvalidArgument("homogeneous_tensor: polynomial has no variables");
  if (!f.is_homogeneous_of(order)) {
    throw InvalidArgument("homogeneous_tensor: polynomial is not homogeneous of degree " +
                          std::to_string(order));
  }
  SymmetricTensor::EntryMap entries;
  for (const auto& [exp, coef] : f.terms()) {
    entries.emplace(MultiIndex(orbit_indices(0, exp, 0), f.nvars()),
                    multinomial_weight(order, 0, exp) * coef);
  }
  return SymmetricTensor(order, f.nvars(), std::move(entries));
}

SymmetricTensor homogeneous_tensor(const Polynomial& f) {
  if (f.is_zero()) throw InvalidArgument("homogeneous_tensor: zero polynomial has no degree");
  return homogeneous_tensor(f, f.degree());
}

Polynomial polynomial_from_coefficient_tensor(const SymmetricTensor& t) {
  const std::size_t nvars = t.dim() - 1;
  std::vector<Term> terms;
  for (const auto& [key, value] : t.entries()) {
    Exponent exp(nvars, 0);
    for (auto i : key.indices()) {
      if (i > 0) ++exp[i - 1];
    }
    terms.push_back({Rational(static_cast<unsigned long>(key.multiplicity())) * value, std::move(exp)});
  }
  return Polynomial(nvars, std::move(terms));
}

Polynomial form_polynomial(const SymmetricTensor& t) {
  std::vector<Term> terms;
  for (const auto& [key, value] : t.entries()) {
    Exponent exp(t.dim(), 0);
    for (auto i : key.indices()) ++exp[i];
    terms.push_back({Rational(static_cast<unsigned long>(key.multiplicity())) * value, std::move(exp)});
  }
  return Polynomial(t.dim(), std::move(terms));
}

SymmetricTensor embed_tensor(const SymmetricTensor& t, std::size_t new_dim) {
  if (new_dim < t.dim()) {
    throw InvalidArgument("embed_tensor: target dimension " + std::to_string(new_dim) +
                          " smaller than " + std::to_string(t.dim()));
  }
  return SymmetricTensor(t.order(), new_dim, t.entries());
}

}  // namespace cptp
