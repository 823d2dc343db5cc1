#pragma once

#include <random>
#include <vector>

#include "cptp/dense_matrix.hpp"
#include "cptp/multi_index.hpp"
#include "cptp/polynomial.hpp"
#include "cptp/symmetric_tensor.hpp"

namespace bench {

inline cptp::RationalVector vector(std::size_t n, std::mt19937& g) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  cptp::RationalVector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(cptp::Rational(num(g), den(g)));
  for (auto& x : v) x.canonicalize();
  return v;
}

inline cptp::SymmetricTensor tensor(std::size_t d, std::size_t n, std::mt19937& g) {
  cptp::SymmetricTensor t(d, n);
  for (const auto& x : {vector(n, g), vector(n, g), vector(n, g)}) t = t + cptp::rank_one_power(x, d);
  return t - cptp::rank_one_power(vector(n, g), d);
}

inline cptp::DenseMatrix matrix(std::size_t rows, std::size_t cols, std::mt19937& g) {
  std::vector<cptp::RationalVector> r;
  for (std::size_t i = 0; i < rows; ++i) r.push_back(vector(cols, g));
  return cptp::DenseMatrix::from_rows(r, cols);
}

// Every monomial of degree <= d, via canonical indices over {1, x_1, ..., x_n}.
inline cptp::Polynomial dense_polynomial(std::size_t n, std::size_t d, std::mt19937& g) {
  std::vector<cptp::Term> terms;
  std::uniform_int_distribution<int> coef(-5, 5);
  cptp::for_each_canonical(d, n + 1, [&](const cptp::MultiIndex& m) {
    cptp::Exponent e(n, 0);
    for (auto i : m.indices()) {
      if (i > 0) ++e[i - 1];
    }
    terms.push_back({cptp::Rational(coef(g)), e});
  });
  return cptp::Polynomial(n, terms);
}

}  // namespace bench
