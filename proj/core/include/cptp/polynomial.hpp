#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cptp/rational.hpp"

namespace cptp {

using Exponent = std::vector<std::uint32_t>;

struct Term {
  Rational coefficient;
  Exponent exponent;
};

/// Sparse multivariate polynomial with exact coefficients.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit Polynomial(std::size_t nvars);
  /// Duplicate exponents are merged and zero coefficients dropped.
  /// Throws InvalidArgument if an exponent has the wrong length.
  Polynomial(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Max total degree over stored terms; 0 for the zero polynomial.
  std::size_t degree() const noexcept { return degree_; }

  /// True when every stored term has total degree `d`. The zero polynomial is homogeneous of any degree.
  bool is_homogeneous_of(std::size_t d) const;
  bool is_homogeneous() const { return is_homogeneous_of(degree_); }

  std::vector<Term> term_list() const;

  bool operator==(const Polynomial& other) const {
    return nvars_ == other.nvars_ && terms_ == other.terms_;
  }

 private:
  std::size_t nvars_;
  TermMap terms_;
  std::size_t degree_ = 0;
};

std::size_t total_degree(const Exponent& e);

/// Homogeneous parts indexed by degree; part j is homogeneous of degree j or zero.
struct HomoDecomposition {
  std::vector<Polynomial> parts;

  Polynomial recombine() const;
};

Rational evaluate(const Polynomial& f, std::span<const Rational> x);

/// The highest-degree homogeneous component. Throws InvalidArgument for the zero polynomial.
Polynomial top_component(const Polynomial& f);

HomoDecomposition decompose(const Polynomial& f);

/// Adds `extra` trailing variables that appear in no term.
Polynomial append_variables(const Polynomial& f, std::size_t extra);

}  // namespace cptp
