#include "cptp/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cptp/error.hpp"

namespace cptp {

std::size_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::size_t{0});
}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {}

Polynomial::Polynomial(std::size_t nvars, std::vector<Term> terms) : nvars_(nvars) {
  for (auto& term : terms) {
    if (term.exponent.size() != nvars_) {
      throw InvalidArgument("exponent of length " + std::to_string(term.exponent.size()) +
                            " in polynomial with " + std::to_string(nvars_) + " variables");
    }
    terms_[std::move(term.exponent)] += term.coefficient;
  }
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
  for (const auto& [exp, coef] : terms_) degree_ = std::max(degree_, total_degree(exp));
}

bool Polynomial::is_homogeneous_of(std::size_t d) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& kv) { return total_degree(kv.first) == d; });
}

std::vector<Term> Polynomial::term_list() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [exp, coef] : terms_) out.push_back({coef, exp});
  return out;
}

Polynomial HomoDecomposition::recombine() const {
  if (parts.empty()) return Polynomial(0);
  std::vector<Term> all;
  for (const auto& part : parts) {
    auto list = part.term_list();
    all.insert(all.end(), list.begin(), list.end());
  }
  return Polynomial(parts.front().nvars(), std::move(all));
}

Rational evaluate(const Polynomial& f, std::span<const Rational> x) {
  if (x.size() != f.nvars()) {
    throw InvalidArgument("evaluate: point of length " + std::to_string(x.size()) +
                          " for polynomial in " + std::to_string(f.nvars()) + " variables");
  }
  Rational sum = 0;
  for (const auto& [exp, coef] : f.terms()) {
    Rational term = coef;
    for (std::size_t i = 0; i < exp.size(); ++i) {
      for (std::uint32_t k = 0; k < exp[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial top_component(const Polynomial& f) {
  if (f.is_zero()) throw InvalidArgument("top_component: zero polynomial has no leading part");
  std::vector<Term> top;
  for (const auto& [exp, coef] : f.terms()) {
    if (total_degree(exp) == f.degree()) top.push_back({coef, exp});
  }
  return Polynomial(f.nvars(), std::move(top));
}

HomoDecomposition decompose(const Polynomial& f) {
  std::vector<std::vector<Term>> buckets(f.degree() + 1);
  for (const auto& [exp, coef] : f.terms()) buckets[total_degree(exp)].push_back({coef, exp});
  HomoDecomposition out;
  out.parts.reserve(buckets.size());
  for (auto& bucket : buckets) out.parts.emplace_back(f.nvars(), std::move(bucket));
  return out;
}

Polynomial append_variables(const Polynomial& f, std::size_t extra) {
  std::vector<Term> terms;
  for (const auto& [exp, coef] : f.terms()) {
    Exponent padded = exp;
    padded.resize(exp.size() + extra, 0);
    terms.push_back({coef, std::move(padded)});
  }
  return Polynomial(f.nvars() + extra, std::move(terms));
}

}  // namespace cptp
