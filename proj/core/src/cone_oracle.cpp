#include "cptp/cone_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cptp/error.hpp"
#include "simplex_search.hpp"

namespace cptp {

namespace {

detail::SimplexSearchOptions search_options(const OracleOptions& o) {
  return {o.depth, o.threads, o.max_lattice_points};
}

RationalVector normalized_rational(const std::vector<double>& x) {
  RationalVector out;
  out.reserve(x.size());
  Rational total = 0;
  for (double v : x) {
    out.push_back(from_double(std::max(v, 0.0)));
    total += out.back();
  }
  if (total > 0) {
    for (auto& v : out) v /= total;
  }
  return out;
}

}  // namespace

std::string_view to_string(CopositivityStatus s) {
  switch (s) {
    case CopositivityStatus::Copositive: return "copositive";
    case CopositivityStatus::NotCopositive: return "not-copositive";
    case CopositivityStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

CopositivityVerdict copositive_check(const SymmetricTensor& t, const OracleOptions& options) {
  if (!(options.tol >= 0)) throw InvalidArgument("tolerance must be nonnegative");
  const detail::CompiledForm form(t);
  const auto search = detail::minimize_on_simplex(
      t.dim(), [&form](std::span<const double> x) { return form(x); }, search_options(options));

  CopositivityVerdict v{CopositivityStatus::Copositive, search.best_value, std::nullopt, std::nullopt,
                        options.depth, options.tol, search.evaluations};
  if (search.best_value >= -options.tol) return v;

  RationalVector lattice(search.lattice_counts.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    lattice[i] = Rational(mpz_class(std::to_string(search.lattice_counts[i])),
                          mpz_class(std::to_string(search.lattice_denominator)));
    lattice[i].canonicalize();
  }
  RationalVector witness = lattice;
  Rational value = form_value(t, lattice);
  RationalVector polished = normalized_rational(search.best_point);
  Rational polished_value = form_value(t, polished);
  if (polished_value < value) {
    witness = std::move(polished);
    value = polished_value;
  }
  if (value < from_double(-options.tol)) {
    v.status = CopositivityStatus::NotCopositive;
    v.witness = std::move(witness);
    v.witness_value = value;
  } else {
    v.status = CopositivityStatus::Inconclusive;
  }
  return v;
}

SymmetricTensor cp_reconstruct(const AtomDecomposition& d) {
  if (d.order < 1 || d.dim < 1) throw InvalidArgument("decomposition needs order and dimension >= 1");
  SymmetricTensor out(d.order, d.dim);
  for (std::size_t i = 0; i < d.atoms.size(); ++i) {
    const auto& atom = d.atoms[i];
    if (atom.vector.size() != d.dim) {
      throw InvalidArgument("atom " + std::to_string(i) + " has length " + std::to_string(atom.vector.size()) +
                            ", expected " + std::to_string(d.dim));
    }
    if (atom.weight < 0) throw InvalidArgument("atom " + std::to_string(i) + " has a negative weight");
    for (std::size_t k = 0; k < atom.vector.size(); ++k) {
      if (atom.vector[k] < 0) {
        throw InvalidArgument("atom " + std::to_string(i) + " has a negative component at " + std::to_string(k));
      }
    }
    if (atom.weight == 0) continue;
    out = out + atom.weight * rank_one_power(atom.vector, d.order);
  }
  return out;
}

bool FeasibilityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConstraintCheck& c) { return c.passed; });
}

FeasibilityReport cptp_feasibility_check(const CpTensorProgram& prog, const AtomDecomposition& x, double tol) {
  if (x.order != prog.order || x.dim != prog.base_dim) {
    throw InvalidArgument("decomposition shape (" + std::to_string(x.order) + ", " + std::to_string(x.dim) +
                          ") does not match the program (" + std::to_string(prog.order) + ", " +
                          std::to_string(prog.base_dim) + ")");
  }
  FeasibilityReport report;
  const SymmetricTensor tensor = cp_reconstruct(x);
  report.checks.push_back({"cone", true, std::to_string(x.atoms.size()) + " nonnegative atoms"});

  for (std::size_t i = 0; i < prog.equalities.size(); ++i) {
    const auto& eq = prog.equalities[i];
    const Rational value = inner(tensor, eq.tensor);
    report.checks.push_back({"eq[" + std::to_string(i) + "]", value == eq.rhs,
                             "value " + format_rational(value) + ", rhs " + format_rational(eq.rhs)});
  }

  const Rational floor = from_double(-tol);
  for (std::size_t k = 0; k < prog.maps.size(); ++k) {
    const auto& m = prog.maps[k];
    ConstraintCheck check{"map[" + std::to_string(k) + "]", true, "all atom images nonnegative"};
    for (std::size_t j = 0; j < x.atoms.size() && check.passed; ++j) {
      if (x.atoms[j].weight == 0) continue;
      const RationalVector image = m.apply(x.atoms[j].vector);
      for (std::size_t r = 0; r < image.size(); ++r) {
        if (image[r] < floor) {
          check.passed = false;
          check.detail = "row " + std::to_string(r) + " of atom " + std::to_string(j) + " maps to " +
                         format_rational(image[r]);
          break;
        }
      }
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

CopositivityVerdict dual_feasibility_check(const CopositiveProgram& dual, const DualAssignment& assignment,
                                           const OracleOptions& options) {
  for (std::size_t k = 0; k < assignment.multipliers.size(); ++k) {
    const auto& u = assignment.multipliers[k];
    if (u.is_zero()) continue;
    if (copositive_check(u, options).status == CopositivityStatus::NotCopositive) {
      throw InvalidArgument("multiplier " + std::to_string(k) + " is not copositive");
    }
  }
  return copositive_check(assemble_expression(dual, assignment), options);
}

BoundResult bound_solve(const CopositiveProgram& dual, const OracleOptions& options) {
  dual.validate();
  const RationalVector v = dual.normalization_vector();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= 0) {
      throw InvalidArgument("normalization vector component " + std::to_string(i) +
                            " is not positive; the bound ratio is undefined on the simplex boundary");
    }
  }
  const detail::CompiledForm form(dual.base);
  const std::vector<double> vd = to_double(v);
  const double d = static_cast<double>(dual.order);
  auto ratio = [&](std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += vd[i] * x[i];
    return form(x) / std::pow(s, d);
  };
  const auto search = detail::minimize_on_simplex(dual.base_dim, ratio, search_options(options));
  return {search.best_value, search.best_point, search.evaluations};
}

ProbeResult strict_feasibility_probe(const CopositiveProgram& dual, const OracleOptions& options,
                                     std::size_t max_doublings) {
  dual.validate();
  if (dual.scalars.empty()) throw InvalidArgument("dual program has no scalar variables");
  const RationalVector a = dual.lift_vector();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0) throw InvalidArgument("lift vector component " + std::to_string(i) + " is not positive");
  }
  ProbeResult result{false, {}, {}, 0};
  Rational lambda = -1;
  for (std::size_t attempt = 0; attempt <= max_doublings; ++attempt) {
    RationalVector scalars(dual.scalars.size(), Rational(0));
    scalars[0] = lambda;
    if (scalars.size() > 1) scalars[1] = lambda / 2;
    DualAssignment assignment = make_assignment(dual, std::move(scalars));
    CopositivityVerdict verdict = copositive_check(assemble_expression(dual, assignment), options);
    result.attempts = attempt + 1;
    const bool strict = verdict.status == CopositivityStatus::Copositive && verdict.margin > options.tol;
    result.assignment = std::move(assignment);
    result.verdict = std::move(verdict);
    if (strict) {
      result.found = true;
      return result;
    }
    lambda *= 2;
  }
  return result;
}

}  // namespace cptp
