#include "cptp/conic.hpp"

#include <algorithm>
#include <string>

#include "cptp/coefficient_tensor.hpp"
#include "cptp/error.hpp"

namespace cptp {

namespace {

std::size_t default_order(const Polynomial& f) { return std::max<std::size_t>(f.degree(), 1); }

RationalVector prepend(const Rational& head, std::span<const Rational> tail) {
  RationalVector out;
  out.reserve(tail.size() + 1);
  out.push_back(head);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

void require_feasible(const LiftingData& data, std::span<const Rational> x) {
  if (!is_feasible(data.feasible, x)) throw InvalidArgument("point is not in the feasible set");
}

void require_shape(const SymmetricTensor& t, std::size_t order, std::size_t dim, const std::string& what) {
  if (t.order() != order || t.dim() != dim) {
    throw InvalidArgument(what + " has shape (" + std::to_string(t.order()) + "," + std::to_string(t.dim()) +
                          "), expected (" + std::to_string(order) + "," + std::to_string(dim) + ")");
  }
}

}  // namespace

SymmetricTensor LiftedProgram::feasible_atom(std::span<const Rational> x) const {
  const bool ok = std::visit([&](const auto& s) { return is_feasible(s, x); }, feasible);
  if (!ok) throw InvalidArgument("feasible_atom: point is not in F");
  return rank_one_power(prepend(1, x), order);
}

SymmetricTensor LiftedProgram::recession_atom(std::span<const Rational> y) const {
  if (!recession.contains(y)) throw InvalidArgument("recession_atom: direction is not in the recession cone");
  return rank_one_power(prepend(0, y), order);
}

LiftedProgram build_lifted_program(const PopInstance& p, std::optional<std::size_t> order) {
  const std::size_t d = order.value_or(default_order(p.objective()));
  return LiftedProgram{d, coefficient_tensor(p.objective(), d), p.feasible(), recession_cone(p.feasible())};
}

SymmetricTensor LiftedFiniteSolution::hull_point(std::span<const Rational> weights) const {
  if (weights.size() != optimal_atoms.size()) {
    throw InvalidArgument("hull_point: expected " + std::to_string(optimal_atoms.size()) + " weights");
  }
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw InvalidArgument("hull_point: negative weight");
    total += w;
  }
  if (total != 1) throw InvalidArgument("hull_point: weights must sum to 1");
  SymmetricTensor out(optimal_atoms.front().order(), optimal_atoms.front().dim());
  for (std::size_t i = 0; i < weights.size(); ++i) out = out + weights[i] * optimal_atoms[i];
  return out;
}

LiftedFiniteSolution solve_lifted_finite(const PopInstance& p, std::optional<std::size_t> order) {
  const auto* set = p.finite();
  if (set == nullptr) throw InvalidArgument("solve_lifted_finite requires a finite feasible set");
  const LiftedProgram lifted = build_lifted_program(p, order);

  LiftedFiniteSolution sol;
  bool first = true;
  for (const auto& x : set->points()) {
    SymmetricTensor atom = lifted.feasible_atom(x);
    Rational value = inner(lifted.objective, atom);
    if (first || value < sol.value) {
      sol.value = value;
      sol.argmin_points.clear();
      sol.optimal_atoms.clear();
      first = false;
    }
    if (value == sol.value) {
      sol.argmin_points.push_back(x);
      sol.optimal_atoms.push_back(std::move(atom));
    }
  }
  // Report atoms in the same lexicographic order as the points.
  std::vector<std::size_t> perm(sol.argmin_points.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return sol.argmin_points[a] < sol.argmin_points[b]; });
  LiftedFiniteSolution sorted{sol.value, {}, {}};
  for (auto i : perm) {
    sorted.argmin_points.push_back(sol.argmin_points[i]);
    sorted.optimal_atoms.push_back(sol.optimal_atoms[i]);
  }
  return sorted;
}

LiftingData build_lifting_data(const PopInstance& p, std::span<const Rational> alpha, std::size_t t,
                               std::optional<std::size_t> order) {
  const auto* set = p.polyhedral();
  if (set == nullptr) throw InvalidArgument("the reformulation needs a polyhedral feasible set");
  if (t < 1) throw InvalidArgument("t must be a positive integer");
  if (!alpha_certificate(*set, alpha)) {
    throw InvalidArgument("alpha certificate failed: alpha^T x <= 1 does not hold on F");
  }
  const std::size_t n = set->nvars();
  const std::size_t m = set->nconstraints();
  const std::size_t d = order.value_or(default_order(p.objective()));

  RationalVector a(alpha.begin(), alpha.end());
  a.push_back(1);

  // Top block b a^T - (B | 0), then the identity.
  DenseMatrix top(m, n + 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c <= n; ++c) {
      top(r, c) = set->b()[r] * a[c] - (c < n ? set->B()(r, c) : Rational(0));
    }
  }
  DenseMatrix certificate = vstack(top, DenseMatrix::identity(n + 1));

  RationalVector homogenizer_row = prepend(1, a);
  for (std::size_t i = 1; i < homogenizer_row.size(); ++i) homogenizer_row[i] = -homogenizer_row[i];
  DenseMatrix homogenizer(t, n + 2);
  for (std::size_t r = 0; r < t; ++r) {
    for (std::size_t c = 0; c < n + 2; ++c) homogenizer(r, c) = homogenizer_row[c];
  }

  return LiftingData{
      .feasible = *set,
      .order = d,
      .alpha = RationalVector(alpha.begin(), alpha.end()),
      .lift_vector = a,
      .certificate_map = certificate,
      .t = t,
      .padded_lift_vector = prepend(0, a),
      .homogenizer_map = std::move(homogenizer),
      .padded_certificate_map = pad_left_columns(certificate, 1),
      .homogenizer_tensor = rank_one_power(homogenizer_row, d),
  };
}

RationalVector lift_homogeneous_point(std::span<const Rational> x, const LiftingData& data) {
  require_feasible(data, x);
  RationalVector y(x.begin(), x.end());
  y.push_back(1 - dot(data.alpha, x));
  return y;
}

RationalVector lift_inhomogeneous_point(std::span<const Rational> x, const LiftingData& data) {
  return prepend(1, lift_homogeneous_point(x, data));
}

void CpTensorProgram::validate() const {
  require_shape(objective, order, base_dim, "objective");
  for (std::size_t i = 0; i < equalities.size(); ++i) {
    require_shape(equalities[i].tensor, order, base_dim, "equality " + std::to_string(i));
  }
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].cols() != base_dim || maps[i].rows() == 0) {
      throw InvalidArgument("map " + std::to_string(i) + " has " + std::to_string(maps[i].cols()) +
                            " columns, expected " + std::to_string(base_dim));
    }
  }
}

CpTensorProgram build_homogeneous_cptp(const PopInstance& p, const LiftingData& data) {
  if (p.kind() != ProblemKind::Homogeneous) {
    throw InvalidArgument("build_homogeneous_cptp: instance is not homogeneous");
  }
  const std::size_t n = p.nvars();
  if (data.lift_vector.size() != n + 1) throw InvalidArgument("lifting data does not match the instance");
  CpTensorProgram prog{
      .kind = ProblemKind::Homogeneous,
      .order = data.order,
      .base_dim = n + 1,
      .objective = embed_tensor(homogeneous_tensor(p.objective(), data.order), n + 1),
      .equalities = {{rank_one_power(data.lift_vector, data.order), 1}},
      .maps = {data.certificate_map},
      .alpha = data.alpha,
      .t = data.t,
  };
  prog.validate();
  return prog;
}

CpTensorProgram build_inhomogeneous_cptp(const PopInstance& p, const LiftingData& data) {
  if (p.kind() != ProblemKind::Inhomogeneous) {
    throw InvalidArgument("build_inhomogeneous_cptp: instance is not inhomogeneous");
  }
  const std::size_t n = p.nvars();
  if (data.lift_vector.size() != n + 1) throw InvalidArgument("lifting data does not match the instance");
  // The slack coordinate enters f as an extra variable with no terms.
  CpTensorProgram prog{
      .kind = ProblemKind::Inhomogeneous,
      .order = data.order,
      .base_dim = n + 2,
      .objective = coefficient_tensor(append_variables(p.objective(), 1), data.order),
      .equalities = {{rank_one_power(data.padded_lift_vector, data.order), 1},
                     {data.homogenizer_tensor, 0}},
      .maps = {data.homogenizer_map, data.padded_certificate_map},
      .alpha = data.alpha,
      .t = data.t,
  };
  prog.validate();
  return prog;
}

RationalVector CopositiveProgram::lift_vector() const {
  RationalVector a = alpha;
  a.push_back(1);
  return a;
}

RationalVector CopositiveProgram::normalization_vector() const {
  RationalVector a = lift_vector();
  return kind == ProblemKind::Homogeneous ? a : prepend(0, a);
}

void CopositiveProgram::validate() const {
  require_shape(base, order, base_dim, "dual base tensor");
  for (const auto& s : scalars) require_shape(s.coefficient, order, base_dim, "coefficient of " + s.name);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (slots[k].adjoint.rows() != base_dim || slots[k].adjoint.cols() != slots[k].dim) {
      throw InvalidArgument("slot " + std::to_string(k) + " adjoint map has the wrong shape");
    }
  }
}

DualAssignment make_assignment(const CopositiveProgram& dual, RationalVector scalars) {
  DualAssignment out{std::move(scalars), {}};
  for (const auto& slot : dual.slots) out.multipliers.emplace_back(dual.order, slot.dim);
  return out;
}

SymmetricTensor assemble_expression(const CopositiveProgram& dual, const DualAssignment& assignment) {
  if (assignment.scalars.size() != dual.scalars.size()) {
    throw InvalidArgument("assignment has " + std::to_string(assignment.scalars.size()) +
                          " scalars, program has " + std::to_string(dual.scalars.size()));
  }
  if (assignment.multipliers.size() != dual.slots.size()) {
    throw InvalidArgument("assignment has " + std::to_string(assignment.multipliers.size()) +
                          " multipliers, program has " + std::to_string(dual.slots.size()));
  }
  SymmetricTensor expr = dual.base;
  for (std::size_t i = 0; i < dual.scalars.size(); ++i) {
    if (assignment.scalars[i] != 0) expr = expr - assignment.scalars[i] * dual.scalars[i].coefficient;
  }
  for (std::size_t k = 0; k < dual.slots.size(); ++k) {
    const auto& u = assignment.multipliers[k];
    require_shape(u, dual.order, dual.slots[k].dim, "multiplier " + std::to_string(k));
    if (!u.is_zero()) expr = expr + mode_multiply_uniform(u, dual.slots[k].adjoint);
  }
  return expr;
}

CopositiveProgram build_dual(const CpTensorProgram& prog) {
  prog.validate();
  CopositiveProgram dual{
      .kind = prog.kind,
      .order = prog.order,
      .base_dim = prog.base_dim,
      .base = prog.objective,
      .scalars = {},
      .slots = {},
      .alpha = prog.alpha,
      .t = prog.t,
  };
  static const char* const kNames[] = {"lambda", "mu"};
  for (std::size_t i = 0; i < prog.equalities.size(); ++i) {
    std::string name = i < 2 ? kNames[i] : "s" + std::to_string(i);
    dual.scalars.push_back({std::move(name), prog.equalities[i].tensor, prog.equalities[i].rhs});
  }
  for (const auto& map : prog.maps) dual.slots.push_back({map.rows(), map.transpose()});
  return dual;
}

CopositiveProgram dual_homogeneous(const CpTensorProgram& prog, const LiftingData& data) {
  if (prog.kind != ProblemKind::Homogeneous || prog.base_dim != data.lift_vector.size() ||
      prog.order != data.order || prog.equalities.size() != 1 || prog.maps.size() != 1) {
    throw InvalidArgument("dual_homogeneous: program does not have the homogeneous shape");
  }
  return build_dual(prog);
}

CopositiveProgram dual_inhomogeneous(const CpTensorProgram& prog, const LiftingData& data) {
  if (prog.kind != ProblemKind::Inhomogeneous || prog.base_dim != data.padded_lift_vector.size() ||
      prog.order != data.order || prog.equalities.size() != 2 || prog.maps.size() != 2) {
    throw InvalidArgument("dual_inhomogeneous: program does not have the inhomogeneous shape");
  }
  return build_dual(prog);
}

SymmetricTensor NormalizationSplit::reconstruct(std::size_t order, std::size_t dim) const {
  SymmetricTensor out(order, dim);
  for (const auto& [lambda, z] : normalized) {
    Rational scale = 1;
    for (std::size_t k = 0; k < order; ++k) scale *= lambda;
    out = out + scale * rank_one_power(z, order);
  }
  for (const auto& y : recession) out = out + rank_one_power(y, order);
  return out;
}

NormalizationSplit normalization_split(std::span<const RationalVector> generators,
                                       std::span<const Rational> a) {
  NormalizationSplit split;
  for (const auto& y : generators) {
    const Rational lambda = dot(a, y);
    if (lambda < 0) throw InvalidArgument("normalization_split: generator with a^T y < 0");
    if (lambda == 0) {
      split.recession.push_back(y);
      continue;
    }
    RationalVector z = y;
    for (auto& c : z) c /= lambda;
    split.normalized.emplace_back(lambda, std::move(z));
  }
  return split;
}

}  // namespace cptp
