#include "pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "cptp/conic.hpp"
#include "cptp/error.hpp"
#include "cptp/json_io.hpp"

namespace cptp::cli {

namespace {

using nlohmann::json;

class StageTimer {
 public:
  explicit StageTimer(std::ostream& os) : os_(os), start_(std::chrono::steady_clock::now()) {}

  void lap(const char* stage) {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    os_ << "timing " << stage << ' ' << buf << " ms\n";
    start_ = now;
  }

 private:
  std::ostream& os_;
  std::chrono::steady_clock::time_point start_;
};

json check(const std::string& name, bool passed, const std::string& detail) {
  return {{"name", name}, {"passed", passed}, {"detail", detail}};
}

json brute_force_json(const BruteForceResult& r) {
  json out;
  out["status"] = r.status == SolveStatus::Attained ? "attained" : "box-restricted";
  out["exact"] = r.exact;
  out["value"] = rational_json(r.value);
  out["value_float"] = to_double(r.value);
  out["grid_value"] = rational_json(r.grid_value);
  json argmins = json::array();
  for (const auto& x : r.argmins) argmins.push_back(rational_vector_json(x));
  out["argmins"] = argmins;
  out["evaluations"] = r.evaluations;
  return out;
}

bool all_positive(const RationalVector& v) {
  for (const auto& x : v) {
    if (x <= 0) return false;
  }
  return true;
}

void verify_finite(const PopInstance& p, const BruteForceResult& bf, json& report, json& checks,
                   StageTimer& timer) {
  const LiftedFiniteSolution lifted = solve_lifted_finite(p);
  timer.lap("lifted");
  json atoms = json::array();
  for (const auto& x : lifted.argmin_points) {
    RationalVector g{Rational(1)};
    g.insert(g.end(), x.begin(), x.end());
    atoms.push_back(rational_vector_json(g));
  }
  report["lifted"] = {{"value", rational_json(lifted.value)}, {"optimal_generators", atoms}};
  checks.push_back(check("lifted_value", lifted.value == bf.value,
                         "lifted " + format_rational(lifted.value) + ", brute force " + format_rational(bf.value)));
  checks.push_back(check("lifted_argmins", lifted.argmin_points == bf.argmins,
                         std::to_string(lifted.argmin_points.size()) + " optimal atoms"));
  const double gap = to_double(bf.value - lifted.value);
  report["gap"] = gap;
}

void verify_polyhedral(const PopInstance& p, const VerifyOptions& options, const BruteForceResult& bf,
                       json& report, json& checks, StageTimer& timer) {
  const PolyhedralSet& f = *p.polyhedral();
  const RationalVector alpha = options.alpha ? *options.alpha : default_alpha(f);
  const LiftingData data = build_lifting_data(p, alpha, options.t);
  const bool homogeneous = p.kind() == ProblemKind::Homogeneous;
  const CpTensorProgram prog = homogeneous ? build_homogeneous_cptp(p, data) : build_inhomogeneous_cptp(p, data);
  timer.lap("reformulate");

  json maps = json::array();
  for (const auto& m : prog.maps) maps.push_back(m.rows());
  report["reformulation"] = {{"kind", std::string(to_string(prog.kind))},
                             {"order", prog.order},
                             {"base_dim", prog.base_dim},
                             {"equalities", prog.equalities.size()},
                             {"map_dims", maps},
                             {"alpha", rational_vector_json(alpha)},
                             {"t", prog.t}};

  const auto points = sample_feasible_points(f, options.samples, 0x5eedULL);
  std::size_t feasible_ok = 0, objective_ok = 0;
  std::string first_failure;
  for (const auto& x : points) {
    const RationalVector y = homogeneous ? lift_homogeneous_point(x, data) : lift_inhomogeneous_point(x, data);
    const AtomDecomposition atom{prog.order, prog.base_dim, {{Rational(1), y}}};
    const FeasibilityReport fr = cptp_feasibility_check(prog, atom, options.oracle.tol);
    if (fr.passed()) {
      ++feasible_ok;
    } else if (first_failure.empty()) {
      for (const auto& c : fr.checks) {
        if (!c.passed) first_failure = c.name + ": " + c.detail;
      }
    }
    if (inner(prog.objective, rank_one_power(y, prog.order)) == evaluate(p.objective(), x)) ++objective_ok;
  }
  timer.lap("lift-checks");
  const std::string of = " of " + std::to_string(points.size()) + " sampled lifts";
  checks.push_back(check("lift_feasibility", feasible_ok == points.size(),
                         std::to_string(feasible_ok) + of + (first_failure.empty() ? "" : "; " + first_failure)));
  checks.push_back(check("objective_preservation", objective_ok == points.size(), std::to_string(objective_ok) + of));

  const CopositiveProgram dual = homogeneous ? dual_homogeneous(prog, data) : dual_inhomogeneous(prog, data);
  json dual_json;
  dual_json["scalars"] = dual.scalars.size();
  dual_json["slots"] = dual.slots.size();
  if (!all_positive(dual.lift_vector())) {
    dual_json["probe"] = nullptr;
    dual_json["bound"] = nullptr;
    dual_json["skipped"] = "lift vector has a zero component";
    report["dual"] = dual_json;
    report["gap"] = nullptr;
    return;
  }

  const ProbeResult probe = strict_feasibility_probe(dual, options.oracle);
  timer.lap("probe");
  dual_json["probe"] = {{"found", probe.found},
                        {"attempts", probe.attempts},
                        {"scalars", rational_vector_json(probe.assignment.scalars)},
                        {"verdict", verdict_json(probe.verdict)}};
  checks.push_back(check("strict_feasibility", probe.found,
                         probe.found ? "lambda " + format_rational(probe.assignment.scalars[0]) + ", margin " +
                                           std::to_string(probe.verdict.margin)
                                     : "no strictly feasible lambda found"));
  if (probe.found) {
    const bool weak = probe.assignment.scalars[0] <= bf.value;
    checks.push_back(check("probe_weak_duality", weak, "probe lambda does not exceed the brute-force value"));
  }

  const RationalVector v = dual.normalization_vector();
  if (!all_positive(v)) {
    dual_json["bound"] = nullptr;
    dual_json["bound_skipped"] = "normalization vector has a zero component";
    report["dual"] = dual_json;
    report["gap"] = nullptr;
    return;
  }
  const BoundResult bound = bound_solve(dual, options.oracle);
  timer.lap("bound");
  dual_json["bound"] = bound.lambda;
  dual_json["bound_evaluations"] = bound.evaluations;
  report["dual"] = dual_json;
  const double gap = to_double(bf.value) - bound.lambda;
  report["gap"] = gap;
  checks.push_back(check("weak_duality", gap >= -options.oracle.tol,
                         "brute-force value minus dual bound is " + std::to_string(gap)));
}

}  // namespace

std::string instance_digest(const PopInstance& p) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : write_problem_json(p)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

RationalVector default_alpha(const PolyhedralSet& f) {
  const std::size_t n = f.nvars();
  if (!bounding_box(f)) return RationalVector(n, Rational(0));
  Rational top = 0;
  for (const auto& v : enumerate_vertices(f)) {
    Rational s = 0;
    for (const auto& x : v) s += x;
    if (s > top) top = s;
  }
  Rational a = top > 0 ? Rational(1 / top) : Rational(1);
  return RationalVector(n, a);
}

VerifyOutcome run_verify(const PopInstance& p, const VerifyOptions& options, std::ostream& timing) {
  StageTimer timer(timing);
  json report;
  json checks = json::array();
  report["instance"] = {{"digest", instance_digest(p)},
                        {"nvars", p.nvars()},
                        {"kind", std::string(to_string(p.kind()))},
                        {"degree", p.objective().degree()},
                        {"feasible_set", p.finite() ? "finite" : "polyhedral"}};

  const RecessionCheck rc = recession_nonnegativity_check(p, options.samples);
  checks.push_back(check("recession_nonnegativity", rc.holds,
                         std::to_string(rc.directions_checked) + " recession directions sampled"));
  timer.lap("recession");

  BruteForceOptions bfo;
  bfo.box = options.box;
  const BruteForceResult bf = brute_force_solve(p, bfo);
  timer.lap("brute-force");
  report["brute_force"] = brute_force_json(bf);

  if (p.finite()) {
    verify_finite(p, bf, report, checks, timer);
  } else {
    verify_polyhedral(p, options, bf, report, checks, timer);
  }

  bool passed = true;
  for (const auto& c : checks) passed = passed && c["passed"].get<bool>();
  report["checks"] = checks;
  report["passed"] = passed;
  report["oracle"] = {{"depth", options.oracle.depth}, {"tol", options.oracle.tol}, {"certificate", "approximate"}};
  return {report, passed};
}

}  // namespace cptp::cli
