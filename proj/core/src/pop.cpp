#include "cptp/pop.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "cptp/coefficient_tensor.hpp"
#include "cptp/error.hpp"

namespace cptp {

namespace {

RationalVector normalize_sum(RationalVector v) {
  Rational total = 0;
  for (const auto& c : v) total += c;
  if (total != 0) {
    for (auto& c : v) c /= total;
  }
  return v;
}

std::size_t default_resolution(std::size_t nvars) {
  const double per_axis = std::floor(std::pow(static_cast<double>(kMaxGridPoints), 1.0 / nvars));
  return std::clamp<std::size_t>(static_cast<std::size_t>(per_axis) - 1, 1, 128);
}

// Leading form used by the growth tests; nullopt when f is constant.
std::optional<Polynomial> leading_form(const Polynomial& f) {
  if (f.is_zero() || f.degree() == 0) return std::nullopt;
  return top_component(f);
}

struct Candidate {
  Rational value;
  RationalVector point;
};

// Coordinate pattern search with halving steps, staying inside F and the box.
Candidate refine(const Polynomial& f, const PolyhedralSet& set, const Box& box, Candidate start,
                 RationalVector steps, std::size_t& evaluations) {
  constexpr int kHalvings = 24;
  for (auto& s : steps) s /= 2;
  for (int level = 0; level < kHalvings; ++level) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < start.point.size(); ++i) {
        for (int sign : {-1, 1}) {
          if (steps[i] == 0) continue;
          RationalVector trial = start.point;
          trial[i] += sign * steps[i];
          if (!box.contains(trial) || !is_feasible(set, trial)) continue;
          Rational value = evaluate(f, trial);
          ++evaluations;
          if (value < start.value) {
            start = {std::move(value), std::move(trial)};
            improved = true;
          }
        }
      }
    }
    for (auto& s : steps) s /= 2;
  }
  return start;
}

BruteForceResult solve_finite(const Polynomial& f, const FiniteSet& set) {
  BruteForceResult result;
  result.exact = true;
  bool first = true;
  for (const auto& p : set.points()) {
    Rational value = evaluate(f, p);
    ++result.evaluations;
    if (first || value < result.value) {
      result.value = value;
      result.argmins = {p};
      first = false;
    } else if (value == result.value) {
      result.argmins.push_back(p);
    }
  }
  std::sort(result.argmins.begin(), result.argmins.end());
  result.grid_value = result.value;
  return result;
}

void check_growth(const Polynomial& f, const PolyhedralSet& set, const BruteForceOptions& options) {
  const auto lead = leading_form(f);
  if (!lead) return;
  for (const auto& y : sample_cone_directions(recession_cone(set), options.direction_samples, options.seed)) {
    if (evaluate(*lead, y) < 0) {
      std::string dir;
      for (const auto& c : y) dir += (dir.empty() ? "" : " ") + format_rational(c);
      throw Unbounded("objective is unbounded below along recession direction (" + dir + ")");
    }
  }
}

BruteForceResult solve_polyhedral(const Polynomial& f, const PolyhedralSet& set,
                                  const BruteForceOptions& options) {
  const std::size_t n = set.nvars();
  if (enumerate_vertices(set).empty()) throw Infeasible("feasible set is empty");

  BruteForceResult result;
  const auto derived = bounding_box(set);
  if (!derived) {
    check_growth(f, set, options);
    if (!options.box) {
      throw InvalidArgument("feasible set is unbounded; a search box is required");
    }
    result.status = SolveStatus::BoxRestricted;
  }
  const Box box = options.box ? *options.box : *derived;
  if (box.lower.size() != n || box.upper.size() != n) throw InvalidArgument("search box has wrong dimension");
  for (std::size_t i = 0; i < n; ++i) {
    if (box.lower[i] > box.upper[i]) throw InvalidArgument("search box has lower > upper");
  }

  const std::size_t res = options.resolution == 0 ? default_resolution(n) : options.resolution;
  RationalVector steps(n);
  for (std::size_t i = 0; i < n; ++i) steps[i] = (box.upper[i] - box.lower[i]) / Rational(res);

  std::vector<Candidate> feasible;
  std::vector<std::size_t> counter(n, 0);
  while (true) {
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = box.lower[i] + steps[i] * Rational(counter[i]);
    if (is_feasible(set, x)) {
      Rational value = evaluate(f, x);
      ++result.evaluations;
      feasible.push_back({std::move(value), std::move(x)});
    }
    std::size_t k = 0;
    while (k < n && counter[k] == res) counter[k++] = 0;
    if (k == n) break;
    ++counter[k];
  }
  if (feasible.empty()) throw Infeasible("no feasible grid point inside the search box");

  std::stable_sort(feasible.begin(), feasible.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  result.grid_value = feasible.front().value;

  if (options.refine) {
    constexpr std::size_t kRefineStarts = 4;
    const std::size_t starts = std::min(kRefineStarts, feasible.size());
    for (std::size_t s = 0; s < starts; ++s) {
      feasible.push_back(refine(f, set, box, feasible[s], steps, result.evaluations));
    }
  }

  result.value = feasible.front().value;
  for (const auto& c : feasible) result.value = std::min(result.value, c.value);
  const Rational cutoff = result.value + from_double(options.tie_tolerance);
  std::set<RationalVector> argmins;
  for (const auto& c : feasible) {
    if (c.value <= cutoff) argmins.insert(c.point);
  }
  result.argmins.assign(argmins.begin(), argmins.end());
  return result;
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::Homogeneous ? "homogeneous" : "inhomogeneous";
}

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "homogeneous") return ProblemKind::Homogeneous;
  if (text == "inhomogeneous") return ProblemKind::Inhomogeneous;
  throw ParseError("unknown problem kind '" + std::string(text) + "'");
}

PopInstance::PopInstance(Polynomial objective, FeasibleSet feasible, ProblemKind kind)
    : objective_(std::move(objective)), feasible_(std::move(feasible)), kind_(kind) {
  const std::size_t set_vars = std::visit([](const auto& s) { return s.nvars(); }, feasible_);
  if (set_vars != objective_.nvars()) {
    throw InvalidArgument("objective has " + std::to_string(objective_.nvars()) +
                          " variables but the feasible set lives in R^" + std::to_string(set_vars));
  }
  if (kind_ == ProblemKind::Homogeneous && !objective_.is_homogeneous()) {
    throw InvalidArgument("homogeneous instance requires a homogeneous objective");
  }
}

ConeSet recession_cone(const FeasibleSet& f) {
  return std::visit([](const auto& s) { return recession_cone(s); }, f);
}

BruteForceResult brute_force_solve(const PopInstance& p, const BruteForceOptions& options) {
  if (const auto* finite = p.finite()) return solve_finite(p.objective(), *finite);
  return solve_polyhedral(p.objective(), *p.polyhedral(), options);
}

std::vector<RationalVector> sample_cone_directions(const ConeSet& cone, std::size_t random_count,
                                                   std::uint64_t seed) {
  const auto rays = extreme_rays(cone);
  std::vector<RationalVector> out = rays;
  if (rays.empty()) return out;
  const std::size_t n = cone.nvars();
  if (rays.size() > 1) {
    RationalVector centroid(n, 0);
    for (const auto& r : rays) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += r[i];
    }
    out.push_back(normalize_sum(std::move(centroid)));
    for (std::size_t a = 0; a < rays.size(); ++a) {
      for (std::size_t b = a + 1; b < rays.size(); ++b) {
        RationalVector mid(n);
        for (std::size_t i = 0; i < n; ++i) mid[i] = (rays[a][i] + rays[b][i]) / 2;
        out.push_back(normalize_sum(std::move(mid)));
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(0, 8);
  for (std::size_t s = 0; s < random_count; ++s) {
    RationalVector y(n, 0);
    bool any = false;
    for (const auto& r : rays) {
      const int w = weight(rng);
      if (w == 0) continue;
      any = true;
      for (std::size_t i = 0; i < n; ++i) y[i] += w * r[i];
    }
    if (!any) y = rays[s % rays.size()];
    out.push_back(normalize_sum(std::move(y)));
  }
  return out;
}

std::vector<RationalVector> sample_feasible_points(const PolyhedralSet& f, std::size_t count,
                                                   std::uint64_t seed) {
  const auto vertices = enumerate_vertices(f);
  if (vertices.empty()) throw Infeasible("feasible set is empty");
  const auto rays = extreme_rays(recession_cone(f));
  const std::size_t n = f.nvars();

  std::vector<RationalVector> out = vertices;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(0, 8);
  std::uniform_int_distribution<int> stretch(0, 3);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<int> w(vertices.size());
    int total = 0;
    for (auto& wi : w) total += (wi = weight(rng));
    if (total == 0) {
      w[s % w.size()] = 1;
      total = 1;
    }
    RationalVector x(n, 0);
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (w[v] == 0) continue;
      Rational lambda(w[v], total);
      lambda.canonicalize();
      for (std::size_t i = 0; i < n; ++i) x[i] += lambda * vertices[v][i];
    }
    for (const auto& r : rays) {
      const int k = stretch(rng);
      for (std::size_t i = 0; i < n; ++i) x[i] += k * r[i];
    }
    out.push_back(std::move(x));
  }
  return out;
}

RecessionCheck recession_nonnegativity_check(const PopInstance& p, std::size_t samples, std::uint64_t seed) {
  RecessionCheck check;
  if (p.finite()) return check;
  const auto lead = leading_form(p.objective());
  if (!lead) return check;
  for (const auto& y : sample_cone_directions(recession_cone(*p.polyhedral()), samples, seed)) {
    ++check.directions_checked;
    if (evaluate(*lead, y) < 0) {
      check.holds = false;
      check.witness = y;
      return check;
    }
  }
  return check;
}

PopInstance copositivity_pop(const SymmetricTensor& t) {
  return PopInstance(form_polynomial(t), PolyhedralSet::orthant(t.dim()), ProblemKind::Homogeneous);
}

}  // namespace cptp
