#include "simplex_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>
#include <thread>

#include "cptp/error.hpp"

namespace cptp::detail {

namespace {

constexpr std::uint64_t kBaseDenominator = 8;
constexpr std::size_t kIncumbents = 3;
constexpr std::uint64_t kNeighborhoodBudget = 20000;
constexpr std::uint64_t kPolishBudget = 200000;

using Counts = std::vector<std::uint64_t>;

struct Scored {
  double value;
  std::size_t order;  // enumeration position, breaks ties deterministically
  Counts counts;
};

void enumerate_compositions(std::size_t dim, std::uint64_t total, std::vector<Counts>& out) {
  Counts c(dim, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
    if (i + 1 == dim) {
      c[i] = left;
      out.push_back(c);
      return;
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      c[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, total);
}

void enumerate_neighborhood(const Counts& center, std::uint64_t radius, std::set<Counts>& out) {
  const std::size_t dim = center.size();
  std::uint64_t total = 0;
  for (auto c : center) total += c;
  Counts c(dim, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t used) -> void {
    if (i + 1 == dim) {
      if (used > total) return;
      const std::uint64_t last = total - used;
      const std::uint64_t lo = center[i] > radius ? center[i] - radius : 0;
      if (last < lo || last > center[i] + radius) return;
      c[i] = last;
      out.insert(c);
      return;
    }
    const std::uint64_t lo = center[i] > radius ? center[i] - radius : 0;
    for (std::uint64_t v = lo; v <= center[i] + radius && used + v <= total; ++v) {
      c[i] = v;
      self(self, i + 1, used + v);
    }
  };
  rec(rec, 0, 0);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  return static_cast<std::uint64_t>(std::llround(r));
}

std::vector<double> to_point(const Counts& counts, std::uint64_t denominator) {
  std::vector<double> x(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    x[i] = static_cast<double>(counts[i]) / static_cast<double>(denominator);
  }
  return x;
}

std::vector<double> evaluate_all(const std::vector<Counts>& points, std::uint64_t denominator,
                                 const SimplexObjective& objective, std::size_t threads) {
  std::vector<double> values(points.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = objective(to_point(points[i], denominator));
  };
  const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(points.size() / 1024, 1));
  if (workers <= 1) {
    work(0, points.size());
    return values;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (points.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(points.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  return values;
}

std::vector<Scored> best_of(std::vector<Counts>& points, const std::vector<double>& values) {
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t keep = std::min(kIncumbents, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return values[a] < values[b] || (values[a] == values[b] && a < b);
                    });
  std::vector<Scored> out;
  for (std::size_t i = 0; i < keep; ++i) out.push_back({values[order[i]], order[i], points[order[i]]});
  return out;
}

// Pairwise mass transfer x_j -> x_i with halving step sizes.
std::pair<double, std::vector<double>> polish(std::vector<double> x, double fx, double initial_step,
                                              const SimplexObjective& objective, std::uint64_t& evaluations) {
  const std::size_t dim = x.size();
  if (dim < 2) return {fx, x};
  std::uint64_t budget = kPolishBudget;
  double step = initial_step;
  std::vector<double> y;
  while (step > 1e-14 && budget > 0) {
    bool improved = false;
    for (std::size_t i = 0; i < dim && budget > 0; ++i) {
      for (std::size_t j = 0; j < dim && budget > 0; ++j) {
        if (i == j || x[j] <= 0) continue;
        const double delta = std::min(step, x[j]);
        y = x;
        y[i] += delta;
        y[j] = (delta == x[j]) ? 0.0 : x[j] - delta;
        const double fy = objective(y);
        ++evaluations;
        --budget;
        if (fy < fx) {
          x.swap(y);
          fx = fy;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2;
  }
  return {fx, x};
}

}  // namespace

CompiledForm::CompiledForm(const SymmetricTensor& t) : dim_(t.dim()), order_(t.order()) {
  coef_.reserve(t.nnz());
  idx_.reserve(t.nnz() * order_);
  for (const auto& [key, value] : t.entries()) {
    coef_.push_back(static_cast<double>(key.multiplicity()) * value.get_d());
    idx_.insert(idx_.end(), key.indices().begin(), key.indices().end());
  }
}

double CompiledForm::operator()(std::span<const double> x) const {
  double sum = 0;
  for (std::size_t e = 0; e < coef_.size(); ++e) {
    double term = coef_[e];
    const std::uint32_t* idx = idx_.data() + e * order_;
    for (std::size_t k = 0; k < order_; ++k) term *= x[idx[k]];
    sum += term;
  }
  return sum;
}

std::size_t resolve_threads(std::size_t requested) {
  std::size_t n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CPTP_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
  }
  return n;
}

SimplexSearchResult minimize_on_simplex(std::size_t dim, const SimplexObjective& objective,
                                        const SimplexSearchOptions& options) {
  if (dim == 0) throw InvalidArgument("simplex search needs dimension >= 1");
  const std::uint64_t level0 = binomial(kBaseDenominator + dim - 1, dim - 1);
  if (level0 > options.max_points) {
    throw ResourceLimit("simplex lattice of " + std::to_string(level0) + " points exceeds cap " +
                        std::to_string(options.max_points));
  }
  const std::size_t threads = resolve_threads(options.threads);

  std::uint64_t radius = 8;
  while (radius > 1 && std::pow(2.0 * radius + 1, static_cast<double>(dim - 1)) >
                           static_cast<double>(kNeighborhoodBudget)) {
    radius /= 2;
  }

  SimplexSearchResult result{std::numeric_limits<double>::infinity(), {}, std::numeric_limits<double>::infinity(),
                             {}, kBaseDenominator, 0};

  std::vector<Counts> points;
  enumerate_compositions(dim, kBaseDenominator, points);
  std::uint64_t denominator = kBaseDenominator;

  for (std::size_t level = 0;; ++level) {
    const auto values = evaluate_all(points, denominator, objective, threads);
    result.evaluations += points.size();
    const auto incumbents = best_of(points, values);

    const Scored& best = incumbents.front();
    if (best.value < result.lattice_value) {
      result.lattice_value = best.value;
      result.lattice_counts = best.counts;
      result.lattice_denominator = denominator;
    }
    if (best.value < result.best_value) {
      result.best_value = best.value;
      result.best_point = to_point(best.counts, denominator);
    }
    auto [polished_value, polished_point] =
        polish(to_point(best.counts, denominator), best.value, 1.0 / static_cast<double>(denominator),
               objective, result.evaluations);
    if (polished_value < result.best_value) {
      result.best_value = polished_value;
      result.best_point = std::move(polished_point);
    }

    if (level == options.depth) break;
    denominator *= 2;
    std::set<Counts> next;
    for (const auto& inc : incumbents) {
      Counts center = inc.counts;
      for (auto& c : center) c *= 2;
      enumerate_neighborhood(center, radius, next);
    }
    points.assign(next.begin(), next.end());
  }
  return result;
}

}  // namespace cptp::detail
