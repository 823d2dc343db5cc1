#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>

#include <nlohmann/json.hpp>

#include "cptp/cone_oracle.hpp"
#include "cptp/pop.hpp"

namespace cptp::cli {

struct VerifyOptions {
  /// Unset: zero for unbounded polyhedra, else a positive certified choice from the bounding box.
  std::optional<RationalVector> alpha;
  std::size_t t = 1;
  std::size_t samples = 64;
  OracleOptions oracle;
  std::optional<Box> box;
};

struct VerifyOutcome {
  nlohmann::json report;
  bool passed;
};

/// FNV-1a over the canonical problem serialization.
std::string instance_digest(const PopInstance& p);

/// Positive alpha with alpha^T x <= 1 on a bounded polyhedron; zero when F is unbounded.
RationalVector default_alpha(const PolyhedralSet& f);

/// Brute force, lifted solve, atom feasibility, objective preservation, dual probe and
/// bound. Errors from the brute-force stage (Infeasible, Unbounded) propagate. Per-stage
/// timings are written to `timing`.
VerifyOutcome run_verify(const PopInstance& p, const VerifyOptions& options, std::ostream& timing);

}  // namespace cptp::cli
