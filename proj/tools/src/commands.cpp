#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cptp/coefficient_tensor.hpp"
#include "cptp/conic.hpp"
#include "cptp/error.hpp"
#include "cptp/json_io.hpp"
#include "cptp/text_format.hpp"
#include "pipeline.hpp"

namespace cptp::cli {

namespace {

using nlohmann::json;

class InputError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out_path + "'");
  f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

RationalVector parse_alpha(const std::string& text, std::size_t n) {
  RationalVector alpha;
  for (const auto& part : split(text, ',')) alpha.push_back(parse_rational(part));
  if (alpha.size() == 1 && n > 1) alpha.assign(n, alpha.front());
  if (alpha.size() != n) {
    throw InvalidArgument("--alpha needs " + std::to_string(n) + " entries, got " + std::to_string(alpha.size()));
  }
  return alpha;
}

/// "lo:hi" for every coordinate, or one comma-separated "lo:hi" per coordinate.
Box parse_box(const std::string& text, std::size_t n) {
  Box box;
  for (const auto& part : split(text, ',')) {
    const auto bounds = split(part, ':');
    if (bounds.size() != 2) throw ParseError("--box entries must read lo:hi");
    box.lower.push_back(parse_rational(bounds[0]));
    box.upper.push_back(parse_rational(bounds[1]));
  }
  if (box.lower.size() == 1 && n > 1) {
    box.lower.assign(n, box.lower.front());
    box.upper.assign(n, box.upper.front());
  }
  if (box.lower.size() != n) throw InvalidArgument("--box needs 1 or " + std::to_string(n) + " intervals");
  return box;
}

PopInstance load_problem(const std::string& path, const std::string& kind_override) {
  PopInstance p = parse_problem_json(read_file(path));
  if (kind_override.empty()) return p;
  return PopInstance(p.objective(), p.feasible(), parse_problem_kind(kind_override));
}

std::size_t default_order(const PopInstance& p) { return std::max<std::size_t>(p.objective().degree(), 1); }

CpTensorProgram reformulate(const PopInstance& p, const RationalVector& alpha, std::size_t t, std::size_t order) {
  const LiftingData data = build_lifting_data(p, alpha, t, order);
  return p.kind() == ProblemKind::Homogeneous ? build_homogeneous_cptp(p, data) : build_inhomogeneous_cptp(p, data);
}

struct Common {
  std::string input;
  std::string out_path;
  std::string kind;
  std::string alpha;
  std::string box;
  std::size_t order = 0;
  std::size_t t = 1;
  std::size_t depth = 4;
  std::size_t samples = 64;
  double tol = 1e-8;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Completely positive tensor reformulations of polynomial optimization problems", "cptp"};
  app.require_subcommand(1);
  Common o;
  std::function<int()> action;

  auto add_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", o.input, what)->required();
    sub->add_option("--out", o.out_path, "Write the result to this file instead of stdout");
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--depth", o.depth, "Lattice refinement levels")->capture_default_str();
    sub->add_option("--tol", o.tol, "Oracle tolerance")->capture_default_str();
  };

  auto* tensorize = app.add_subcommand("tensorize", "Write the coefficient tensor of the objective");
  add_input(tensorize, "Problem JSON file");
  tensorize->add_option("--order", o.order, "Tensor order (default: objective degree)");
  tensorize->callback([&] {
    action = [&] {
      const PopInstance p = load_problem(o.input, "");
      const std::size_t d = o.order ? o.order : default_order(p);
      emit(write_tensor(coefficient_tensor(p.objective(), d)), o.out_path, out);
      return kPass;
    };
  });

  auto* reform = app.add_subcommand("reformulate", "Export the completely positive tensor program");
  add_input(reform, "Problem JSON file");
  reform->add_option("--alpha", o.alpha, "Certified alpha, comma-separated (default 0)");
  reform->add_option("--t", o.t, "Rows of the homogenizing map")->capture_default_str();
  reform->add_option("--kind", o.kind, "Override the problem kind")
      ->check(CLI::IsMember({"homogeneous", "inhomogeneous"}));
  reform->add_option("--order", o.order, "Tensor order (default: objective degree)");
  reform->callback([&] {
    action = [&] {
      const PopInstance p = load_problem(o.input, o.kind);
      if (!p.polyhedral()) throw InvalidArgument("reformulation needs a polyhedral feasible set");
      const RationalVector alpha = o.alpha.empty() ? RationalVector(p.nvars(), Rational(0)) : parse_alpha(o.alpha, p.nvars());
      emit(write_program(reformulate(p, alpha, o.t, o.order ? o.order : default_order(p))), o.out_path, out);
      return kPass;
    };
  });

  auto* dual = app.add_subcommand("dual", "Export the copositive dual of a program export");
  add_input(dual, "Program export file");
  dual->callback([&] {
    action = [&] {
      emit(write_dual(build_dual(read_program(read_file(o.input)))), o.out_path, out);
      return kPass;
    };
  });

  auto* verify = app.add_subcommand("verify", "Run every oracle check and write a JSON report");
  add_input(verify, "Problem JSON file");
  verify->add_option("--alpha", o.alpha, "Certified alpha (default: derived from the bounding box)");
  verify->add_option("--t", o.t, "Rows of the homogenizing map")->capture_default_str();
  verify->add_option("--samples", o.samples, "Sampled feasible points and recession directions")->capture_default_str();
  verify->add_option("--box", o.box, "Search box lo:hi or lo1:hi1,lo2:hi2,...");
  add_oracle(verify);
  verify->callback([&] {
    action = [&] {
      const PopInstance p = load_problem(o.input, "");
      VerifyOptions vo;
      if (!o.alpha.empty()) vo.alpha = parse_alpha(o.alpha, p.nvars());
      vo.t = o.t;
      vo.samples = o.samples;
      vo.oracle.depth = o.depth;
      vo.oracle.tol = o.tol;
      if (!o.box.empty()) vo.box = parse_box(o.box, p.nvars());
      const VerifyOutcome result = run_verify(p, vo, err);
      emit(dump_json(result.report), o.out_path, out);
      return result.passed ? kPass : kChecksFailed;
    };
  });

  auto* finite = app.add_subcommand("solve-finite", "Solve the lifted program over a finite feasible set");
  add_input(finite, "Problem JSON file with a points constraint");
  finite->add_option("--order", o.order, "Tensor order (default: objective degree)");
  finite->callback([&] {
    action = [&] {
      const PopInstance p = load_problem(o.input, "");
      const LiftedFiniteSolution s = solve_lifted_finite(p, o.order ? std::optional<std::size_t>(o.order) : std::nullopt);
      json argmins = json::array();
      json generators = json::array();
      for (const auto& x : s.argmin_points) {
        argmins.push_back(rational_vector_json(x));
        RationalVector g{Rational(1)};
        g.insert(g.end(), x.begin(), x.end());
        generators.push_back(rational_vector_json(g));
      }
      json report = {{"value", rational_json(s.value)},
                     {"argmins", argmins},
                     {"optimal_generators", generators},
                     {"order", s.optimal_atoms.front().order()}};
      emit(dump_json(report), o.out_path, out);
      return kPass;
    };
  });

  auto* copos = app.add_subcommand("copositive-check", "Test a tensor file for copositivity");
  add_input(copos, "Tensor text file");
  add_oracle(copos);
  copos->callback([&] {
    action = [&] {
      const SymmetricTensor t = read_tensor(read_file(o.input));
      OracleOptions opts;
      opts.depth = o.depth;
      opts.tol = o.tol;
      const CopositivityVerdict v = copositive_check(t, opts);
      emit(dump_json(verdict_json(v)), o.out_path, out);
      return v.status == CopositivityStatus::Copositive ? kPass : kChecksFailed;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kParseError;
  } catch (const InvalidArgument& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const Unbounded& e) {
    err << "unbounded: " << e.what() << '\n';
    return kInfeasible;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResourceLimit;
  }
}

}  // namespace cptp::cli
