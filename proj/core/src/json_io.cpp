#include "cptp/json_io.hpp"

#include <algorithm>

#include "cptp/error.hpp"

namespace cptp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

Rational rational_at(const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(mpz_class(std::to_string(j.get<std::uint64_t>())))
                                  : Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_float()) fail(path, "fractional numbers must be written as \"p/q\" strings");
  fail(path, "expected an integer or a \"p/q\" string");
}

std::size_t size_at(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

RationalVector vector_at(const json& j, const std::string& path, std::size_t expected) {
  if (!j.is_array()) fail(path, "expected an array");
  if (j.size() != expected) fail(path, "expected " + std::to_string(expected) + " entries");
  RationalVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_at(j[i], path + "/" + std::to_string(i)));
  return out;
}

Term term_at(const json& j, const std::string& path, std::size_t n) {
  Term term{0, Exponent(n, 0)};
  std::vector<std::size_t> exps;
  if (j.is_object()) {
    term.coefficient = rational_at(member(j, "coef", path), path + "/coef");
    const json& e = member(j, "exp", path);
    if (!e.is_array() || e.size() != n) fail(path + "/exp", "expected " + std::to_string(n) + " exponents");
    for (std::size_t i = 0; i < n; ++i) exps.push_back(size_at(e[i], path + "/exp/" + std::to_string(i)));
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto colon = s.find(':');
    if (colon == std::string::npos) fail(path, "term string must read \"p/q : e1 ... en\"");
    std::string coef = s.substr(0, colon);
    coef.erase(std::remove_if(coef.begin(), coef.end(), ::isspace), coef.end());
    try {
      term.coefficient = parse_rational(coef);
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
    std::size_t pos = colon + 1;
    while (true) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos >= s.size()) break;
      std::size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      if (end == pos || (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])))) {
        fail(path, "exponents must be nonnegative integers");
      }
      exps.push_back(std::stoul(s.substr(pos, end - pos)));
      pos = end;
    }
    if (exps.size() != n) fail(path, "expected " + std::to_string(n) + " exponents");
  } else {
    fail(path, "expected a term object or string");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (exps[i] > UINT32_MAX) fail(path, "exponent too large");
    term.exponent[i] = static_cast<std::uint32_t>(exps[i]);
  }
  return term;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

PopInstance parse_problem_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the 1-based offset of the last byte read.
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    if (auto p = msg.find(": "); p != std::string::npos && msg.find("line") < p) msg = msg.substr(p + 2);
    throw ParseError(msg, line, column);
  }
  if (!root.is_object()) fail("", "problem must be a JSON object");

  const std::size_t n = size_at(member(root, "nvars", ""), "/nvars");
  if (n == 0) fail("/nvars", "need at least one variable");

  const json& obj = member(root, "objective", "");
  if (!obj.is_array()) fail("/objective", "expected an array of terms");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < obj.size(); ++i) terms.push_back(term_at(obj[i], "/objective/" + std::to_string(i), n));

  FeasibleSet feasible = PolyhedralSet::orthant(n);
  if (auto it = root.find("constraints"); it != root.end()) {
    const json& c = *it;
    if (!c.is_object()) fail("/constraints", "expected an object");
    if (c.contains("points")) {
      const json& pts = c["points"];
      if (!pts.is_array() || pts.empty()) fail("/constraints/points", "expected a nonempty array");
      std::vector<RationalVector> points;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        points.push_back(vector_at(pts[i], "/constraints/points/" + std::to_string(i), n));
      }
      try {
        feasible = FiniteSet(std::move(points));
      } catch (const InvalidArgument& e) {
        fail("/constraints/points", e.what());
      }
    } else {
      const json& B = member(c, "B", "/constraints");
      const json& b = member(c, "b", "/constraints");
      if (!B.is_array()) fail("/constraints/B", "expected an array of rows");
      std::vector<RationalVector> rows;
      for (std::size_t i = 0; i < B.size(); ++i) rows.push_back(vector_at(B[i], "/constraints/B/" + std::to_string(i), n));
      RationalVector rhs = vector_at(b, "/constraints/b", rows.size());
      feasible = PolyhedralSet(DenseMatrix::from_rows(rows, n), std::move(rhs));
    }
  }

  ProblemKind kind = ProblemKind::Inhomogeneous;
  if (auto it = root.find("kind"); it != root.end()) {
    if (!it->is_string()) fail("/kind", "expected a string");
    try {
      kind = parse_problem_kind(it->get<std::string>());
    } catch (const ParseError& e) {
      fail("/kind", e.what());
    }
  }
  try {
    return PopInstance(Polynomial(n, std::move(terms)), std::move(feasible), kind);
  } catch (const InvalidArgument& e) {
    fail("", e.what());
  }
}

std::string write_problem_json(const PopInstance& p) {
  json root;
  root["nvars"] = p.nvars();
  root["kind"] = std::string(to_string(p.kind()));
  json terms = json::array();
  for (const auto& [exp, coef] : p.objective().terms()) terms.push_back({{"coef", rational_json(coef)}, {"exp", exp}});
  root["objective"] = terms;
  if (const auto* f = p.finite()) {
    json pts = json::array();
    for (const auto& x : f->points()) pts.push_back(rational_vector_json(x));
    root["constraints"] = {{"points", pts}};
  } else {
    const auto& poly = *p.polyhedral();
    json B = json::array();
    for (std::size_t r = 0; r < poly.nconstraints(); ++r) B.push_back(rational_vector_json(poly.B().row(r)));
    root["constraints"] = {{"B", B}, {"b", rational_vector_json(poly.b())}};
  }
  return dump_json(root);
}

json rational_json(const Rational& value) { return format_rational(value); }

json rational_vector_json(std::span<const Rational> values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(rational_json(v));
  return out;
}

json verdict_json(const CopositivityVerdict& v) {
  json out;
  out["status"] = std::string(to_string(v.status));
  out["certificate"] = v.status == CopositivityStatus::NotCopositive ? "exact"
                       : v.status == CopositivityStatus::Copositive ? "approximate"
                                                                     : "none";
  out["margin"] = v.margin;
  out["depth"] = v.depth;
  out["tol"] = v.tol;
  out["evaluations"] = v.evaluations;
  if (v.witness) out["witness"] = rational_vector_json(*v.witness);
  if (v.witness_value) out["witness_value"] = rational_json(*v.witness_value);
  return out;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cptp
