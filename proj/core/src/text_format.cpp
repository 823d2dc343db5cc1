#include "cptp/text_format.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "cptp/error.hpp"

namespace cptp {

namespace {

constexpr std::string_view kProgramTag = "cptp-program";
constexpr std::string_view kDualTag = "cptp-dual";
constexpr std::string_view kFormatVersion = "1";

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view raw = text.substr(pos, end - pos);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      Line line{number, {}};
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && is_space(raw[i])) ++i;
        std::size_t j = i;
        while (j < raw.size() && !is_space(raw[j])) ++j;
        if (j > i) line.tokens.push_back(raw.substr(i, j - i));
        i = j;
      }
      if (!line.tokens.empty()) lines_.push_back(std::move(line));
      last_ = number;
      pos = end + 1;
    }
  }

  bool done() const { return next_ >= lines_.size(); }

  const Line& peek() const {
    if (done()) throw ParseError("unexpected end of input", last_);
    return lines_[next_];
  }

  const Line& take() {
    const Line& l = peek();
    ++next_;
    return l;
  }

  /// Next line must start with `keyword` and carry exactly `args` further tokens.
  const Line& expect(std::string_view keyword, std::size_t args) {
    const Line& l = take();
    if (l.tokens.front() != keyword) {
      throw ParseError("expected '" + std::string(keyword) + "', found '" + std::string(l.tokens.front()) + "'",
                       l.number);
    }
    if (l.tokens.size() != args + 1) {
      throw ParseError("'" + std::string(keyword) + "' takes " + std::to_string(args) + " argument(s)", l.number);
    }
    return l;
  }

  void expect_end() {
    if (!done()) throw ParseError("unexpected trailing content", peek().number);
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

  std::vector<Line> lines_;
  std::size_t next_ = 0;
  std::size_t last_ = 0;
};

std::size_t parse_size(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("expected a nonnegative integer, found '" + std::string(token) + "'", line);
  }
  return value;
}

Rational parse_rational_at(std::string_view token, std::size_t line) {
  try {
    return parse_rational(token);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

void write_tensor_body(std::ostream& os, const SymmetricTensor& t) {
  os << "symtensor " << t.order() << ' ' << t.dim() << '\n';
  for (const auto& [key, value] : t.entries()) {
    for (auto i : key.indices()) os << i << ' ';
    os << format_rational(value) << '\n';
  }
}

// Reads `symtensor d n` and entries up to an `end` line (consumed) or end of input.
SymmetricTensor read_tensor_body(LineReader& in, bool until_end) {
  const Line& head = in.expect("symtensor", 2);
  const std::size_t order = parse_size(head.tokens[1], head.number);
  const std::size_t dim = parse_size(head.tokens[2], head.number);
  if (order == 0 || dim == 0) throw ParseError("tensor order and dimension must be positive", head.number);
  SymmetricTensor::EntryMap entries;
  while (true) {
    if (until_end) {
      if (in.peek().tokens.front() == "end") {
        in.take();
        break;
      }
    } else if (in.done()) {
      break;
    }
    const Line& l = in.take();
    if (l.tokens.size() != order + 1) {
      throw ParseError("tensor entry needs " + std::to_string(order) + " indices and a value", l.number);
    }
    std::vector<std::size_t> idx(order);
    for (std::size_t k = 0; k < order; ++k) {
      idx[k] = parse_size(l.tokens[k], l.number);
      if (idx[k] >= dim) throw ParseError("index " + std::to_string(idx[k]) + " out of range", l.number);
    }
    MultiIndex key(idx, dim);
    if (entries.contains(key)) throw ParseError("duplicate tensor entry", l.number);
    entries.emplace(std::move(key), parse_rational_at(l.tokens[order], l.number));
  }
  return SymmetricTensor(order, dim, std::move(entries));
}

void write_matrix_body(std::ostream& os, const DenseMatrix& m) {
  os << "matrix " << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << format_rational(m(r, c));
    os << '\n';
  }
}

DenseMatrix read_matrix_body(LineReader& in) {
  const Line& head = in.expect("matrix", 2);
  const std::size_t rows = parse_size(head.tokens[1], head.number);
  const std::size_t cols = parse_size(head.tokens[2], head.number);
  std::vector<Rational> data;
  data.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Line& l = in.take();
    if (l.tokens.size() != cols) throw ParseError("matrix row needs " + std::to_string(cols) + " entries", l.number);
    for (auto tok : l.tokens) data.push_back(parse_rational_at(tok, l.number));
  }
  return DenseMatrix(rows, cols, std::move(data));
}

struct Meta {
  ProblemKind kind;
  std::size_t order;
  std::size_t base_dim;
  std::size_t t;
  RationalVector alpha;
};

void write_meta(std::ostream& os, const Meta& m) {
  os << "meta\n";
  os << "kind " << to_string(m.kind) << '\n';
  os << "order " << m.order << '\n';
  os << "base_dim " << m.base_dim << '\n';
  os << "t " << m.t << '\n';
  os << "alpha";
  for (const auto& a : m.alpha) os << ' ' << format_rational(a);
  os << "\nend\n";
}

Meta read_meta(LineReader& in) {
  in.expect("meta", 0);
  Meta m{};
  {
    const Line& l = in.expect("kind", 1);
    try {
      m.kind = parse_problem_kind(l.tokens[1]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), l.number);
    }
  }
  {
    const Line& l = in.expect("order", 1);
    m.order = parse_size(l.tokens[1], l.number);
  }
  {
    const Line& l = in.expect("base_dim", 1);
    m.base_dim = parse_size(l.tokens[1], l.number);
  }
  {
    const Line& l = in.expect("t", 1);
    m.t = parse_size(l.tokens[1], l.number);
  }
  {
    const Line& l = in.take();
    if (l.tokens.front() != "alpha") throw ParseError("expected 'alpha'", l.number);
    for (std::size_t i = 1; i < l.tokens.size(); ++i) m.alpha.push_back(parse_rational_at(l.tokens[i], l.number));
  }
  in.expect("end", 0);
  return m;
}

void read_header(LineReader& in, std::string_view tag) {
  const Line& l = in.take();
  if (l.tokens.front() != tag) {
    throw ParseError("expected format tag '" + std::string(tag) + "', found '" + std::string(l.tokens.front()) + "'",
                     l.number);
  }
  if (l.tokens.size() != 2 || l.tokens[1] != kFormatVersion) {
    throw ParseError("unsupported " + std::string(tag) + " version", l.number);
  }
}

// Semantic validation failures inside a well-formed file are reported as parse errors.
template <typename F>
void validate_as_parse(F&& f, std::size_t line) {
  try {
    f();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

std::string write_tensor(const SymmetricTensor& t) {
  std::ostringstream os;
  write_tensor_body(os, t);
  return os.str();
}

SymmetricTensor read_tensor(std::string_view text) {
  LineReader in(text);
  return read_tensor_body(in, false);
}

std::string write_matrix(const DenseMatrix& m) {
  std::ostringstream os;
  write_matrix_body(os, m);
  return os.str();
}

DenseMatrix read_matrix(std::string_view text) {
  LineReader in(text);
  DenseMatrix m = read_matrix_body(in);
  in.expect_end();
  return m;
}

std::string write_polynomial(const Polynomial& f) {
  std::ostringstream os;
  os << "polynomial " << f.nvars() << '\n';
  for (const auto& [exp, coef] : f.terms()) {
    os << format_rational(coef) << " :";
    for (auto e : exp) os << ' ' << e;
    os << '\n';
  }
  return os.str();
}

Polynomial read_polynomial(std::string_view text) {
  LineReader in(text);
  const Line& head = in.expect("polynomial", 1);
  const std::size_t n = parse_size(head.tokens[1], head.number);
  std::vector<Term> terms;
  while (!in.done()) {
    const Line& l = in.take();
    if (l.tokens.size() != n + 2 || l.tokens[1] != ":") {
      throw ParseError("term must read 'p/q : e1 ... e" + std::to_string(n) + "'", l.number);
    }
    Term term{parse_rational_at(l.tokens[0], l.number), Exponent(n)};
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t e = parse_size(l.tokens[i + 2], l.number);
      if (e > UINT32_MAX) throw ParseError("exponent too large", l.number);
      term.exponent[i] = static_cast<std::uint32_t>(e);
    }
    terms.push_back(std::move(term));
  }
  return Polynomial(n, std::move(terms));
}

std::string write_program(const CpTensorProgram& prog) {
  std::ostringstream os;
  os << kProgramTag << ' ' << kFormatVersion << '\n';
  write_meta(os, {prog.kind, prog.order, prog.base_dim, prog.t, prog.alpha});
  os << "objective\n";
  write_tensor_body(os, prog.objective);
  os << "end\n";
  for (const auto& eq : prog.equalities) {
    os << "eq " << format_rational(eq.rhs) << '\n';
    write_tensor_body(os, eq.tensor);
    os << "end\n";
  }
  for (const auto& m : prog.maps) {
    os << "map " << m.rows() << '\n';
    write_matrix_body(os, m);
    os << "end\n";
  }
  return os.str();
}

CpTensorProgram read_program(std::string_view text) {
  LineReader in(text);
  read_header(in, kProgramTag);
  const Meta meta = read_meta(in);
  const std::size_t objective_line = in.expect("objective", 0).number;
  CpTensorProgram prog{meta.kind, meta.order, meta.base_dim, read_tensor_body(in, true), {}, {}, meta.alpha, meta.t};
  while (!in.done()) {
    const Line& l = in.take();
    if (l.tokens.front() == "eq" && l.tokens.size() == 2) {
      Rational rhs = parse_rational_at(l.tokens[1], l.number);
      prog.equalities.push_back({read_tensor_body(in, true), std::move(rhs)});
    } else if (l.tokens.front() == "map" && l.tokens.size() == 2) {
      const std::size_t image = parse_size(l.tokens[1], l.number);
      DenseMatrix m = read_matrix_body(in);
      if (m.rows() != image) throw ParseError("map image dimension disagrees with its matrix", l.number);
      in.expect("end", 0);
      prog.maps.push_back(std::move(m));
    } else {
      throw ParseError("expected an 'eq <rhs>' or 'map <dim>' block", l.number);
    }
  }
  validate_as_parse([&] { prog.validate(); }, objective_line);
  return prog;
}

std::string write_dual(const CopositiveProgram& dual) {
  std::ostringstream os;
  os << kDualTag << ' ' << kFormatVersion << '\n';
  write_meta(os, {dual.kind, dual.order, dual.base_dim, dual.t, dual.alpha});
  os << "base\n";
  write_tensor_body(os, dual.base);
  os << "end\n";
  for (const auto& s : dual.scalars) {
    os << "scalar " << s.name << ' ' << format_rational(s.objective_weight) << '\n';
    write_tensor_body(os, s.coefficient);
    os << "end\n";
  }
  for (const auto& slot : dual.slots) {
    os << "slot " << slot.dim << '\n';
    write_matrix_body(os, slot.adjoint);
    os << "end\n";
  }
  return os.str();
}

CopositiveProgram read_dual(std::string_view text) {
  LineReader in(text);
  read_header(in, kDualTag);
  const Meta meta = read_meta(in);
  const std::size_t base_line = in.expect("base", 0).number;
  CopositiveProgram dual{meta.kind, meta.order, meta.base_dim, read_tensor_body(in, true), {}, {}, meta.alpha, meta.t};
  while (!in.done()) {
    const Line& l = in.take();
    if (l.tokens.front() == "scalar" && l.tokens.size() == 3) {
      std::string name(l.tokens[1]);
      Rational weight = parse_rational_at(l.tokens[2], l.number);
      dual.scalars.push_back({std::move(name), read_tensor_body(in, true), std::move(weight)});
    } else if (l.tokens.front() == "slot" && l.tokens.size() == 2) {
      const std::size_t dim = parse_size(l.tokens[1], l.number);
      DenseMatrix adjoint = read_matrix_body(in);
      in.expect("end", 0);
      dual.slots.push_back({dim, std::move(adjoint)});
    } else {
      throw ParseError("expected a 'scalar <name> <weight>' or 'slot <dim>' block", l.number);
    }
  }
  validate_as_parse([&] { dual.validate(); }, base_line);
  return dual;
}

}  // namespace cptp
