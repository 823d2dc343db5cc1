#include "cptp/rational.hpp"

#include <cctype>
#include <cmath>

#include "cptp/error.hpp"

namespace cptp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  if (slash != std::string_view::npos && den.find_first_not_of('0') == std::string_view::npos) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  std::string normalized(text.front() == '+' ? text.substr(1) : text);
  Rational value;
  value.set_str(normalized, 10);
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

std::vector<double> to_double(std::span<const Rational> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.get_d());
  return out;
}

Rational from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("cannot convert non-finite double to rational");
  Rational out(value);
  out.canonicalize();
  return out;
}

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs) {
  if (lhs.size() != rhs.size()) {
    throw InvalidArgument("dot: length mismatch " + std::to_string(lhs.size()) + " vs " +
                          std::to_string(rhs.size()));
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) sum += lhs[i] * rhs[i];
  return sum;
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace cptp
