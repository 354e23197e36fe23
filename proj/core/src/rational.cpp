#include "ordlab/rational.hpp"

#include <cctype>
#include <functional>
#include <ostream>

#include "ordlab/error.hpp"

namespace ordlab {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  const std::string_view num = slash == std::string_view::npos ? s : s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorCode::ParseError, "not a rational literal \"p/q\": '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(zn, zd);
  q.canonicalize();
  return from_mpq(std::move(q));
}

Rational Rational::from_mpq(mpq_class value) {
  Rational r;
  r.value_ = std::move(value);
  return r;
}

std::string Rational::str() const { return value_.get_str(); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

std::size_t Rational::hash() const {
  const std::size_t h1 = mpz_get_ui(value_.get_num_mpz_t()) ^ static_cast<std::size_t>(mpz_sgn(value_.get_num_mpz_t()));
  const std::size_t h2 = mpz_get_ui(value_.get_den_mpz_t());
  return h1 * 1000003u ^ (h2 + 0x9e3779b97f4a7c15ull + (h1 << 6) + (h1 >> 2));
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  for (unsigned k = 0; k < exponent; ++k) result *= base;
  return result;
}

Rational inverse_power_of_ten(unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, k);
  return Rational::from_mpq(mpq_class(mpz_class(1), den));
}

}  // namespace ordlab
