#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ordlab {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. The textual form is "p/q", or
/// just "p" when the denominator is one; decimal literals are rejected by
/// parse() so that nothing inexact can enter through a file.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) : value_(static_cast<long>(value)) {}  // NOLINT(implicit)

  Rational(long numerator, long denominator);

  static Rational parse(std::string_view text);
  static Rational from_mpq(mpq_class value);

  std::string str() const;

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  Rational abs() const;
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  std::size_t hash() const;

  Rational& operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return from_mpq(-x.value_); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class value_;
};

/// Integer power with a non-negative exponent.
Rational pow(const Rational& base, unsigned exponent);

/// 1 / 10^k, the shape of the default continuity tolerances.
Rational inverse_power_of_ten(unsigned k);

struct RationalHash {
  std::size_t operator()(const Rational& r) const { return r.hash(); }
};

}  // namespace ordlab
