#pragma once

// Scalar types for the normalization tables.
//
//  * Rational       - exact area weight t = num/den, parsed from "0.7" or "7/10".
//  * ScaledDouble   - IEEE double mantissa with a 64-bit binary exponent, so
//                     quantities like t^(k^2) at k = 200 do not underflow.
//  * Poly           - polynomial in t with non-negative int64 coefficients.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace motzkin {

using BigRational = boost::multiprecision::cpp_rational;

struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  /// Accepts "3/10", "0.3", "1", "1e-1" is rejected. Throws DomainError.
  static Rational parse(std::string_view text);
  /// Nearest decimal with at most 12 fractional digits; x must lie in [0, 1e5).
  static Rational from_double(double x);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  BigRational exact() const { return BigRational(num, den); }
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

class ScaledDouble {
public:
  ScaledDouble() = default;
  ScaledDouble(double v);  // NOLINT(google-explicit-constructor)

  static ScaledDouble from_parts(double mantissa, std::int64_t exponent);
  /// base^e for base > 0 without intermediate over/underflow.
  static ScaledDouble pow(double base, std::int64_t e);

  double mantissa() const { return m_; }
  std::int64_t exponent() const { return e_; }
  bool is_zero() const { return m_ == 0.0; }

  /// Converts to double; flushes to 0 / inf outside the double range.
  double to_double() const;
  /// True if to_double() is exact up to rounding (value in normal double range).
  bool fits_double() const;
  double log() const;  // natural log, value must be > 0

  friend ScaledDouble operator+(ScaledDouble a, ScaledDouble b);
  friend ScaledDouble operator-(ScaledDouble a, ScaledDouble b);
  friend ScaledDouble operator*(ScaledDouble a, ScaledDouble b);
  friend ScaledDouble operator/(ScaledDouble a, ScaledDouble b);
  ScaledDouble& operator+=(ScaledDouble o) { return *this = *this + o; }
  ScaledDouble& operator*=(ScaledDouble o) { return *this = *this * o; }

  friend std::partial_ordering operator<=>(const ScaledDouble& a, const ScaledDouble& b);
  friend bool operator==(const ScaledDouble& a, const ScaledDouble& b) {
    return a.m_ == b.m_ && a.e_ == b.e_;
  }

  /// Scientific notation with 17 significant digits, e.g. "1.2345678901234567e-1882".
  std::string str() const;

private:
  void normalize();
  double m_ = 0.0;        // 0 or |m| in [0.5, 1)
  std::int64_t e_ = 0;
};

class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<std::int64_t> coefficients);
  static Poly monomial(std::int64_t coefficient, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  std::int64_t coefficient(int power) const;
  const std::vector<std::int64_t>& coefficients() const { return c_; }

  /// Overflow-checked; throws ResourceError on int64 overflow.
  friend Poly operator+(const Poly& a, const Poly& b);
  /// Multiply by t^power.
  Poly shifted(int power) const;

  BigRational evaluate(const BigRational& t) const;
  double evaluate(double t) const;
  std::int64_t sum_of_coefficients() const;

  bool operator==(const Poly&) const = default;

  /// "1+2t^2+t^4", "t", "0".
  std::string str() const;
  /// Inverse of str(); throws DomainError.
  static Poly parse(std::string_view text);

private:
  void trim();
  std::vector<std::int64_t> c_;
};

}  // namespace motzkin
