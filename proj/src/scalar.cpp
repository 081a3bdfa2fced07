#include "motzkin/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "motzkin/errors.hpp"

namespace motzkin {

// ---------------------------------------------------------------- Rational

Rational Rational::parse(std::string_view text) {
  auto fail = [&] { return DomainError("cannot parse rational '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  auto parse_int = [&](std::string_view s) {
    if (s.empty() || s.size() > 17) throw fail();
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw fail();
      v = v * 10 + (c - '0');
    }
    return v;
  };
  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    r.num = parse_int(text.substr(0, slash));
    r.den = parse_int(text.substr(slash + 1));
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) throw fail();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    r.num = (whole.empty() ? 0 : parse_int(whole)) * scale + parse_int(frac);
    r.den = scale;
  } else {
    r.num = parse_int(text);
    r.den = 1;
  }
  if (r.den == 0) throw fail();
  const auto g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

Rational Rational::from_double(double x) {
  if (!(x >= 0.0) || x >= 1e5) throw DomainError("from_double: value out of range");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return parse(s);
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

// ------------------------------------------------------------ ScaledDouble

ScaledDouble::ScaledDouble(double v) : m_(v) { normalize(); }

ScaledDouble ScaledDouble::from_parts(double mantissa, std::int64_t exponent) {
  ScaledDouble s;
  s.m_ = mantissa;
  s.e_ = exponent;
  s.normalize();
  return s;
}

void ScaledDouble::normalize() {
  if (m_ == 0.0 || !std::isfinite(m_)) {
    if (m_ == 0.0) e_ = 0;
    return;
  }
  int shift = 0;
  m_ = std::frexp(m_, &shift);
  e_ += shift;
}

ScaledDouble ScaledDouble::pow(double base, std::int64_t e) {
  if (e == 0) return ScaledDouble(1.0);
  int be = 0;
  double bm = std::frexp(base, &be);
  // base^e = bm^e * 2^(be*e); bm^e by binary powering with renormalization
  ScaledDouble result(1.0);
  ScaledDouble factor(bm);
  std::int64_t k = e < 0 ? -e : e;
  while (k > 0) {
    if (k & 1) result = result * factor;
    factor = factor * factor;
    k >>= 1;
  }
  result.e_ += static_cast<std::int64_t>(be) * (e < 0 ? -e : e);
  if (e < 0) return ScaledDouble(1.0) / result;
  return result;
}

double ScaledDouble::to_double() const {
  if (m_ == 0.0) return 0.0;
  if (e_ > std::numeric_limits<double>::max_exponent) return std::copysign(HUGE_VAL, m_);
  if (e_ < std::numeric_limits<double>::min_exponent - 60) return 0.0;
  return std::ldexp(m_, static_cast<int>(e_));
}

bool ScaledDouble::fits_double() const {
  return m_ == 0.0 || (e_ <= std::numeric_limits<double>::max_exponent &&
                       e_ >= std::numeric_limits<double>::min_exponent);
}

double ScaledDouble::log() const {
  return std::log(m_) + static_cast<double>(e_) * std::log(2.0);
}

ScaledDouble operator+(ScaledDouble a, ScaledDouble b) {
  if (a.m_ == 0.0) return b;
  if (b.m_ == 0.0) return a;
  if (a.e_ < b.e_) std::swap(a, b);
  const std::int64_t diff = a.e_ - b.e_;
  if (diff > 1100) return a;
  ScaledDouble r;
  r.m_ = a.m_ + std::ldexp(b.m_, static_cast<int>(-diff));
  r.e_ = a.e_;
  r.normalize();
  return r;
}

ScaledDouble operator-(ScaledDouble a, ScaledDouble b) {
  b.m_ = -b.m_;
  return a + b;
}

ScaledDouble operator*(ScaledDouble a, ScaledDouble b) {
  if (a.m_ == 0.0 || b.m_ == 0.0) return {};
  ScaledDouble r;
  r.m_ = a.m_ * b.m_;
  r.e_ = a.e_ + b.e_;
  r.normalize();
  return r;
}

ScaledDouble operator/(ScaledDouble a, ScaledDouble b) {
  ScaledDouble r;
  r.m_ = a.m_ / b.m_;  // b == 0 gives inf/nan like double
  r.e_ = a.m_ == 0.0 ? 0 : a.e_ - b.e_;
  r.normalize();
  return r;
}

std::partial_ordering operator<=>(const ScaledDouble& a, const ScaledDouble& b) {
  const ScaledDouble d = a - b;
  return d.m_ <=> 0.0;
}

std::string ScaledDouble::str() const {
  if (fits_double()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", to_double());
    return buf;
  }
  if (!std::isfinite(m_)) return std::to_string(m_);
  // m * 2^e = 10^x; split x into integer exponent and mantissa in [1,10)
  const long double x = std::log10(std::fabs(static_cast<long double>(m_))) +
                        static_cast<long double>(e_) * std::log10(2.0L);
  long double ex = std::floor(x);
  long double mant = std::pow(10.0L, x - ex);
  if (mant >= 10.0L) {
    mant /= 10.0L;
    ex += 1.0L;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.16Lfe%+lld", m_ < 0 ? "-" : "", mant,
                static_cast<long long>(ex));
  return buf;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(std::vector<std::int64_t> coefficients) : c_(std::move(coefficients)) {
  for (auto v : c_) {
    if (v < 0) throw DomainError("Poly coefficients must be non-negative");
  }
  trim();
}

Poly Poly::monomial(std::int64_t coefficient, int degree) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = coefficient;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::int64_t Poly::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(power)];
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    const std::int64_t x = i < a.c_.size() ? a.c_[i] : 0;
    const std::int64_t y = i < b.c_.size() ? b.c_[i] : 0;
    if (__builtin_add_overflow(x, y, &r.c_[i])) {
      throw ResourceError("exact polynomial coefficient overflow");
    }
  }
  r.trim();
  return r;
}

Poly Poly::shifted(int power) const {
  if (c_.empty()) return {};
  Poly r;
  r.c_.assign(static_cast<std::size_t>(power), 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

BigRational Poly::evaluate(const BigRational& t) const {
  BigRational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + BigRational(*it);
  return acc;
}

double Poly::evaluate(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + static_cast<double>(*it);
  return acc;
}

std::int64_t Poly::sum_of_coefficients() const {
  std::int64_t s = 0;
  for (auto v : c_) s += v;
  return s;
}

std::string Poly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const auto c = c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += 't';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

Poly Poly::parse(std::string_view text) {
  auto fail = [&] { return DomainError("cannot parse polynomial '" + std::string(text) + "'"); };
  if (text == "0") return {};
  Poly result;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('+', pos);
    if (end == std::string_view::npos) end = text.size();
    auto term = text.substr(pos, end - pos);
    if (term.empty()) throw fail();
    std::int64_t coef = 0;
    std::size_t i = 0;
    while (i < term.size() && term[i] >= '0' && term[i] <= '9') coef = coef * 10 + (term[i++] - '0');
    int power = 0;
    if (i == term.size()) {
      if (i == 0) throw fail();
    } else {
      if (term[i] != 't') throw fail();
      if (i == 0) coef = 1;
      ++i;
      power = 1;
      if (i < term.size()) {
        if (term[i] != '^' || i + 1 == term.size()) throw fail();
        power = 0;
        for (++i; i < term.size(); ++i) {
          if (term[i] < '0' || term[i] > '9') throw fail();
          power = power * 10 + (term[i] - '0');
        }
      }
    }
    result = result + Poly::monomial(coef, power);
    pos = end + 1;
  }
  return result;
}

}  // namespace motzkin
