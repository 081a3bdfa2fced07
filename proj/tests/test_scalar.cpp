#include <cmath>

#include "doctest.h"
#include "motzkin/errors.hpp"
#include "motzkin/scalar.hpp"

using namespace motzkin;

TEST_SUITE("scalar") {

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("0.7") == Rational{7, 10});
  CHECK(Rational::parse("7/10") == Rational{7, 10});
  CHECK(Rational::parse("6/20") == Rational{3, 10});
  CHECK(Rational::parse("1") == Rational{1, 1});
  CHECK_THROWS_AS(Rational::parse("1e-1"), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Rational::parse("abc"), DomainError);
  CHECK(Rational::from_double(0.3) == Rational{3, 10});
  CHECK(Rational::from_double(0.05) == Rational{1, 20});
}

TEST_CASE("scaled double arithmetic matches double in range") {
  const double xs[] = {0.3, 1.0, 2.5e-7, 123456.0};
  for (double a : xs) {
    for (double b : xs) {
      CHECK((ScaledDouble(a) * ScaledDouble(b)).to_double() == doctest::Approx(a * b).epsilon(1e-15));
      CHECK((ScaledDouble(a) + ScaledDouble(b)).to_double() == doctest::Approx(a + b).epsilon(1e-15));
      CHECK((ScaledDouble(a) / ScaledDouble(b)).to_double() == doctest::Approx(a / b).epsilon(1e-15));
    }
  }
  CHECK((ScaledDouble(0.5) - ScaledDouble(0.5)).is_zero());
}

TEST_CASE("scaled double reaches below the double range") {
  const auto tiny = ScaledDouble::pow(0.3, 3600);  // 0.3^(60^2)
  CHECK_FALSE(tiny.fits_double());
  CHECK(tiny.log() == doctest::Approx(3600 * std::log(0.3)).epsilon(1e-13));
  CHECK((tiny / tiny).to_double() == doctest::Approx(1.0));
  CHECK(tiny > ScaledDouble(0.0));
  CHECK(tiny < ScaledDouble::pow(0.3, 3599));
  CHECK(ScaledDouble::pow(0.5, 3).to_double() == 0.125);
}

TEST_CASE("scaled double text form") {
  CHECK(ScaledDouble(0.5).str() == "5.0000000000000000e-01");
  const auto s = ScaledDouble::pow(0.1, 2000).str();
  CHECK(s.find("e-2000") != std::string::npos);
}

TEST_CASE("polynomial text round trip") {
  for (const char* s : {"0", "1", "t", "1+t^2", "t+2t^3+t^5+t^7", "3t^4"}) CHECK(Poly::parse(s).str() == s);
  CHECK(Poly::parse("1+2t^2+t^4") == Poly({1, 0, 2, 0, 1}));
  CHECK_THROWS_AS(Poly::parse("1+x"), DomainError);
}

TEST_CASE("polynomial arithmetic") {
  const Poly a({1, 1});
  CHECK((a + a.shifted(2)).str() == "1+t+t^2+t^3");
  CHECK(a.sum_of_coefficients() == 2);
  CHECK(a.evaluate(0.5) == 1.5);
  CHECK(a.evaluate(BigRational(1, 2)) == BigRational(3, 2));
  const Poly big({INT64_MAX});
  CHECK_THROWS_AS(big + big, ResourceError);
}

}
