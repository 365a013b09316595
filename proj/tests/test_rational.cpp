#include <limits>
#include <random>

#include "doctest.h"
#include "urysohn/rational.hpp"

using urysohn::Rational;

TEST_CASE("rational normalizes and parses") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational::parse("6/5") == Rational(6, 5));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse(" 2/4 ") == Rational(1, 2));
  CHECK(Rational(1, 5).str() == "1/5");
  CHECK(Rational(4).str() == "4");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("1.5"));
  CHECK_THROWS(Rational::parse("1/-2"));
  CHECK_THROWS(Rational::parse(""));
}

TEST_CASE("rational arithmetic and order") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(b < a);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(6).ceil() == 6);
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
}

TEST_CASE("rational overflow is reported, not wrapped") {
  Rational big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + Rational(1), urysohn::RationalOverflow);
  CHECK_THROWS_AS(big * Rational(2), urysohn::RationalOverflow);
  // Cancellation through the wide intermediate stays exact.
  CHECK(big * Rational(1, 2) * Rational(2) == big);
}

TEST_CASE("rational field identities on random values") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 999);
  for (int t = 0; t < 2000; ++t) {
    Rational x(num(rng), den(rng)), y(num(rng), den(rng)), z(num(rng), den(rng));
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(((x < y) == (x.to_double() < y.to_double()) || x.to_double() == y.to_double()));
    if (!y.is_zero()) CHECK((x / y) * y == x);
  }
}
