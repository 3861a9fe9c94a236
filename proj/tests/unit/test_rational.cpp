#include "pgn/core/format.hpp"
#include "pgn/core/rational.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace pgn;

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2/7") == Rational(-2, 7));
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("1e7") == Rational(10000000));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(parse_rational(" 1.5 / 3 ") == Rational(1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
}

TEST_CASE("rational printing") {
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-1, 3)) == "-1/3");
}

TEST_CASE("doubles convert exactly") {
  Rational r = from_double(0.1);
  CHECK(r != Rational(1, 10));
  CHECK(to_double(r) == 0.1);
  CHECK(is_double_exact(r));
  CHECK_FALSE(is_double_exact(Rational(1, 3)));
  CHECK(is_double_exact(Rational(3, 4)));
}

TEST_CASE("floor and ceil") {
  CHECK(floor_rational(Rational(7, 2)) == 3);
  CHECK(ceil_rational(Rational(7, 2)) == 4);
  CHECK(floor_rational(Rational(-7, 2)) == -4);
  CHECK(ceil_rational(Rational(6, 2)) == 3);
}

TEST_CASE("csv float format") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(-0.0) == "0");
}

TEST_CASE("conversion to double rounds to nearest") {
  CHECK(to_double(frac(1, 10)) == 0.1);
  CHECK(to_double(frac(-1, 3)) == -1.0 / 3);
  CHECK(to_double(frac(2, 3)) == 2.0 / 3);
  CHECK(to_double(parse_rational("1e-300")) == 1e-300);
  CHECK(to_double(parse_rational("123456789.987654321")) == 123456789.987654321);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    long p = static_cast<long>(rng() % 2000001) - 1000000, q = 1 + static_cast<long>(rng() % 999999);
    CHECK(to_double(frac(p, q)) == static_cast<double>(p) / static_cast<double>(q));
    double x = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 200) - 100);
    CHECK(to_double(from_double(x)) == x);
  }
}
