#include <doctest.h>

#include "netflow/matrix.hpp"
#include "netflow/operator.hpp"
#include "netflow/rational.hpp"

using namespace netflow;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("to_string is canonical and round-trips") {
  CHECK(to_string(Rational(2, 4)) == "1/2");
  CHECK(to_string(Rational(5)) == "5");
  for (const char* text : {"-13/7", "0", "22/3"}) CHECK(to_string(parse_rational(text)) == text);
}

TEST_CASE("floor_to_long rounds toward minus infinity") {
  CHECK(floor_to_long(Rational(7, 2)) == 3);
  CHECK(floor_to_long(Rational(-1, 3)) == -1);
  CHECK(floor_to_long(Rational(4)) == 4);
}

TEST_CASE("add_scaled drops cancelled entries") {
  RationalVector y{{0, Rational(1)}, {2, Rational(1, 2)}};
  add_scaled(y, Rational(-1), RationalVector{{0, Rational(1)}, {1, Rational(3)}});
  CHECK(y.size() == 2);
  CHECK(y.count(0) == 0);
  CHECK(y.at(1) == -3);
  CHECK(l1_norm(y) == Rational(7, 2));
  CHECK_FALSE(is_nonnegative(y));
}

TEST_CASE("multiply_transposed matches entrywise definition") {
  RationalMatrix a(2, 3), b(2, 2);
  a.set(0, 0, 1);
  a.set(1, 2, Rational(1, 3));
  a.set(0, 1, 2);
  b.set(0, 1, 5);
  b.set(1, 0, 3);
  const RationalMatrix c = multiply_transposed(a, b);
  REQUIRE(c.rows == 3);
  REQUIRE(c.cols == 2);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Rational expected = 0;
      for (std::size_t k = 0; k < 2; ++k) expected += a.at(k, i) * b.at(k, j);
      CHECK(c.at(i, j) == expected);
    }
  }
}

TEST_CASE("ColumnStochasticOperator validates and applies exactly") {
  RationalMatrix m(2, 2);
  m.set(1, 0, 1);
  m.set(0, 1, 1);
  const ColumnStochasticOperator b(m);
  CHECK(b.apply(RationalVector{{0, Rational(1)}}) == RationalVector{{1, Rational(1)}});
  CHECK(b.apply_power(RationalVector{{0, Rational(1)}}, 2) == RationalVector{{0, Rational(1)}});
  CHECK_THROWS_AS(b.apply(RationalVector{{5, Rational(1)}}), std::out_of_range);

  RationalMatrix bad(2, 2);
  bad.set(0, 0, Rational(1, 2));
  bad.set(1, 1, 1);
  CHECK_THROWS_AS(ColumnStochasticOperator{bad}, std::invalid_argument);
  RationalMatrix negative(2, 2);
  negative.set(0, 0, 2);
  negative.set(1, 0, -1);
  negative.set(1, 1, 1);
  CHECK_THROWS_AS(ColumnStochasticOperator{negative}, std::invalid_argument);
}

TEST_CASE("l1 operator norm is the maximal column sum") {
  Eigen::MatrixXd m(2, 2);
  m << 1, -3, -2, 0.5;
  CHECK(l1_operator_norm(m) == doctest::Approx(3.5));
}
