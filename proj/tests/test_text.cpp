#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "excmap/text.hpp"

using namespace excmap;

TEST_CASE("prime power factorization") {
  CHECK(factor_prime_power(5).p == 5);
  CHECK(factor_prime_power(5).n == 1);
  CHECK(factor_prime_power(9).p == 3);
  CHECK(factor_prime_power(9).n == 2);
  CHECK(factor_prime_power(16).n == 4);
  CHECK_THROWS_AS(factor_prime_power(6), Error);
  CHECK_THROWS_AS(factor_prime_power(1), Error);
  CHECK_THROWS_AS(factor_prime_power(12), Error);
}

TEST_CASE("function literal parsing over a prime field") {
  auto lit = parse_function_literal("x^3+2*x+1 over GF(5)");
  CHECK(lit.field->q() == 5);
  CHECK(lit.f.is_polynomial());
  CHECK(lit.f.num() == Poly::from_ints(lit.field, {1, 2, 0, 1}));
  CHECK(print_ratfunc(lit.f) == "x^3+2*x+1");
  CHECK(print_function_literal(lit.f) == "x^3+2*x+1 over GF(5)");
}

TEST_CASE("function literal parsing over an extension field") {
  auto lit = parse_function_literal("(t+1)*x^2+t over GF(9)");
  CHECK(lit.field->q() == 9);
  FFElem t = lit.field->from_index(3);
  FFElem one = lit.field->one();
  CHECK(lit.f.num().coeff(2) == t + one);
  CHECK(lit.f.num().coeff(0) == t);
  CHECK(print_function_literal(lit.f) == "(t+1)*x^2+t over GF(9)");
}

TEST_CASE("rational function literals") {
  auto lit = parse_function_literal("1/x over GF(3)");
  CHECK_FALSE(lit.f.is_polynomial());
  CHECK(lit.f.den() == Poly::x(lit.field));
  CHECK(print_ratfunc(lit.f) == "(1)/(x)");

  auto lit2 = parse_function_literal("(x^2+2)/(x+2) over GF(5)");
  CHECK(lit2.f.num() == Poly::from_ints(lit2.field, {2, 0, 1}));
  CHECK(lit2.f.den() == Poly::from_ints(lit2.field, {2, 1}));
  // x^2+1 = (x+2)(x+3) over F_5, so that quotient reduces.
  auto lit2r = parse_function_literal("(x^2+1)/(x+2) over GF(5)");
  CHECK(lit2r.f.is_polynomial());
  CHECK(lit2r.f.num() == Poly::from_ints(lit2r.field, {3, 1}));

  // Mixed arithmetic collapses to a single fraction.
  auto lit3 = parse_function_literal("x - 1/x over GF(5)");
  CHECK(lit3.f.num() == Poly::from_ints(lit3.field, {-1, 0, 1}));
  CHECK(lit3.f.den() == Poly::x(lit3.field));

  // Negative exponent.
  auto lit4 = parse_function_literal("x^-2 over GF(5)");
  CHECK(lit4.f.den() == Poly::from_ints(lit4.field, {0, 0, 1}));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_function_literal("x^3"), Error);
  CHECK_THROWS_AS(parse_function_literal("x^3 over GF(6)"), Error);
  CHECK_THROWS_AS(parse_function_literal("x+ over GF(5)"), Error);
  CHECK_THROWS_AS(parse_function_literal("t over GF(5)"), Error);
  CHECK_THROWS_AS(parse_function_literal("y over GF(5)"), Error);
  CHECK_THROWS_AS(parse_function_literal("1/0 over GF(5)"), Error);
  CHECK_THROWS_AS(parse_function_literal("[9] over GF(5)"), Error);
}

TEST_CASE("element printing") {
  auto f9 = Field::make(3, 2);
  CHECK(print_elem(f9->zero()) == "0");
  CHECK(print_elem(f9->from_int(2)) == "2");
  CHECK(print_elem(f9->from_index(3)) == "t");
  CHECK(print_elem(f9->from_index(7)) == "2*t+1");
  CHECK(print_point(ProjPoint::at_infinity()) == "inf");
}

TEST_CASE("random function round-trips") {
  std::mt19937 rng(37);
  for (std::uint64_t q : {5ull, 9ull}) {
    PrimePower pp = factor_prime_power(q);
    auto field = Field::make(pp.p, pp.n);
    std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<FFElem> nc, dc;
      for (int i = 0; i < 4; ++i) nc.push_back(field->from_index(pick(rng)));
      for (int i = 0; i < 3; ++i) dc.push_back(field->from_index(pick(rng)));
      Poly num(field, nc), den(field, dc);
      if (num.is_zero() || den.is_zero()) continue;
      RatFunc f = RatFunc::make(num, den);
      auto lit = parse_function_literal(print_function_literal(f));
      CHECK(lit.f == f);
    }
  }
}

TEST_CASE("series literal parsing and printing") {
  LaurentSeries s = parse_series_literal("t^-1 + 2 + t^3 over GF(5) prec 64");
  CHECK(s.valuation() == -1);
  CHECK(s.precision() == 64);
  auto f5 = s.field();
  CHECK(s.coeff(-1) == f5->one());
  CHECK(s.coeff(0) == f5->from_int(2));
  CHECK(s.coeff(3) == f5->one());
  CHECK(s.coeff(1) == f5->zero());
  CHECK(print_series_literal(s) == "t^-1 + 2 + t^3 over GF(5) prec 64");

  LaurentSeries again = parse_series_literal(print_series_literal(s));
  CHECK(again == s);

  LaurentSeries dflt = parse_series_literal("1 + t over GF(3)");
  CHECK(dflt.precision() == kDefaultSeriesPrecision);

  CHECK_THROWS_AS(parse_series_literal("t + x over GF(5)"), Error);
  CHECK_THROWS_AS(parse_series_literal("t over GF(5) prec 0"), Error);
  CHECK_THROWS_AS(parse_series_literal("t^99 + 1 over GF(5) prec 4"), Error);
}

TEST_CASE("random series round-trips") {
  std::mt19937 rng(41);
  auto f9 = Field::make(3, 2);
  std::uniform_int_distribution<std::uint64_t> pick(0, 8);
  std::uniform_int_distribution<int> vpick(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<FFElem> coeffs;
    for (int i = 0; i < 8; ++i) coeffs.push_back(f9->from_index(pick(rng)));
    LaurentSeries s = LaurentSeries::from_terms(f9, vpick(rng), coeffs);
    LaurentSeries back = parse_series_literal(print_series_literal(s));
    CHECK(back.agrees_with(s));
    if (!s.is_zero_to_precision()) {
      CHECK(back.valuation() == s.valuation());
      CHECK(back.precision() == s.precision());
    }
  }
}
