#pragma once

#include <string>

#include "excmap/laurent.hpp"
#include "excmap/poly.hpp"

namespace excmap {

struct PrimePower {
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  unsigned n = 0;
};

/// Factors q as p^n; ParseError when q is not a prime power >= 2.
PrimePower factor_prime_power(std::uint64_t q);

// Function literals: expressions in x with integer coefficients, extension
// coefficients as polynomials in t (the canonical field generator), e.g.
//   "x^3+2*x+1 over GF(5)"     "(t+1)*x^2+t over GF(9)"     "1/x over GF(3)"
// "[k]" denotes the field element of index k and round-trips any element.

struct FunctionLiteral {
  FieldPtr field;
  RatFunc f;
};

FunctionLiteral parse_function_literal(const std::string& text);
RatFunc parse_function_expr(const std::string& expr, const FieldPtr& field);

/// Canonical bare form, highest degree first, e.g. "x^3+2*x+1" or
/// "(x^2+1)/(x+2)".
std::string print_ratfunc(const RatFunc& f);
std::string print_poly(const Poly& f);
/// Bare form plus the field clause, parse_function_literal-compatible.
std::string print_function_literal(const RatFunc& f);

/// Element as a polynomial in t over the prime subfield ("0", "2", "t+1").
std::string print_elem(const FFElem& a);
/// Element string or "inf".
std::string print_point(const ProjPoint& pt);

// Series literals: sums of c*t^e terms with integer (prime-subfield) or
// "[k]" coefficients and integer exponents, an "over GF(q)" clause and an
// optional "prec N" suffix, e.g. "t^-1 + 2 + t^3 over GF(5) prec 64".

LaurentSeries parse_series_literal(const std::string& text);
std::string print_series_literal(const LaurentSeries& s);

}  // namespace excmap
