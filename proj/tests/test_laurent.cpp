#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "excmap/laurent.hpp"
#include "excmap/text.hpp"

using namespace excmap;

namespace {

LaurentSeries series(const std::string& literal) {
  return parse_series_literal(literal);
}

}  // namespace

TEST_CASE("series arithmetic examples") {
  auto f5 = Field::make(5, 1);
  LaurentSeries a = series("1 + t over GF(5)");
  LaurentSeries b = series("1 - t over GF(5)");
  LaurentSeries prod = a * b;
  CHECK(prod.coeff(0) == f5->one());
  CHECK(prod.coeff(1) == f5->zero());
  CHECK(prod.coeff(2) == f5->from_int(4));  // 1 - t^2
  CHECK(prod.precision() == 64);

  // t^-1 * t = 1.
  LaurentSeries tinv = series("t^-1 over GF(5)");
  LaurentSeries t = series("t over GF(5)");
  LaurentSeries one = tinv * t;
  CHECK(one.valuation() == 0);
  CHECK(one.coeff(0) == f5->one());
}

TEST_CASE("series addition handles cancellation and precision") {
  auto f3 = Field::make(3, 1);
  LaurentSeries a = series("1 + 2*t over GF(3) prec 8");
  LaurentSeries b = series("2 + t over GF(3) prec 4");
  LaurentSeries sum = a + b;  // 3 + 3t = 0 to the shared precision
  CHECK(sum.is_zero_to_precision());
  CHECK(sum.order_bound() == 4);

  LaurentSeries c = series("1 + t over GF(3) prec 8") + series("2 over GF(3) prec 6");
  CHECK_FALSE(c.is_zero_to_precision());
  CHECK(c.valuation() == 1);  // constant terms cancel
  CHECK(c.order_bound() == 6);
}

TEST_CASE("multiplication carries the minimum surviving precision") {
  auto f5 = Field::make(5, 1);
  LaurentSeries a = series("1 + t over GF(5) prec 10");
  LaurentSeries b = series("t^2 + t^3 over GF(5) prec 4");
  LaurentSeries prod = a * b;
  CHECK(prod.valuation() == 2);
  CHECK(prod.precision() == 4);
  CHECK(prod.order_bound() == 6);
  CHECK(prod.coeff(2) == f5->one());
  CHECK(prod.coeff(3) == f5->from_int(2));
  CHECK(prod.coeff(4) == f5->one());

  // Scaling by zero collapses to the zero form with the same bound.
  LaurentSeries z = a.scaled(f5->zero());
  CHECK(z.is_zero_to_precision());
  CHECK(z.order_bound() == a.order_bound());
}

TEST_CASE("invert_unit") {
  auto f3 = Field::make(3, 1);
  LaurentSeries u = series("1 + t over GF(3)");
  LaurentSeries v = u.invert_unit();
  // Geometric series: 1 + 2t + t^2 + 2t^3 + ...
  CHECK(v.coeff(0) == f3->one());
  CHECK(v.coeff(1) == f3->from_int(2));
  CHECK(v.coeff(2) == f3->one());
  CHECK(v.coeff(3) == f3->from_int(2));
  LaurentSeries check = u * v;
  CHECK(check.coeff(0) == f3->one());
  for (int e = 1; e < check.order_bound(); ++e) CHECK(check.coeff(e).is_zero());

  CHECK_THROWS_AS(series("t over GF(3)").invert_unit(), Error);
  CHECK_THROWS_AS(series("0 over GF(3)").invert_unit(), Error);
}

TEST_CASE("nth_root_one_unit examples") {
  auto f3 = Field::make(3, 1);
  LaurentSeries one = LaurentSeries::one(f3);
  CHECK(nth_root_one_unit(one, 7).agrees_with(one));

  // sqrt(1 + t) over F_3 starts 1 + 2t since 2*b1 = 1 gives b1 = 2.
  LaurentSeries u = series("1 + t over GF(3)");
  LaurentSeries v = nth_root_one_unit(u, 2);
  CHECK(v.coeff(0) == f3->one());
  CHECK(v.coeff(1) == f3->from_int(2));
  CHECK((v * v).agrees_with(u));

  // Cube root recovers 1 + t from its cube over F_5.
  auto f5 = Field::make(5, 1);
  LaurentSeries w = series("1 + t over GF(5)");
  LaurentSeries cube = w.pow(3);
  CHECK(nth_root_one_unit(cube, 3).agrees_with(w));

  CHECK_THROWS_AS(nth_root_one_unit(u, 3), Error);   // p | m
  CHECK_THROWS_AS(nth_root_one_unit(series("2 + t over GF(3)"), 2), Error);
  CHECK_THROWS_AS(nth_root_one_unit(series("t + t^2 over GF(3)"), 2), Error);
}

TEST_CASE("root extraction round-trip is deterministic") {
  std::mt19937 rng(83);
  for (std::uint64_t q : {3ull, 5ull, 9ull}) {
    PrimePower pp = factor_prime_power(q);
    auto field = Field::make(pp.p, pp.n);
    std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
    std::uniform_int_distribution<unsigned> mpick(1, 12);
    int done = 0;
    while (done < 34) {
      unsigned m = mpick(rng);
      if (m % field->p() == 0) continue;
      std::vector<FFElem> coeffs(kDefaultSeriesPrecision, field->zero());
      coeffs[0] = field->one();
      for (std::size_t i = 1; i < coeffs.size(); ++i) {
        coeffs[i] = field->from_index(pick(rng));
      }
      LaurentSeries u = LaurentSeries::from_terms(field, 0, coeffs);
      LaurentSeries v = nth_root_one_unit(u, m);
      CHECK(v.precision() == kDefaultSeriesPrecision);
      CHECK(v.pow(m).agrees_with(u));
      LaurentSeries v2 = nth_root_one_unit(u, m);
      CHECK(v2 == v);  // bit-identical across runs
      ++done;
    }
  }
}

TEST_CASE("tame_wild_split") {
  CHECK(tame_wild_split(12, 2) == std::pair<unsigned, unsigned>{3, 2});
  CHECK(tame_wild_split(5, 5) == std::pair<unsigned, unsigned>{1, 1});
  CHECK(tame_wild_split(7, 3) == std::pair<unsigned, unsigned>{7, 0});
  CHECK_THROWS_AS(tame_wild_split(0, 3), Error);
  TameExtensionModel m = TameExtensionModel::make(12, 4, 2);
  CHECK(m.m == 3);
  CHECK(m.wild_exp == 2);
  CHECK_FALSE(m.tame());
  CHECK(TameExtensionModel::make(7, 9, 3).tame());
}

TEST_CASE("eisenstein_normalize") {
  auto f5 = Field::make(5, 1);
  // z = x^3 * (2 + x): scaled by 2^{-1} = 3 to x^3 * (1 + 3x).
  LaurentSeries z = series("2*t^3 + t^4 over GF(5)");
  EisensteinRelation rel = eisenstein_normalize(z, 3);
  CHECK(rel.scalar == f5->from_int(3));
  CHECK(rel.unit.valuation() == 0);
  CHECK(rel.unit.coeff(0) == f5->one());
  CHECK(rel.unit.coeff(1) == f5->from_int(3));
  CHECK(rel.relation().valuation() == 3);

  // Already normalized input is unchanged.
  LaurentSeries z2 = series("t^2 + t^3 over GF(5)");
  EisensteinRelation rel2 = eisenstein_normalize(z2, 2);
  CHECK(rel2.scalar == f5->one());
  CHECK(rel2.unit.coeff(1) == f5->one());

  CHECK_THROWS_AS(eisenstein_normalize(z, 2), Error);  // valuation mismatch
}

TEST_CASE("tame_uniformizer") {
  auto f5 = Field::make(5, 1);
  // n = 3, p = 5: z = x^3 (1 + x), y = x * (1+x)^{1/3}, y^3 = z.
  LaurentSeries z = series("t^3 + t^4 over GF(5)");
  EisensteinRelation rel = eisenstein_normalize(z, 3);
  LaurentSeries y = tame_uniformizer(rel, 5);
  CHECK(y.valuation() == 1);
  CHECK(y.pow(3).agrees_with(rel.relation()));

  // Fully wild n = p: m = 1 and y is the relation itself.
  LaurentSeries zw = series("t^5 + t^6 over GF(5)");
  EisensteinRelation relw = eisenstein_normalize(zw, 5);
  LaurentSeries yw = tame_uniformizer(relw, 5);
  CHECK(yw.valuation() == 5);
  CHECK(yw.agrees_with(relw.relation()));

  // n = 1 is trivial.
  LaurentSeries z1 = series("t + t^2 over GF(5)");
  EisensteinRelation rel1 = eisenstein_normalize(z1, 1);
  LaurentSeries y1 = tame_uniformizer(rel1, 5);
  CHECK(y1.agrees_with(rel1.relation()));

  // Mixed case: n = 12 over p = 2 gives valuation 4 and y^3 = z.
  auto z12 = series("t^12 + t^13 over GF(2)");
  EisensteinRelation rel12 = eisenstein_normalize(z12, 12);
  LaurentSeries y12 = tame_uniformizer(rel12, 2);
  CHECK(y12.valuation() == 4);
  CHECK(y12.pow(3).agrees_with(rel12.relation()));
}

TEST_CASE("roots_of_unity_constant") {
  auto f5 = Field::make(5, 1);
  auto r4 = roots_of_unity_constant(4, f5);
  CHECK(r4.size() == 4);
  auto r3 = roots_of_unity_constant(3, f5);
  REQUIRE(r3.size() == 1);
  CHECK(r3[0].coeff(0).is_one());
  CHECK(roots_of_unity_constant(1, f5).size() == 1);
  CHECK_THROWS_AS(roots_of_unity_constant(10, f5), Error);  // p | r

  for (std::uint64_t q : {3ull, 4ull, 7ull, 9ull}) {
    PrimePower pp = factor_prime_power(q);
    auto field = Field::make(pp.p, pp.n);
    for (unsigned r = 1; r <= 12; ++r) {
      if (r % field->p() == 0) continue;
      CHECK(roots_of_unity_constant(r, field).size() ==
            std::gcd(static_cast<std::uint64_t>(r), q - 1));
    }
  }
}

TEST_CASE("tame monodromy triples") {
  ExcTriple t35 = tame_monodromy_triple(3, 5);
  CHECK(validate_triple(t35).totally_ramified());
  CHECK(is_exceptional_triple(t35));

  ExcTriple t37 = tame_monodromy_triple(3, 7);
  CHECK(validate_triple(t37).totally_ramified());
  CHECK_FALSE(is_exceptional_triple(t37));
  CHECK(t37.A.size() == t37.G.size());  // 7 = 1 mod 3: A = G

  ExcTriple t1 = tame_monodromy_triple(1, 5);
  CHECK(is_exceptional_triple(t1));

  CHECK_THROWS_AS(tame_monodromy_triple(4, 2), Error);
}

TEST_CASE("coprime battery examples") {
  CoprimeReport r35 = coprime_battery(3, 5);
  CHECK(r35.agree);
  CHECK(r35.common_value());
  CHECK(r35.triple_exceptional);
  CHECK(r35.no_small_order_element);
  CHECK(r35.no_galois_subextension);

  CoprimeReport r45 = coprime_battery(4, 5);
  CHECK(r45.agree);
  CHECK_FALSE(r45.common_value());
  CHECK_FALSE(r45.triple_exceptional);
  CHECK_FALSE(r45.no_small_order_element);
  CHECK_FALSE(r45.no_galois_subextension);

  CHECK(coprime_battery(1, 7).agree);
  CHECK(coprime_battery(1, 7).common_value());

  CHECK_THROWS_AS(coprime_battery(6, 9), Error);
}

TEST_CASE("coprime battery agrees exhaustively and matches gcd") {
  for (unsigned n = 1; n <= 30; ++n) {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull, 11ull, 13ull}) {
      if (std::gcd(static_cast<std::uint64_t>(n), q) != 1) continue;
      CoprimeReport r = coprime_battery(n, q);
      CAPTURE(n);
      CAPTURE(q);
      CHECK(r.agree);
      CHECK(r.common_value() ==
            (std::gcd(static_cast<std::uint64_t>(n), q - 1) == 1));
      // The direction used for the local theorem: exceptional forces
      // coprimality.
      if (r.triple_exceptional) CHECK(r.gcd_coprime);
    }
  }
}
