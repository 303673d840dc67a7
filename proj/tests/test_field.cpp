#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "excmap/field.hpp"

using namespace excmap;

namespace {

// Test-local mod-p polynomial oracle, independent of the library: used to
// recompute defining polynomials by brute force.
using IntPoly = std::vector<unsigned>;  // constant first, fixed length

bool oracle_divides(const IntPoly& cand, unsigned n, const IntPoly& div,
                    unsigned d, unsigned p) {
  std::vector<long long> r(cand.begin(), cand.end());
  r.resize(n + 1, 0);
  r[n] = 1;
  for (int i = static_cast<int>(n); i >= static_cast<int>(d); --i) {
    long long top = r[i] % p;
    if (top == 0) continue;
    r[i] = 0;
    for (unsigned j = 0; j < d; ++j) {
      r[i - d + j] = ((r[i - d + j] - top * div[j]) % p + p) % p;
    }
  }
  for (unsigned j = 0; j < d; ++j) {
    if (r[j] % p != 0) return false;
  }
  return true;
}

bool oracle_irreducible(const IntPoly& cand, unsigned n, unsigned p) {
  for (unsigned d = 1; 2 * d <= n; ++d) {
    unsigned long long count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned long long idx = 0; idx < count; ++idx) {
      IntPoly div(d);
      unsigned long long rest = idx;
      for (unsigned i = 0; i < d; ++i) {
        div[i] = static_cast<unsigned>(rest % p);
        rest /= p;
      }
      if (oracle_divides(cand, n, div, d, p)) return false;
    }
  }
  return true;
}

// Least monic irreducible of degree n over F_p in counting order.
IntPoly oracle_least_irreducible(unsigned p, unsigned n) {
  unsigned long long count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  for (unsigned long long idx = 0; idx < count; ++idx) {
    IntPoly cand(n);
    unsigned long long rest = idx;
    for (unsigned i = 0; i < n; ++i) {
      cand[i] = static_cast<unsigned>(rest % p);
      rest /= p;
    }
    if (cand[0] == 0) continue;
    if (oracle_irreducible(cand, n, p)) {
      cand.push_back(1);
      return cand;
    }
  }
  return {};
}

std::vector<std::uint32_t> to32(const IntPoly& v) {
  return std::vector<std::uint32_t>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("make_field picks the least irreducible modulus") {
  // Frozen values recomputed by the oracle: X for F_3, X^2+1 for F_9, and
  // X^4+X+1 for F_16.
  CHECK(Field::make(3, 1)->modulus() == std::vector<std::uint32_t>{0, 1});

  auto f9 = Field::make(3, 2);
  CHECK(f9->modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(f9->modulus() == to32(oracle_least_irreducible(3, 2)));

  auto f16 = Field::make(2, 4);
  CHECK(f16->modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
  CHECK(f16->modulus() == to32(oracle_least_irreducible(2, 4)));

  // A handful of further fields against the oracle.
  for (auto [p, n] : {std::pair<unsigned, unsigned>{2, 6},
                      {3, 3},
                      {5, 2},
                      {7, 2},
                      {2, 8}}) {
    CAPTURE(p);
    CAPTURE(n);
    CHECK(Field::make(p, n)->modulus() == to32(oracle_least_irreducible(p, n)));
  }
}

TEST_CASE("make_field rejects bad parameters") {
  CHECK_THROWS_WITH_AS(Field::make(4, 1), doctest::Contains("NotPrime"), Error);
  CHECK_THROWS_AS(Field::make(1, 1), Error);
  CHECK_THROWS_AS(Field::make(2, 25), Error);
  // Cardinality cap: 3^16 > 2^24.
  CHECK_THROWS_AS(Field::make(3, 16), Error);
  try {
    Field::make(3, 16);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeTooLarge);
  }
}

TEST_CASE("field registry interns fields") {
  CHECK(Field::make(5, 1).get() == Field::make(5, 1).get());
  CHECK(Field::make(2, 4).get() != Field::make(2, 2).get());
}

TEST_CASE("field arithmetic examples") {
  auto f5 = Field::make(5, 1);
  CHECK(f5->from_int(2) + f5->from_int(4) == f5->from_int(1));
  CHECK(f5->from_int(3) / f5->from_int(3) == f5->one());

  // F_9 = F_3[t]/(t^2+1): t * t = 2.
  auto f9 = Field::make(3, 2);
  FFElem t = f9->from_index(3);
  CHECK(t * t == f9->from_int(2));

  CHECK_THROWS_AS(f5->one() / f5->zero(), Error);
  auto f7 = Field::make(7, 1);
  CHECK_THROWS_AS(f5->one() + f7->one(), Error);
}

TEST_CASE("element index round-trip and counting order") {
  auto f9 = Field::make(3, 2);
  for (std::uint64_t i = 0; i < f9->q(); ++i) {
    CHECK(f9->from_index(i).index() == i);
  }
  // Digit order: index p is the generator t.
  CHECK(f9->from_index(3).coeffs() == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("mult_order examples and divisibility") {
  auto f7 = Field::make(7, 1);
  CHECK(mult_order(f7->one()) == 1);
  CHECK(mult_order(f7->from_int(2)) == 3);
  auto f5 = Field::make(5, 1);
  CHECK(mult_order(f5->from_int(2)) == 4);
  CHECK_THROWS_AS(mult_order(f5->zero()), Error);

  for (std::uint64_t q : {9ull, 16ull, 25ull}) {
    auto pp = q == 9 ? Field::make(3, 2) : q == 16 ? Field::make(2, 4) : Field::make(5, 2);
    for (std::uint64_t i = 1; i < pp->q(); ++i) {
      FFElem a = pp->from_index(i);
      std::uint64_t r = mult_order(a);
      CHECK((pp->q() - 1) % r == 0);
      CHECK(a.pow(r).is_one());
      if (r > 1) CHECK_FALSE(a.pow(r / (r % 2 == 0 ? 2 : r)).is_one());
    }
  }
}

TEST_CASE("frobenius fixes the whole field") {
  // Representative sweep including every proper extension shape under 2^16.
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{2, 16},
                      {3, 10},
                      {5, 6},
                      {7, 5},
                      {11, 4},
                      {13, 4},
                      {251, 2},
                      {65521, 1}}) {
    CAPTURE(p);
    CAPTURE(n);
    CHECK(frobenius_fixes_all(Field::make(p, n)));
  }
}

TEST_CASE("embedding constants, roots, and homomorphism") {
  auto f3 = Field::make(3, 1);
  auto f9 = Field::make(3, 2);
  FieldEmbedding e39 = embed(f3, f9);
  for (std::uint64_t c = 0; c < 3; ++c) {
    CHECK(e39.apply(f3->from_int(c)) == f9->from_int(c));
  }

  // F_4 -> F_16: gen_image is the least root of the F_4 modulus; verified by
  // direct root scan over all 16 elements.
  auto f4 = Field::make(2, 2);
  auto f16 = Field::make(2, 4);
  FieldEmbedding e = embed(f4, f16);
  const auto& mod = f4->modulus();
  auto eval_mod = [&](const FFElem& x) {
    FFElem acc = f16->zero();
    for (unsigned i = mod.size(); i-- > 0;) acc = acc * x + f16->from_int(mod[i]);
    return acc;
  };
  CHECK(eval_mod(e.gen_image()).is_zero());
  for (std::uint64_t i = 0; i < e.gen_image().index(); ++i) {
    CHECK_FALSE(eval_mod(f16->from_index(i)).is_zero());
  }

  // Identity embedding.
  FieldEmbedding id = embed(f9, f9);
  for (std::uint64_t i = 0; i < f9->q(); ++i) {
    CHECK(id.apply(f9->from_index(i)) == f9->from_index(i));
  }

  CHECK_THROWS_AS(embed(f4, f9), Error);  // different characteristic
  CHECK_THROWS_AS(embed(Field::make(2, 3), f16), Error);  // 3 does not divide 4

  // Ring homomorphism on random pairs.
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(0, f4->q() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    FFElem a = f4->from_index(pick(rng));
    FFElem b = f4->from_index(pick(rng));
    CHECK(e.apply(a * b) == e.apply(a) * e.apply(b));
    CHECK(e.apply(a + b) == e.apply(a) + e.apply(b));
  }
  CHECK(e.apply(f4->one()) == f16->one());
}

TEST_CASE("log-table and plain arithmetic agree") {
  // F_{3^7} = 2187 elements has tables, F_{5^7} = 78125 does not; cross-check
  // the small field's multiplication against digit arithmetic through the
  // distributive law and inverses.
  auto f = Field::make(3, 7);
  REQUIRE(f->has_log_tables());
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::uint64_t> pick(0, f->q() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    FFElem a = f->from_index(pick(rng));
    FFElem b = f->from_index(pick(rng));
    FFElem c = f->from_index(pick(rng));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
  }
  auto big = Field::make(5, 7);
  CHECK_FALSE(big->has_log_tables());
  FFElem x = big->from_index(5);
  CHECK((x * x.inverse()).is_one());
}
