#pragma once

#include <utility>
#include <vector>

#include "excmap/field.hpp"

namespace excmap {

/// Univariate polynomial over a fixed finite field, constant term first,
/// no trailing zeros; the zero polynomial has an empty coefficient vector.
class Poly {
 public:
  Poly() = default;
  Poly(FieldPtr field, std::vector<FFElem> coeffs);

  static Poly zero(const FieldPtr& field);
  static Poly one(const FieldPtr& field);
  static Poly constant(const FFElem& c);
  static Poly x(const FieldPtr& field);
  /// Builds from prime-subfield integer coefficients, constant term first.
  static Poly from_ints(const FieldPtr& field, const std::vector<long long>& coeffs);

  const FieldPtr& field() const { return field_; }
  const std::vector<FFElem>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FFElem coeff(unsigned i) const;
  FFElem leading() const;

  FFElem eval(const FFElem& x) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(const FFElem& s) const;
  Poly monic() const;
  Poly derivative() const;

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
  /// Monic gcd; gcd(0, 0) = 0.
  static Poly gcd(const Poly& a, const Poly& b);

  /// Multiplicity of (X - a) as a factor; 0 when a is not a root.
  unsigned root_multiplicity(const FFElem& a) const;

  /// Composition this(inner).
  Poly compose(const Poly& inner) const;

  /// X^d * this(1/X) for d >= degree: coefficient reversal padded to d.
  Poly reversed(unsigned d) const;

  /// True when every exponent with nonzero coefficient is divisible by p.
  bool supported_on_pth_powers() const;
  /// Inverse of X -> X^p on the support: c_{p i} becomes c_i.
  Poly contract_pth_powers() const;

  /// Coefficient-wise embedding into a larger field.
  Poly mapped(const FieldEmbedding& emb) const;

 private:
  void trim();

  FieldPtr field_;
  std::vector<FFElem> c_;
};

/// Point of the projective line over a finite field.
struct ProjPoint {
  bool infinite = false;
  FFElem value;  // meaningful iff !infinite

  static ProjPoint at_infinity() { return ProjPoint{true, FFElem{}}; }
  static ProjPoint finite(FFElem v) { return ProjPoint{false, std::move(v)}; }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.value == b.value;
  }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) {
    return !(a == b);
  }
};

/// Rational function in lowest terms with monic denominator.
class RatFunc {
 public:
  RatFunc() = default;
  /// Reduces by the gcd and normalizes the denominator to be monic.
  static RatFunc make(Poly num, Poly den);
  static RatFunc from_poly(Poly num);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }

  /// max(deg num, deg den); the degree of the induced map on P^1.
  unsigned degree() const;
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return degree() == 0; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  Poly num_;
  Poly den_;
};

/// Evaluates the map induced by f on P^1 over the embedding's destination
/// field; poles go to infinity and infinity is handled by degree comparison
/// (the substitution X = 1/T at T = 0).
ProjPoint eval_proj(const RatFunc& f, const FieldEmbedding& emb, const ProjPoint& x);

/// Same-field convenience overload.
ProjPoint eval_proj(const RatFunc& f, const ProjPoint& x);

/// Ramification index of f at a: the valuation at a of f - f(a), computed
/// from root multiplicities of the fiber polynomial; at infinity the map is
/// rewritten through X = 1/T first and the finite rule applied at T = 0.
unsigned ram_index(const RatFunc& f, const FieldEmbedding& emb, const ProjPoint& a);
unsigned ram_index(const RatFunc& f, const ProjPoint& a);

/// Maximal decomposition f(X) = g(X^{p^e}) with g separable (g has a nonzero
/// formal derivative, i.e. g is not a rational function of X^p).
std::pair<RatFunc, unsigned> separable_core(const RatFunc& f);

// Composition helpers used by the census normalization arguments and the
// invariance tests.
RatFunc precompose_affine(const RatFunc& f, const FFElem& a, const FFElem& b);  // f(aX+b)
RatFunc postcompose_affine(const RatFunc& f, const FFElem& a, const FFElem& b); // a*f+b
RatFunc precompose_frobenius(const RatFunc& f);                                 // f(X^p)

}  // namespace excmap
