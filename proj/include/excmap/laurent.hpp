#pragma once

#include <cstdint>
#include <vector>

#include "excmap/field.hpp"
#include "excmap/triple.hpp"

namespace excmap {

inline constexpr unsigned kDefaultSeriesPrecision = 64;

/// Truncated Laurent series over a residue field F_q: the value is
///   sum_i coeffs[i] * t^(valuation + i)  +  O(t^(valuation + precision)).
/// Normal form keeps coeffs[0] nonzero; a series that is zero to its
/// precision has an empty coefficient vector and `order_bound` records the
/// O(t^k) bound.
class LaurentSeries {
 public:
  LaurentSeries() = default;

  static LaurentSeries from_terms(FieldPtr field, int valuation,
                                  std::vector<FFElem> coeffs);
  static LaurentSeries zero_to(FieldPtr field, int order_bound);
  static LaurentSeries constant(const FFElem& c,
                                unsigned precision = kDefaultSeriesPrecision);
  static LaurentSeries one(const FieldPtr& field,
                           unsigned precision = kDefaultSeriesPrecision);
  /// t + O(t^(1+precision)).
  static LaurentSeries uniformizer(const FieldPtr& field,
                                   unsigned precision = kDefaultSeriesPrecision);

  const FieldPtr& field() const { return field_; }
  bool is_zero_to_precision() const { return coeffs_.empty(); }
  int valuation() const;
  unsigned precision() const { return static_cast<unsigned>(coeffs_.size()); }
  /// Exponent k of the O(t^k) tail.
  int order_bound() const;
  const std::vector<FFElem>& coeffs() const { return coeffs_; }
  /// Coefficient of t^exp; zero outside the stored window (the caller is
  /// responsible for staying below order_bound when exactness matters).
  FFElem coeff(int exp) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

  /// Inverse of a valuation-0 series by coefficient recursion.
  LaurentSeries invert_unit() const;
  LaurentSeries pow(unsigned e) const;
  LaurentSeries scaled(const FFElem& s) const;
  /// Same coefficients at valuation shifted by delta.
  LaurentSeries shifted(int delta) const;

  /// Equality of all coefficients below min(order_bound, other's bound).
  bool agrees_with(const LaurentSeries& other) const;

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);
  friend bool operator!=(const LaurentSeries& a, const LaurentSeries& b) {
    return !(a == b);
  }

 private:
  FieldPtr field_;
  int val_ = 0;
  std::vector<FFElem> coeffs_;
};

/// The unique m-th root with leading coefficient 1 of a 1-unit series,
/// solved coefficient by coefficient (each step is linear because m is
/// invertible). Requires p coprime to m (WildRoot) and u = 1 + O(t)
/// (NotOneUnit).
LaurentSeries nth_root_one_unit(const LaurentSeries& u, unsigned m);

/// n = m * p^wild_exp with p not dividing m.
std::pair<unsigned, unsigned> tame_wild_split(unsigned n, std::uint64_t p);

/// Tame/wild shape of a degree-n totally ramified extension of F_q((t)).
struct TameExtensionModel {
  unsigned n = 0;
  std::uint64_t q = 0;
  unsigned m = 0;
  unsigned wild_exp = 0;

  static TameExtensionModel make(unsigned n, std::uint64_t q, std::uint64_t p);
  bool tame() const { return wild_exp == 0; }
};

/// A normalized Eisenstein-type relation z = x^n * u(x) with u a 1-unit;
/// `scalar` is the unit in F_q by which the original relation was rescaled.
struct EisensteinRelation {
  unsigned n = 0;
  LaurentSeries unit;  // valuation 0, leading coefficient 1
  FFElem scalar;

  /// The full right-hand side x^n * u(x).
  LaurentSeries relation() const { return unit.shifted(static_cast<int>(n)); }
};

/// Rescales z = x^n * (a_0 + a_1 x + ...) so the unit part starts with 1,
/// recording the scalar a_0^{-1}. Throws NotTotallyRamifiedShape when the
/// valuation of the relation is not n.
EisensteinRelation eisenstein_normalize(const LaurentSeries& z_rel, unsigned n);

/// y = x^(p^l) * (unit)^(1/m), so that y^m equals the relation to precision.
LaurentSeries tame_uniformizer(const EisensteinRelation& rel, std::uint64_t p);

/// All solutions of v^r = 1 among valuation-0 series: the constants over the
/// gcd(r, q-1) roots of unity of the residue field (Teichmueller image).
std::vector<LaurentSeries> roots_of_unity_constant(
    unsigned r, const FieldPtr& field,
    unsigned precision = kDefaultSeriesPrecision);

/// Kummer model of the degree-n tame extension: S = Z/n indexing the roots
/// zeta^i * y, G the translations, frob multiplication by q mod n.
ExcTriple tame_monodromy_triple(unsigned n, std::uint64_t q);

struct CoprimeReport {
  unsigned n = 0;
  std::uint64_t q = 0;
  bool triple_exceptional = false;      // (1)
  bool gcd_coprime = false;             // (2) gcd(n, q-1) = 1
  bool no_small_order_element = false;  // (3) root-of-unity scan
  bool no_galois_subextension = false;  // (4) divisor scan
  bool agree = false;
  bool common_value() const { return gcd_coprime; }
};

/// Evaluates the four characterizations of tame exceptionality
/// independently; requires gcd(n, q) = 1.
CoprimeReport coprime_battery(unsigned n, std::uint64_t q);

}  // namespace excmap
