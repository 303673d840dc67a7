#include "excmap/laurent.hpp"

#include <algorithm>
#include <numeric>

namespace excmap {

LaurentSeries LaurentSeries::from_terms(FieldPtr field, int valuation,
                                        std::vector<FFElem> coeffs) {
  LaurentSeries s;
  s.field_ = std::move(field);
  s.val_ = valuation;
  s.coeffs_ = std::move(coeffs);
  // Normal form: leading coefficient nonzero, valuation adjusted upward.
  std::size_t lead = 0;
  while (lead < s.coeffs_.size() && s.coeffs_[lead].is_zero()) ++lead;
  if (lead == s.coeffs_.size()) {
    int bound = s.val_ + static_cast<int>(s.coeffs_.size());
    s.coeffs_.clear();
    s.val_ = bound;
    return s;
  }
  if (lead > 0) {
    s.coeffs_.erase(s.coeffs_.begin(), s.coeffs_.begin() + static_cast<long>(lead));
    s.val_ += static_cast<int>(lead);
  }
  return s;
}

LaurentSeries LaurentSeries::zero_to(FieldPtr field, int order_bound) {
  LaurentSeries s;
  s.field_ = std::move(field);
  s.val_ = order_bound;
  return s;
}

LaurentSeries LaurentSeries::constant(const FFElem& c, unsigned precision) {
  std::vector<FFElem> coeffs(precision, c.field()->zero());
  coeffs[0] = c;
  return from_terms(c.field(), 0, std::move(coeffs));
}

LaurentSeries LaurentSeries::one(const FieldPtr& field, unsigned precision) {
  return constant(field->one(), precision);
}

LaurentSeries LaurentSeries::uniformizer(const FieldPtr& field, unsigned precision) {
  std::vector<FFElem> coeffs(precision, field->zero());
  coeffs[0] = field->one();
  return from_terms(field, 1, std::move(coeffs));
}

int LaurentSeries::valuation() const {
  if (coeffs_.empty()) {
    fail(ErrorKind::ZeroElement, "valuation of a series that is zero to precision");
  }
  return val_;
}

int LaurentSeries::order_bound() const {
  return val_ + static_cast<int>(coeffs_.size());
}

FFElem LaurentSeries::coeff(int exp) const {
  if (coeffs_.empty() || exp < val_ || exp >= order_bound()) return field_->zero();
  return coeffs_[static_cast<std::size_t>(exp - val_)];
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.field_ != b.field_) fail(ErrorKind::FieldMismatch, "series fields");
  const int bound = std::min(a.order_bound(), b.order_bound());
  int lo = bound;
  if (!a.coeffs_.empty()) lo = std::min(lo, a.val_);
  if (!b.coeffs_.empty()) lo = std::min(lo, b.val_);
  if (lo >= bound) return LaurentSeries::zero_to(a.field_, bound);
  std::vector<FFElem> coeffs;
  coeffs.reserve(static_cast<std::size_t>(bound - lo));
  for (int e = lo; e < bound; ++e) coeffs.push_back(a.coeff(e) + b.coeff(e));
  return LaurentSeries::from_terms(a.field_, lo, std::move(coeffs));
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  return a + (-b);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.field_ != b.field_) fail(ErrorKind::FieldMismatch, "series fields");
  if (a.coeffs_.empty() || b.coeffs_.empty()) {
    // O(t^A) * (t^v * unit + ...) = O(t^(A+v)); val_ is the bound for the
    // zero form and the valuation otherwise, so the exponents just add.
    return LaurentSeries::zero_to(a.field_, a.val_ + b.val_);
  }
  const unsigned prec = std::min(a.precision(), b.precision());
  std::vector<FFElem> coeffs(prec, a.field_->zero());
  for (unsigned i = 0; i < a.coeffs_.size() && i < prec; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (unsigned j = 0; j < b.coeffs_.size() && i + j < prec; ++j) {
      coeffs[i + j] = coeffs[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return LaurentSeries::from_terms(a.field_, a.val_ + b.val_, std::move(coeffs));
}

LaurentSeries LaurentSeries::invert_unit() const {
  if (coeffs_.empty() || val_ != 0) {
    fail(ErrorKind::NotAUnit, "invert_unit requires valuation 0");
  }
  const FFElem c0_inv = coeffs_[0].inverse();
  std::vector<FFElem> d(coeffs_.size(), field_->zero());
  d[0] = c0_inv;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    FFElem acc = field_->zero();
    for (std::size_t i = 1; i <= k; ++i) acc = acc + coeffs_[i] * d[k - i];
    d[k] = -(c0_inv * acc);
  }
  return from_terms(field_, 0, std::move(d));
}

LaurentSeries LaurentSeries::pow(unsigned e) const {
  if (e == 0) return one(field_, coeffs_.empty() ? 1 : precision());
  LaurentSeries base = *this;
  LaurentSeries result = base;
  e -= 1;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

LaurentSeries LaurentSeries::scaled(const FFElem& s) const {
  if (s.is_zero()) return zero_to(field_, order_bound());
  LaurentSeries out = *this;
  for (auto& c : out.coeffs_) c = c * s;
  return out;
}

LaurentSeries LaurentSeries::shifted(int delta) const {
  LaurentSeries out = *this;
  out.val_ += delta;
  return out;
}

bool LaurentSeries::agrees_with(const LaurentSeries& other) const {
  if (field_ != other.field_) return false;
  const int bound = std::min(order_bound(), other.order_bound());
  int lo = bound;
  if (!coeffs_.empty()) lo = std::min(lo, val_);
  if (!other.coeffs_.empty()) lo = std::min(lo, other.val_);
  for (int e = lo; e < bound; ++e) {
    if (coeff(e) != other.coeff(e)) return false;
  }
  return true;
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  return a.field_ == b.field_ && a.val_ == b.val_ && a.coeffs_ == b.coeffs_;
}

LaurentSeries nth_root_one_unit(const LaurentSeries& u, unsigned m) {
  const FieldPtr& field = u.field();
  if (m == 0) fail(ErrorKind::WildRoot, "0th root");
  if (m % field->p() == 0) {
    fail(ErrorKind::WildRoot, "p divides the root exponent");
  }
  if (u.is_zero_to_precision() || u.valuation() != 0 || !u.coeffs()[0].is_one()) {
    fail(ErrorKind::NotOneUnit, "nth_root_one_unit requires a 1-unit");
  }
  const unsigned prec = u.precision();
  const FFElem m_inv = field->from_int(m).inverse();

  // Truncated product of plain coefficient vectors (valuation-0 series).
  auto mul_trunc = [&](const std::vector<FFElem>& a, const std::vector<FFElem>& b,
                       unsigned len) {
    std::vector<FFElem> out(len, field->zero());
    for (unsigned i = 0; i < a.size() && i < len; ++i) {
      if (a[i].is_zero()) continue;
      for (unsigned j = 0; j < b.size() && i + j < len; ++j) {
        out[i + j] = out[i + j] + a[i] * b[j];
      }
    }
    return out;
  };
  auto pow_trunc = [&](const std::vector<FFElem>& a, unsigned e, unsigned len) {
    std::vector<FFElem> result(1, field->one());
    std::vector<FFElem> base = a;
    while (e) {
      if (e & 1) result = mul_trunc(result, base, len);
      base = mul_trunc(base, base, len);
      e >>= 1;
    }
    return result;
  };

  std::vector<FFElem> b(prec, field->zero());
  b[0] = field->one();
  for (unsigned k = 1; k < prec; ++k) {
    // Coefficient k of (b_0 + ... + b_{k-1} t^{k-1})^m; appending b_k changes
    // that coefficient by exactly m * b_k.
    std::vector<FFElem> partial(b.begin(), b.begin() + k);
    std::vector<FFElem> w = pow_trunc(partial, m, k + 1);
    FFElem have = k < w.size() ? w[k] : field->zero();
    b[k] = (u.coeff(static_cast<int>(k)) - have) * m_inv;
  }
  return LaurentSeries::from_terms(field, 0, std::move(b));
}

std::pair<unsigned, unsigned> tame_wild_split(unsigned n, std::uint64_t p) {
  if (n == 0) fail(ErrorKind::NotTotallyRamifiedShape, "degree must be positive");
  unsigned m = n, wild = 0;
  while (m % p == 0) {
    m = static_cast<unsigned>(m / p);
    ++wild;
  }
  return {m, wild};
}

TameExtensionModel TameExtensionModel::make(unsigned n, std::uint64_t q,
                                            std::uint64_t p) {
  auto [m, wild] = tame_wild_split(n, p);
  TameExtensionModel model;
  model.n = n;
  model.q = q;
  model.m = m;
  model.wild_exp = wild;
  return model;
}

EisensteinRelation eisenstein_normalize(const LaurentSeries& z_rel, unsigned n) {
  if (n == 0 || z_rel.is_zero_to_precision() ||
      z_rel.valuation() != static_cast<int>(n)) {
    fail(ErrorKind::NotTotallyRamifiedShape,
         "relation valuation differs from the extension degree");
  }
  EisensteinRelation rel;
  rel.n = n;
  FFElem a0 = z_rel.coeffs()[0];
  rel.scalar = a0.inverse();
  rel.unit = z_rel.shifted(-static_cast<int>(n)).scaled(rel.scalar);
  return rel;
}

LaurentSeries tame_uniformizer(const EisensteinRelation& rel, std::uint64_t p) {
  auto [m, wild] = tame_wild_split(rel.n, p);
  std::uint64_t p_wild = 1;
  for (unsigned i = 0; i < wild; ++i) p_wild *= p;
  LaurentSeries root =
      m == 1 ? rel.unit : nth_root_one_unit(rel.unit, m);
  return root.shifted(static_cast<int>(p_wild));
}

std::vector<LaurentSeries> roots_of_unity_constant(unsigned r,
                                                   const FieldPtr& field,
                                                   unsigned precision) {
  if (r == 0 || r % field->p() == 0) {
    fail(ErrorKind::WildOrder, "root-of-unity order divisible by p");
  }
  std::vector<LaurentSeries> out;
  for (std::uint64_t idx = 1; idx < field->q(); ++idx) {
    FFElem c = field->from_index(idx);
    if (c.pow(r).is_one()) out.push_back(LaurentSeries::constant(c, precision));
  }
  return out;
}

ExcTriple tame_monodromy_triple(unsigned n, std::uint64_t q) {
  if (n == 0 || std::gcd(static_cast<std::uint64_t>(n), q) != 1) {
    fail(ErrorKind::NotCoprime, "tame model requires gcd(n, q) = 1");
  }
  ExcTriple t;
  t.n = n;
  std::vector<Perm> gens_G;
  if (n > 1) gens_G.push_back(Perm::cycle_shift(n, 1));
  t.G = PermGroup::close(n, gens_G);
  t.frob = Perm::mul_map(n, static_cast<unsigned>(q % n));
  std::vector<Perm> gens_A = gens_G;
  gens_A.push_back(t.frob);
  t.A = PermGroup::close(n, std::move(gens_A));
  t.base = 0;
  return t;
}

CoprimeReport coprime_battery(unsigned n, std::uint64_t q) {
  if (n == 0 || std::gcd(static_cast<std::uint64_t>(n), q) != 1) {
    fail(ErrorKind::NotCoprime, "gcd(n, q) must be 1");
  }
  CoprimeReport rep;
  rep.n = n;
  rep.q = q;

  rep.triple_exceptional = is_exceptional_triple(tame_monodromy_triple(n, q));
  rep.gcd_coprime = std::gcd(static_cast<std::uint64_t>(n), q - 1) == 1;

  // (3): brute scan for a nontrivial n-th root of unity in F_q.
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  std::uint64_t qq = q;
  while (qq > 1) {
    qq /= p;
    ++e;
  }
  FieldPtr field = Field::make(p, e);
  bool found = false;
  for (std::uint64_t idx = 1; idx < field->q(); ++idx) {
    FFElem a = field->from_index(idx);
    if (!a.is_one() && n % mult_order(a) == 0) {
      found = true;
      break;
    }
  }
  rep.no_small_order_element = !found;

  // (4): no divisor d > 1 of n with d | q - 1 (the Kummer subextension
  // K(y^(n/d)) is Galois exactly when zeta_d lies in K).
  bool has_divisor = false;
  for (unsigned d = 2; d <= n; ++d) {
    if (n % d == 0 && (q - 1) % d == 0) {
      has_divisor = true;
      break;
    }
  }
  rep.no_galois_subextension = !has_divisor;

  rep.agree = rep.triple_exceptional == rep.gcd_coprime &&
              rep.gcd_coprime == rep.no_small_order_element &&
              rep.no_small_order_element == rep.no_galois_subextension;
  return rep;
}

}  // namespace excmap
