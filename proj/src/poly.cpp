#include "excmap/poly.hpp"

#include <algorithm>

namespace excmap {

Poly::Poly(FieldPtr field, std::vector<FFElem> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::zero(const FieldPtr& field) { return Poly(field, {}); }

Poly Poly::one(const FieldPtr& field) { return Poly(field, {field->one()}); }

Poly Poly::constant(const FFElem& c) { return Poly(c.field(), {c}); }

Poly Poly::x(const FieldPtr& field) {
  return Poly(field, {field->zero(), field->one()});
}

Poly Poly::from_ints(const FieldPtr& field, const std::vector<long long>& coeffs) {
  std::vector<FFElem> c;
  c.reserve(coeffs.size());
  const long long p = static_cast<long long>(field->p());
  for (long long v : coeffs) {
    long long r = ((v % p) + p) % p;
    c.push_back(field->from_int(static_cast<std::uint64_t>(r)));
  }
  return Poly(field, std::move(c));
}

FFElem Poly::coeff(unsigned i) const {
  if (i < c_.size()) return c_[i];
  return field_->zero();
}

FFElem Poly::leading() const {
  if (c_.empty()) return field_->zero();
  return c_.back();
}

FFElem Poly::eval(const FFElem& x) const {
  FFElem acc = field_->zero();
  for (unsigned i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::operator-() const {
  std::vector<FFElem> out;
  out.reserve(c_.size());
  for (const auto& a : c_) out.push_back(-a);
  return Poly(field_, std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.field_ != b.field_) fail(ErrorKind::FieldMismatch, "polynomial fields");
  std::vector<FFElem> out;
  const std::size_t m = std::max(a.c_.size(), b.c_.size());
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    FFElem x = i < a.c_.size() ? a.c_[i] : a.field_->zero();
    FFElem y = i < b.c_.size() ? b.c_[i] : b.field_->zero();
    out.push_back(x + y);
  }
  return Poly(a.field_, std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.field_ != b.field_) fail(ErrorKind::FieldMismatch, "polynomial fields");
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field_);
  std::vector<FFElem> out(a.c_.size() + b.c_.size() - 1, a.field_->zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    }
  }
  return Poly(a.field_, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
  return a.field_ == b.field_ && a.c_ == b.c_;
}

Poly Poly::scaled(const FFElem& s) const {
  std::vector<FFElem> out;
  out.reserve(c_.size());
  for (const auto& a : c_) out.push_back(a * s);
  return Poly(field_, std::move(out));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly::zero(field_);
  std::vector<FFElem> out;
  out.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    out.push_back(c_[i] * field_->from_int(i % field_->p()));
  }
  return Poly(field_, std::move(out));
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly::zero(a.field_), a};
  FFElem lb_inv = b.leading().inverse();
  std::vector<FFElem> rem = a.c_;
  const std::size_t db = b.c_.size() - 1;
  std::vector<FFElem> quot(rem.size() - db, a.field_->zero());
  for (std::size_t i = rem.size(); i-- > db;) {
    FFElem factor = rem[i] * lb_inv;
    if (factor.is_zero()) continue;
    quot[i - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) {
      rem[i - db + j] = rem[i - db + j] - factor * b.c_[j];
    }
  }
  rem.resize(db);
  return {Poly(a.field_, std::move(quot)), Poly(a.field_, std::move(rem))};
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly u = a, v = b;
  while (!v.is_zero()) {
    Poly r = divrem(u, v).second;
    u = v;
    v = r;
  }
  return u.is_zero() ? u : u.monic();
}

unsigned Poly::root_multiplicity(const FFElem& a) const {
  if (is_zero()) return 0;
  unsigned mult = 0;
  std::vector<FFElem> cur = c_;
  while (!cur.empty()) {
    // Synthetic division by (X - a); quot[i] = r_{i+1}, remainder = r_0.
    std::vector<FFElem> quot(cur.size() - 1, field_->zero());
    FFElem r = cur.back();
    for (std::size_t i = cur.size() - 1; i-- > 0;) {
      quot[i] = r;
      r = cur[i] + a * r;
    }
    if (!r.is_zero()) break;
    ++mult;
    cur = std::move(quot);
  }
  return mult;
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc = Poly::zero(field_);
  for (unsigned i = c_.size(); i-- > 0;) {
    acc = acc * inner + Poly::constant(c_[i]);
  }
  return acc;
}

Poly Poly::reversed(unsigned d) const {
  std::vector<FFElem> out(d + 1, field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) out[d - i] = c_[i];
  return Poly(field_, std::move(out));
}

bool Poly::supported_on_pth_powers() const {
  const std::uint64_t p = field_->p();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i % p != 0 && !c_[i].is_zero()) return false;
  }
  return true;
}

Poly Poly::contract_pth_powers() const {
  const std::uint64_t p = field_->p();
  std::vector<FFElem> out;
  for (std::size_t i = 0; i < c_.size(); i += p) out.push_back(c_[i]);
  return Poly(field_, std::move(out));
}

Poly Poly::mapped(const FieldEmbedding& emb) const {
  std::vector<FFElem> out;
  out.reserve(c_.size());
  for (const auto& a : c_) out.push_back(emb.apply(a));
  return Poly(emb.dst(), std::move(out));
}

RatFunc RatFunc::make(Poly num, Poly den) {
  if (num.field() != den.field()) fail(ErrorKind::FieldMismatch, "rational function");
  if (den.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
  Poly g = Poly::gcd(num, den);
  if (g.degree() > 0) {
    num = Poly::divrem(num, g).first;
    den = Poly::divrem(den, g).first;
  }
  FFElem lead_inv = den.leading().inverse();
  RatFunc f;
  f.num_ = num.scaled(lead_inv);
  f.den_ = den.scaled(lead_inv);
  return f;
}

RatFunc RatFunc::from_poly(Poly num) {
  Poly one = Poly::one(num.field());
  return make(std::move(num), std::move(one));
}

unsigned RatFunc::degree() const {
  return static_cast<unsigned>(std::max(num_.degree(), den_.degree()));
}

ProjPoint eval_proj(const RatFunc& f, const FieldEmbedding& emb, const ProjPoint& x) {
  if (f.is_constant()) fail(ErrorKind::ConstantMap, "eval_proj of constant map");
  const Poly num = f.num().mapped(emb);
  const Poly den = f.den().mapped(emb);
  if (x.infinite) {
    const int dn = num.degree(), dd = den.degree();
    if (dn > dd) return ProjPoint::at_infinity();
    if (dn < dd) return ProjPoint::finite(emb.dst()->zero());
    return ProjPoint::finite(num.leading() / den.leading());
  }
  FFElem u = num.eval(x.value);
  FFElem v = den.eval(x.value);
  if (v.is_zero()) return ProjPoint::at_infinity();
  return ProjPoint::finite(u / v);
}

ProjPoint eval_proj(const RatFunc& f, const ProjPoint& x) {
  return eval_proj(f, embed(f.field(), f.field()), x);
}

namespace {

// Finite-point valuation rule shared by the affine and infinite cases: the
// multiplicity at `a` of num - f(a)*den, or of den when a is a pole.
unsigned ram_index_finite(const Poly& num, const Poly& den, const FFElem& a) {
  FFElem v = den.eval(a);
  if (v.is_zero()) return den.root_multiplicity(a);
  FFElem b = num.eval(a) / v;
  Poly fiber = num - den.scaled(b);
  return fiber.root_multiplicity(a);
}

}  // namespace

unsigned ram_index(const RatFunc& f, const FieldEmbedding& emb, const ProjPoint& a) {
  if (f.is_constant()) fail(ErrorKind::ConstantMap, "ram_index of constant map");
  const Poly num = f.num().mapped(emb);
  const Poly den = f.den().mapped(emb);
  if (!a.infinite) return ram_index_finite(num, den, a.value);
  // X = 1/T: f(1/T) = rev_d(num)(T) / rev_d(den)(T) with d = deg f, then the
  // finite rule at T = 0.
  const unsigned d = f.degree();
  return ram_index_finite(num.reversed(d), den.reversed(d), emb.dst()->zero());
}

unsigned ram_index(const RatFunc& f, const ProjPoint& a) {
  return ram_index(f, embed(f.field(), f.field()), a);
}

std::pair<RatFunc, unsigned> separable_core(const RatFunc& f) {
  if (f.is_constant()) fail(ErrorKind::ConstantMap, "separable_core of constant");
  Poly num = f.num();
  Poly den = f.den();
  unsigned e = 0;
  while (num.supported_on_pth_powers() && den.supported_on_pth_powers()) {
    num = num.contract_pth_powers();
    den = den.contract_pth_powers();
    ++e;
  }
  return {RatFunc::make(std::move(num), std::move(den)), e};
}

RatFunc precompose_affine(const RatFunc& f, const FFElem& a, const FFElem& b) {
  Poly inner(f.field(), {b, a});
  return RatFunc::make(f.num().compose(inner), f.den().compose(inner));
}

RatFunc postcompose_affine(const RatFunc& f, const FFElem& a, const FFElem& b) {
  Poly num = f.num().scaled(a) + f.den().scaled(b);
  return RatFunc::make(std::move(num), f.den());
}

RatFunc precompose_frobenius(const RatFunc& f) {
  const std::uint64_t p = f.field()->p();
  std::vector<FFElem> inner_c(p + 1, f.field()->zero());
  inner_c[p] = f.field()->one();
  Poly inner(f.field(), std::move(inner_c));
  return RatFunc::make(f.num().compose(inner), f.den().compose(inner));
}

}  // namespace excmap
