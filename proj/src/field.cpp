#include "excmap/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace excmap {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NoEmbedding: return "NoEmbedding";
    case ErrorKind::ConstantMap: return "ConstantMap";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::InvalidTriple: return "InvalidTriple";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotGenerator: return "NotGenerator";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::NotIntermediate: return "NotIntermediate";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::WildRoot: return "WildRoot";
    case ErrorKind::NotOneUnit: return "NotOneUnit";
    case ErrorKind::NotTotallyRamifiedShape: return "NotTotallyRamifiedShape";
    case ErrorKind::WildOrder: return "WildOrder";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

bool is_prime_u64(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull}) {
    if (m == d) return true;
    if (m % d == 0) return false;
  }
  for (std::uint64_t d = 7; d * d <= m; d += 2) {
    if (m % d == 0) return false;
  }
  return true;
}

namespace {

// Plain mod-p polynomial helpers used only while searching for the defining
// polynomial; coefficient vectors are constant-first with explicit length.

// Remainder of (monic X^n + a) divided by (monic X^d + b); returns true when
// the division is exact.
bool divides_monic(const std::vector<std::uint32_t>& cand, unsigned n,
                   const std::vector<std::uint32_t>& div, unsigned d,
                   std::uint64_t p) {
  std::vector<std::uint64_t> r(cand.begin(), cand.end());
  r.resize(n + 1);
  r[n] = 1;
  for (int i = static_cast<int>(n); i >= static_cast<int>(d); --i) {
    std::uint64_t top = r[static_cast<unsigned>(i)] % p;
    if (top == 0) continue;
    r[static_cast<unsigned>(i)] = 0;
    for (unsigned j = 0; j < d; ++j) {
      std::uint64_t sub = (top * div[j]) % p;
      unsigned pos = static_cast<unsigned>(i) - d + j;
      r[pos] = (r[pos] + p - sub) % p;
    }
  }
  for (unsigned j = 0; j < d; ++j) {
    if (r[j] % p != 0) return false;
  }
  return true;
}

bool irreducible_by_trial_division(const std::vector<std::uint32_t>& cand,
                                   unsigned n, std::uint64_t p) {
  for (unsigned d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    std::vector<std::uint32_t> div(d, 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t rest = idx;
      for (unsigned i = 0; i < d; ++i) {
        div[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (divides_monic(cand, n, div, d, p)) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> least_irreducible(std::uint64_t p, unsigned n) {
  if (n == 1) return {0, 1};  // X
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  std::vector<std::uint32_t> cand(n, 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < n; ++i) {
      cand[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (cand[0] == 0) continue;  // divisible by X
    if (irreducible_by_trial_division(cand, n, p)) {
      std::vector<std::uint32_t> mod(cand);
      mod.push_back(1);
      return mod;
    }
  }
  fail(ErrorKind::DegreeTooLarge, "no irreducible polynomial found");
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      unsigned e = 0;
      while (m % d == 0) {
        m /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

}  // namespace

Field::Field(std::uint64_t p, unsigned n, std::vector<std::uint32_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
  q_ = 1;
  for (unsigned i = 0; i < n_; ++i) q_ *= p_;
}

FieldPtr Field::make(std::uint64_t p, unsigned n, std::uint64_t cardinality_cap) {
  if (!is_prime_u64(p)) fail(ErrorKind::NotPrime, "p = " + std::to_string(p));
  if (n < 1 || n > kMaxExtensionDegree) {
    fail(ErrorKind::DegreeTooLarge,
         "extension degree " + std::to_string(n) + " outside 1.." +
             std::to_string(kMaxExtensionDegree));
  }
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (q > cardinality_cap / p) {
      fail(ErrorKind::DegreeTooLarge,
           "cardinality " + std::to_string(p) + "^" + std::to_string(n) +
               " exceeds cap " + std::to_string(cardinality_cap));
    }
    q *= p;
  }

  static std::mutex registry_mutex;
  static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<Field>>
      registry;
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto key = std::make_pair(p, n);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;

  auto field = std::shared_ptr<Field>(new Field(p, n, least_irreducible(p, n)));
  if (field->q_ <= (1u << 16)) field->build_log_tables();
  registry.emplace(key, field);
  return field;
}

void Field::build_log_tables() {
  const std::uint64_t group = q_ - 1;
  auto factors = factorize(group);
  std::vector<std::uint32_t> g(n_), acc(n_), tmp(n_);
  std::vector<std::uint64_t> scratch(2 * n_);

  auto pow_digits = [&](const std::uint32_t* base, std::uint64_t e,
                        std::uint32_t* out) {
    std::vector<std::uint32_t> b(base, base + n_), r(n_, 0);
    r[0] = 1;
    while (e) {
      if (e & 1) {
        mul_digits_raw(r.data(), b.data(), tmp.data(), scratch.data());
        r.assign(tmp.begin(), tmp.end());
      }
      mul_digits_raw(b.data(), b.data(), tmp.data(), scratch.data());
      b.assign(tmp.begin(), tmp.end());
      e >>= 1;
    }
    std::copy(r.begin(), r.end(), out);
  };

  std::uint64_t gen_idx = 0;
  std::vector<std::uint32_t> one(n_, 0);
  one[0] = 1;
  for (std::uint64_t cand = 1; cand < q_; ++cand) {
    digits_of_index(cand, g.data());
    bool primitive = true;
    for (const auto& [prime, _] : factors) {
      pow_digits(g.data(), group / prime, acc.data());
      if (std::equal(acc.begin(), acc.end(), one.begin())) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen_idx = cand;
      break;
    }
  }

  exp_.assign(group, 0);
  log_.assign(q_, 0);
  digits_of_index(gen_idx, g.data());
  std::vector<std::uint32_t> cur(n_, 0);
  cur[0] = 1;
  for (std::uint64_t e = 0; e < group; ++e) {
    std::uint64_t idx = index_of_digits(cur.data());
    exp_[e] = static_cast<std::uint32_t>(idx);
    log_[idx] = static_cast<std::uint32_t>(e);
    mul_digits_raw(cur.data(), g.data(), tmp.data(), scratch.data());
    cur.assign(tmp.begin(), tmp.end());
  }
}

std::uint64_t Field::index_of_digits(const std::uint32_t* digits) const {
  std::uint64_t idx = 0;
  for (unsigned i = n_; i-- > 0;) idx = idx * p_ + digits[i];
  return idx;
}

void Field::digits_of_index(std::uint64_t idx, std::uint32_t* out) const {
  for (unsigned i = 0; i < n_; ++i) {
    out[i] = static_cast<std::uint32_t>(idx % p_);
    idx /= p_;
  }
}

void Field::add_digits(const std::uint32_t* a, const std::uint32_t* b,
                       std::uint32_t* out) const {
  for (unsigned i = 0; i < n_; ++i) {
    std::uint64_t s = static_cast<std::uint64_t>(a[i]) + b[i];
    out[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
}

void Field::sub_digits(const std::uint32_t* a, const std::uint32_t* b,
                       std::uint32_t* out) const {
  for (unsigned i = 0; i < n_; ++i) {
    std::uint64_t s = static_cast<std::uint64_t>(a[i]) + p_ - b[i];
    out[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
}

void Field::neg_digits(const std::uint32_t* a, std::uint32_t* out) const {
  for (unsigned i = 0; i < n_; ++i) {
    out[i] = a[i] == 0 ? 0 : static_cast<std::uint32_t>(p_ - a[i]);
  }
}

void Field::mul_digits_raw(const std::uint32_t* a, const std::uint32_t* b,
                           std::uint32_t* out, std::uint64_t* scratch) const {
  const unsigned w = 2 * n_ - 1;
  for (unsigned i = 0; i < w; ++i) scratch[i] = 0;
  for (unsigned i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    const std::uint64_t ai = a[i];
    for (unsigned j = 0; j < n_; ++j) {
      scratch[i + j] += ai * b[j];
    }
  }
  for (unsigned i = 0; i < w; ++i) scratch[i] %= p_;
  // Eliminate the high part against the monic modulus.
  for (unsigned i = w; i-- > n_;) {
    std::uint64_t top = scratch[i];
    if (top == 0) continue;
    scratch[i] = 0;
    for (unsigned j = 0; j < n_; ++j) {
      if (modulus_[j] == 0) continue;
      std::uint64_t sub = (top * modulus_[j]) % p_;
      unsigned pos = i - n_ + j;
      scratch[pos] = (scratch[pos] + p_ - sub) % p_;
    }
  }
  for (unsigned i = 0; i < n_; ++i) out[i] = static_cast<std::uint32_t>(scratch[i]);
}

void Field::mul_digits(const std::uint32_t* a, const std::uint32_t* b,
                       std::uint32_t* out, std::uint64_t* scratch) const {
  if (!log_.empty()) {
    std::uint64_t ia = index_of_digits(a);
    std::uint64_t ib = index_of_digits(b);
    if (ia == 0 || ib == 0) {
      for (unsigned i = 0; i < n_; ++i) out[i] = 0;
      return;
    }
    std::uint64_t e = log_[ia] + log_[ib];
    if (e >= q_ - 1) e -= q_ - 1;
    digits_of_index(exp_[e], out);
    return;
  }
  mul_digits_raw(a, b, out, scratch);
}

void Field::scalar_mul_digits(const std::uint32_t* a, std::uint32_t s,
                              std::uint32_t* out) const {
  for (unsigned i = 0; i < n_; ++i) {
    out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a[i]) * s) % p_);
  }
}

bool Field::digits_zero(const std::uint32_t* a) const {
  for (unsigned i = 0; i < n_; ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

bool Field::inv_digits(const std::uint32_t* a, std::uint32_t* out) const {
  if (digits_zero(a)) return false;
  if (!log_.empty()) {
    std::uint64_t ia = index_of_digits(a);
    std::uint64_t e = (q_ - 1 - log_[ia]) % (q_ - 1);
    digits_of_index(exp_[e], out);
    return true;
  }
  // a^(q-2) by square and multiply.
  std::vector<std::uint32_t> base(a, a + n_), r(n_, 0), tmp(n_);
  std::vector<std::uint64_t> scratch(2 * n_);
  r[0] = 1;
  std::uint64_t e = q_ - 2;
  while (e) {
    if (e & 1) {
      mul_digits_raw(r.data(), base.data(), tmp.data(), scratch.data());
      r.assign(tmp.begin(), tmp.end());
    }
    mul_digits_raw(base.data(), base.data(), tmp.data(), scratch.data());
    base.assign(tmp.begin(), tmp.end());
    e >>= 1;
  }
  std::copy(r.begin(), r.end(), out);
  return true;
}

FFElem Field::zero() const {
  return FFElem(shared_from_this(), std::vector<std::uint32_t>(n_, 0));
}

FFElem Field::one() const {
  std::vector<std::uint32_t> c(n_, 0);
  c[0] = 1;
  return FFElem(shared_from_this(), std::move(c));
}

FFElem Field::from_index(std::uint64_t idx) const {
  if (idx >= q_) fail(ErrorKind::FieldMismatch, "element index out of range");
  std::vector<std::uint32_t> c(n_);
  digits_of_index(idx, c.data());
  return FFElem(shared_from_this(), std::move(c));
}

FFElem Field::from_int(std::uint64_t v) const {
  std::vector<std::uint32_t> c(n_, 0);
  c[0] = static_cast<std::uint32_t>(v % p_);
  return FFElem(shared_from_this(), std::move(c));
}

FFElem Field::from_coeffs(std::vector<std::uint32_t> coeffs) const {
  if (coeffs.size() != n_) fail(ErrorKind::FieldMismatch, "coefficient count");
  for (auto& c : coeffs) c %= static_cast<std::uint32_t>(p_);
  return FFElem(shared_from_this(), std::move(coeffs));
}

namespace {

const Field& common_field(const FFElem& a, const FFElem& b) {
  if (!a.field() || !b.field()) fail(ErrorKind::FieldMismatch, "null element");
  if (a.field() != b.field()) {
    fail(ErrorKind::FieldMismatch, "elements of different fields");
  }
  return *a.field();
}

}  // namespace

bool FFElem::is_zero() const {
  return field_ && field_->digits_zero(c_.data());
}

bool FFElem::is_one() const {
  if (!field_ || c_[0] != 1) return false;
  for (unsigned i = 1; i < field_->n(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

std::uint64_t FFElem::index() const { return field_->index_of_digits(c_.data()); }

FFElem FFElem::operator-() const {
  FFElem out(field_, std::vector<std::uint32_t>(c_.size()));
  field_->neg_digits(c_.data(), out.c_.data());
  return out;
}

FFElem operator+(const FFElem& a, const FFElem& b) {
  const Field& f = common_field(a, b);
  FFElem out(a.field_, std::vector<std::uint32_t>(a.c_.size()));
  f.add_digits(a.c_.data(), b.c_.data(), out.c_.data());
  return out;
}

FFElem operator-(const FFElem& a, const FFElem& b) {
  const Field& f = common_field(a, b);
  FFElem out(a.field_, std::vector<std::uint32_t>(a.c_.size()));
  f.sub_digits(a.c_.data(), b.c_.data(), out.c_.data());
  return out;
}

FFElem operator*(const FFElem& a, const FFElem& b) {
  const Field& f = common_field(a, b);
  FFElem out(a.field_, std::vector<std::uint32_t>(a.c_.size()));
  std::vector<std::uint64_t> scratch(2 * f.n());
  f.mul_digits(a.c_.data(), b.c_.data(), out.c_.data(), scratch.data());
  return out;
}

FFElem operator/(const FFElem& a, const FFElem& b) {
  common_field(a, b);
  return a * b.inverse();
}

bool operator==(const FFElem& a, const FFElem& b) {
  if (!a.field_ || !b.field_) return a.field_ == b.field_;
  return a.field_ == b.field_ && a.c_ == b.c_;
}

FFElem FFElem::inverse() const {
  FFElem out(field_, std::vector<std::uint32_t>(c_.size()));
  if (!field_->inv_digits(c_.data(), out.c_.data())) {
    fail(ErrorKind::DivisionByZero, "inverse of zero");
  }
  return out;
}

FFElem FFElem::pow(std::uint64_t e) const {
  FFElem base = *this;
  FFElem r = field_->one();
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

FFElem FFElem::frobenius(unsigned times) const {
  FFElem r = *this;
  for (unsigned i = 0; i < times; ++i) r = r.pow(field_->p());
  return r;
}

std::uint64_t mult_order(const FFElem& a) {
  if (a.is_zero()) fail(ErrorKind::ZeroElement, "mult_order of zero");
  const std::uint64_t group = a.field()->q() - 1;
  std::uint64_t order = group;
  for (const auto& [prime, _] : factorize(group)) {
    while (order % prime == 0 && a.pow(order / prime).is_one()) order /= prime;
  }
  return order;
}

FieldEmbedding::FieldEmbedding(FieldPtr src, FieldPtr dst, FFElem gen_image)
    : src_(std::move(src)), dst_(std::move(dst)), gen_image_(std::move(gen_image)) {
  powers_.reserve(src_->n());
  FFElem cur = dst_->one();
  for (unsigned i = 0; i < src_->n(); ++i) {
    powers_.push_back(cur);
    if (i + 1 < src_->n()) cur = cur * gen_image_;
  }
}

FFElem FieldEmbedding::apply(const FFElem& a) const {
  if (a.field() != src_) fail(ErrorKind::FieldMismatch, "embedding source");
  FFElem acc = dst_->zero();
  for (unsigned i = 0; i < src_->n(); ++i) {
    std::uint32_t c = a.coeffs()[i];
    if (c == 0) continue;
    std::vector<std::uint32_t> scaled(dst_->n());
    dst_->scalar_mul_digits(powers_[i].coeffs().data(), c, scaled.data());
    acc = acc + dst_->from_coeffs(std::move(scaled));
  }
  return acc;
}

FieldEmbedding FieldEmbedding::make(const FieldPtr& src, const FieldPtr& dst) {
  if (src->p() != dst->p() || dst->n() % src->n() != 0) {
    fail(ErrorKind::NoEmbedding,
         "no embedding F_" + std::to_string(src->q()) + " -> F_" +
             std::to_string(dst->q()));
  }
  // Least root of the source modulus among destination elements.
  const auto& mod = src->modulus();
  for (std::uint64_t idx = 0; idx < dst->q(); ++idx) {
    FFElem x = dst->from_index(idx);
    FFElem acc = dst->zero();
    for (unsigned i = mod.size(); i-- > 0;) {
      acc = acc * x + dst->from_int(mod[i]);
    }
    if (acc.is_zero()) return FieldEmbedding(src, dst, x);
  }
  fail(ErrorKind::NoEmbedding, "source modulus has no root in destination");
}

FieldEmbedding embed(const FieldPtr& src, const FieldPtr& dst) {
  return FieldEmbedding::make(src, dst);
}

bool frobenius_fixes_all(const FieldPtr& field) {
  for (std::uint64_t idx = 0; idx < field->q(); ++idx) {
    FFElem a = field->from_index(idx);
    if (a.frobenius(field->n()) != a) return false;
  }
  return true;
}

}  // namespace excmap
