#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "excmap/errors.hpp"

namespace excmap {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Enumeration budget: operations that walk a whole field refuse to run
/// past this many elements unless the caller raises the cap explicitly.
inline constexpr std::uint64_t kDefaultCardinalityCap = std::uint64_t{1} << 24;

/// Hard limit on the extension degree accepted by Field::make.
inline constexpr unsigned kMaxExtensionDegree = 24;

class FFElem;

/// F_{p^n} with a deterministic defining polynomial: the least monic
/// irreducible of degree n over F_p in counting order (coefficient vectors
/// read as base-p integers, constant digit least significant). Fields are
/// interned, so two Field::make calls with equal parameters return the same
/// object and element ops may compare fields by pointer.
///
/// Elements are dense coefficient vectors over F_p reduced mod the modulus.
/// For fields with at most 2^16 elements a discrete-log table pair is built
/// at construction and used transparently by mul/inv; the arithmetic
/// contract is identical either way.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr make(std::uint64_t p, unsigned n,
                       std::uint64_t cardinality_cap = kDefaultCardinalityCap);

  std::uint64_t p() const { return p_; }
  unsigned n() const { return n_; }
  std::uint64_t q() const { return q_; }

  /// Monic defining polynomial, constant term first, length n+1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FFElem zero() const;
  FFElem one() const;
  /// Element whose coefficient vector is the base-p digits of idx, 0 <= idx < q.
  FFElem from_index(std::uint64_t idx) const;
  /// Prime-subfield constant c mod p.
  FFElem from_int(std::uint64_t c) const;
  FFElem from_coeffs(std::vector<std::uint32_t> coeffs) const;

  std::uint64_t index_of_digits(const std::uint32_t* digits) const;
  void digits_of_index(std::uint64_t idx, std::uint32_t* out) const;

  // Digit-level kernels. All pointers refer to length-n arrays of reduced
  // digits; aliasing between inputs and output is allowed for add/sub.
  void add_digits(const std::uint32_t* a, const std::uint32_t* b,
                  std::uint32_t* out) const;
  void sub_digits(const std::uint32_t* a, const std::uint32_t* b,
                  std::uint32_t* out) const;
  void neg_digits(const std::uint32_t* a, std::uint32_t* out) const;
  /// out = a*b reduced mod the modulus; scratch must hold 2n-1 slots.
  void mul_digits(const std::uint32_t* a, const std::uint32_t* b,
                  std::uint32_t* out, std::uint64_t* scratch) const;
  /// Multiply by a prime-subfield scalar.
  void scalar_mul_digits(const std::uint32_t* a, std::uint32_t s,
                         std::uint32_t* out) const;
  /// Multiplicative inverse; returns false when a == 0.
  bool inv_digits(const std::uint32_t* a, std::uint32_t* out) const;
  bool digits_zero(const std::uint32_t* a) const;

  bool has_log_tables() const { return !log_.empty(); }

 private:
  Field(std::uint64_t p, unsigned n, std::vector<std::uint32_t> modulus);
  void build_log_tables();
  void mul_digits_raw(const std::uint32_t* a, const std::uint32_t* b,
                      std::uint32_t* out, std::uint64_t* scratch) const;

  std::uint64_t p_;
  unsigned n_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  // Discrete-log acceleration, present iff q <= 2^16: exp_[e] = index of g^e,
  // log_[index] = e for nonzero indices.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

/// Value-semantic field element. Arithmetic throws FieldMismatch when the
/// operands belong to different fields and DivisionByZero on zero divisors.
class FFElem {
 public:
  FFElem() = default;

  const FieldPtr& field() const { return field_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  std::uint64_t index() const;

  FFElem operator-() const;
  friend FFElem operator+(const FFElem& a, const FFElem& b);
  friend FFElem operator-(const FFElem& a, const FFElem& b);
  friend FFElem operator*(const FFElem& a, const FFElem& b);
  friend FFElem operator/(const FFElem& a, const FFElem& b);
  friend bool operator==(const FFElem& a, const FFElem& b);
  friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }

  FFElem inverse() const;
  FFElem pow(std::uint64_t e) const;
  /// p-th power map applied `times` times.
  FFElem frobenius(unsigned times = 1) const;

 private:
  friend class Field;
  FFElem(FieldPtr field, std::vector<std::uint32_t> coeffs)
      : field_(std::move(field)), c_(std::move(coeffs)) {}

  FieldPtr field_;
  std::vector<std::uint32_t> c_;
};

/// Least r >= 1 with a^r = 1; divides q-1. Throws ZeroElement on 0.
std::uint64_t mult_order(const FFElem& a);

/// The embedding F_{p^m} -> F_{p^mk} sending the source generator to the
/// least root (in counting order) of the source modulus in the destination.
class FieldEmbedding {
 public:
  const FieldPtr& src() const { return src_; }
  const FieldPtr& dst() const { return dst_; }
  const FFElem& gen_image() const { return gen_image_; }

  FFElem apply(const FFElem& a) const;

  static FieldEmbedding make(const FieldPtr& src, const FieldPtr& dst);

 private:
  FieldEmbedding(FieldPtr src, FieldPtr dst, FFElem gen_image);

  FieldPtr src_;
  FieldPtr dst_;
  FFElem gen_image_;
  std::vector<FFElem> powers_;  // gen_image^0 .. gen_image^(src.n-1)
};

FieldEmbedding embed(const FieldPtr& src, const FieldPtr& dst);

bool is_prime_u64(std::uint64_t m);

/// Field axiom check used by tests: a^(p^n) == a for every element.
bool frobenius_fixes_all(const FieldPtr& field);

}  // namespace excmap
