#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "excmap/poly.hpp"

namespace excmap {

/// Largest degree the census machinery accepts for a separable core; the
/// Jacobsthal completeness window is only tabulated this far.
inline constexpr unsigned kMaxCensusDegree = 12;

/// Least k with q^k >= d^4 (strictly greater when `strict`).
unsigned min_k(std::uint64_t q, unsigned d, bool strict = false);

/// Jacobsthal window for L = lcm(1..d): the least w such that every w
/// consecutive integers contain one coprime to L, by brute force over the
/// residues mod L.
unsigned jacobsthal_window(unsigned d);

struct Collision {
  ProjPoint a;
  ProjPoint b;
  unsigned k = 0;
};

struct BijectivityResult {
  bool bijective = false;
  std::optional<Collision> collision;  // first pair in enumeration order
};

/// Injectivity of the induced map on all q^k + 1 points of P^1(F_{q^k}),
/// finite points in counting order and infinity last.
BijectivityResult is_bijective_on(const RatFunc& f, unsigned k,
                                  std::uint64_t cap = kDefaultCardinalityCap);

struct ExceptionalityVerdict {
  enum class Status { Exceptional, NotExceptional, Inconclusive };
  Status status = Status::Inconclusive;
  unsigned witness_k = 0;                 // Exceptional only
  std::vector<unsigned> scanned_k;
  std::optional<Collision> collision;     // NotExceptional: largest scanned k
  RatFunc core;                           // the separable core the scan ran on
  unsigned frob_exp = 0;                  // f(X) = core(X^{p^frob_exp})
  unsigned k0 = 0;
  unsigned window = 0;                    // sound completeness window
  bool exceptional() const { return status == Status::Exceptional; }
};

struct ExcOptions {
  std::optional<unsigned> window_override;
  bool strict_bound = false;
  std::uint64_t cap = kDefaultCardinalityCap;
};

/// Decides exceptionality by scanning k = k0 .. k0+w-1 for a bijective
/// extension, where k0 = min_k(q, d) and w the Jacobsthal window of the
/// separable core's degree d. A hit is sound by the fourth-power criterion;
/// a full miss is sound because an exceptional map is bijective at every k
/// coprime to the constant-extension degree, which divides lcm(1..d).
/// Shrinking the window below w via the override downgrades a miss to
/// Inconclusive.
ExceptionalityVerdict is_exceptional(const RatFunc& f, const ExcOptions& opts = {});

struct RamProfileEntry {
  ProjPoint point;
  unsigned e = 0;
  std::uint64_t gcd_e_qm1 = 0;
};

struct RamificationReport {
  std::vector<RamProfileEntry> profile;  // all q+1 points of P^1(F_q)
  ExceptionalityVerdict verdict;
  bool ram_coprime = false;  // every gcd(e, q-1) = 1
  /// False only when the map is exceptional yet some rational ramification
  /// index shares a factor with q-1 (a would-be theorem violation).
  bool pass = false;
};

RamificationReport check_ramification(const RatFunc& f, const ExcOptions& opts = {});

struct CensusRow {
  std::uint64_t index = 0;
  RatFunc candidate;
  ExceptionalityVerdict verdict;
  // Filled for exceptional candidates only.
  std::vector<RamProfileEntry> ram_profile;
  std::uint64_t gcd_deg_qm1 = 0;
  bool violation = false;
};

struct ScanOptions {
  bool full_enumeration = false;  // all degree-n maps, not just normalized
  unsigned jobs = 0;              // 0 = hardware concurrency
  bool strict_bound = false;
  std::uint64_t cap = kDefaultCardinalityCap;
  std::uint64_t resume_from = 0;  // first candidate index to process
  std::function<void(const CensusRow&)> row_sink;  // called in index order
};

struct ScanReport {
  std::uint64_t q = 0;
  unsigned degree = 0;
  std::string normalization;
  std::uint64_t total_candidates = 0;
  std::uint64_t processed = 0;
  std::vector<CensusRow> exceptional;
  std::vector<CensusRow> violations;  // must stay empty
  unsigned nominal_window = 0;
  std::int64_t elapsed_ms = 0;
};

/// Enumerates the normalization class (monic, constant term zero) of degree
/// n over F_q — or every degree-n map under full enumeration — classifies
/// each candidate, and records the coprimality data of every exceptional
/// find. Work is distributed over a pool and merged in candidate order.
ScanReport carlitz_wan_scan(const FieldPtr& field, unsigned degree,
                            const ScanOptions& opts = {});

/// Candidate with the given index in the deterministic census order.
RatFunc census_candidate(const FieldPtr& field, unsigned degree,
                         std::uint64_t index, bool full_enumeration);
/// Number of candidates for the census parameters.
std::uint64_t census_size(const FieldPtr& field, unsigned degree,
                          bool full_enumeration);

}  // namespace excmap
