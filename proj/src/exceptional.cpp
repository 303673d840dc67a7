#include "excmap/exceptional.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

namespace excmap {

unsigned min_k(std::uint64_t q, unsigned d, bool strict) {
  if (q < 2 || d < 1) fail(ErrorKind::ConstantMap, "min_k requires q >= 2, d >= 1");
  const unsigned __int128 target = static_cast<unsigned __int128>(d) * d * d * d;
  unsigned __int128 power = 1;
  for (unsigned k = 1;; ++k) {
    power *= q;
    if (strict ? power > target : power >= target) return k;
  }
}

unsigned jacobsthal_window(unsigned d) {
  if (d < 1 || d > kMaxCensusDegree) {
    fail(ErrorKind::DegreeTooLarge,
         "census degree must lie in 1.." + std::to_string(kMaxCensusDegree));
  }
  std::uint64_t L = 1;
  for (unsigned i = 2; i <= d; ++i) L = std::lcm(L, static_cast<std::uint64_t>(i));
  if (L == 1) return 1;
  // Largest cyclic gap between consecutive totatives of L; scanning one full
  // period past 1 (L+1 is again a totative) closes the cycle.
  unsigned best = 0;
  std::uint64_t prev = 1;
  for (std::uint64_t r = 2; r <= L + 1; ++r) {
    if (std::gcd(r, L) == 1) {
      best = std::max<unsigned>(best, static_cast<unsigned>(r - prev));
      prev = r;
    }
  }
  return best;
}

namespace {

// Digit-level Horner evaluation context over the scan field.
struct ScanPoly {
  std::vector<std::vector<std::uint32_t>> coeffs;  // constant first, embedded

  static ScanPoly make(const Poly& f, const FieldEmbedding& emb) {
    ScanPoly sp;
    sp.coeffs.reserve(f.coeffs().size());
    for (const FFElem& c : f.coeffs()) {
      sp.coeffs.push_back(emb.apply(c).coeffs());
    }
    return sp;
  }

  void eval(const Field& big, const std::uint32_t* x, std::uint32_t* out,
            std::uint32_t* tmp, std::uint64_t* scratch) const {
    const unsigned n = big.n();
    for (unsigned i = 0; i < n; ++i) out[i] = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      big.mul_digits(out, x, tmp, scratch);
      big.add_digits(tmp, coeffs[i].data(), out);
    }
  }
};

}  // namespace

BijectivityResult is_bijective_on(const RatFunc& f, unsigned k, std::uint64_t cap) {
  if (f.is_constant()) fail(ErrorKind::ConstantMap, "bijectivity of constant map");
  const FieldPtr base = f.field();
  std::uint64_t qk = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (qk > cap / base->q()) {
      fail(ErrorKind::CapExceeded,
           "q^k exceeds the enumeration cap " + std::to_string(cap));
    }
    qk *= base->q();
  }
  FieldPtr big = Field::make(base->p(), base->n() * k, cap);
  FieldEmbedding emb = embed(base, big);
  const Field& F = *big;
  const unsigned n = F.n();

  ScanPoly num = ScanPoly::make(f.num(), emb);
  ScanPoly den = ScanPoly::make(f.den(), emb);
  const bool poly_map = f.is_polynomial();

  const std::uint32_t sentinel = 0xFFFFFFFFu;
  std::vector<std::uint32_t> first(qk + 1, sentinel);

  std::vector<std::uint32_t> x(n, 0), u(n), v(n), tmp(n), inv(n);
  std::vector<std::uint64_t> scratch(2 * n);

  auto point_of = [&](std::uint64_t idx) {
    return idx == qk ? ProjPoint::at_infinity()
                     : ProjPoint::finite(big->from_index(idx));
  };

  for (std::uint64_t idx = 0; idx < qk; ++idx) {
    num.eval(F, x.data(), u.data(), tmp.data(), scratch.data());
    std::uint64_t image;
    if (poly_map) {
      image = F.index_of_digits(u.data());
    } else {
      den.eval(F, x.data(), v.data(), tmp.data(), scratch.data());
      if (F.digits_zero(v.data())) {
        image = qk;  // pole
      } else {
        F.inv_digits(v.data(), inv.data());
        F.mul_digits(u.data(), inv.data(), tmp.data(), scratch.data());
        image = F.index_of_digits(tmp.data());
      }
    }
    if (first[image] != sentinel) {
      BijectivityResult r;
      r.collision = Collision{point_of(first[image]), point_of(idx), k};
      return r;
    }
    first[image] = static_cast<std::uint32_t>(idx);
    // Odometer step to the next element in counting order.
    for (unsigned i = 0; i < n; ++i) {
      if (++x[i] < F.p()) break;
      x[i] = 0;
    }
  }

  // The point at infinity, by degree comparison.
  std::uint64_t image_inf;
  const int dn = f.num().degree(), dd = f.den().degree();
  if (dn > dd) {
    image_inf = qk;
  } else if (dn < dd) {
    image_inf = 0;
  } else {
    FFElem c = emb.apply(f.num().leading()) / emb.apply(f.den().leading());
    image_inf = c.index();
  }
  if (first[image_inf] != sentinel) {
    BijectivityResult r;
    r.collision = Collision{point_of(first[image_inf]), ProjPoint::at_infinity(), k};
    return r;
  }
  return BijectivityResult{true, std::nullopt};
}

ExceptionalityVerdict is_exceptional(const RatFunc& f, const ExcOptions& opts) {
  if (f.is_constant()) fail(ErrorKind::ConstantMap, "is_exceptional of constant map");
  auto [core, frob_exp] = separable_core(f);
  const unsigned d = core.degree();
  const std::uint64_t q = f.field()->q();

  ExceptionalityVerdict verdict;
  verdict.core = core;
  verdict.frob_exp = frob_exp;
  verdict.k0 = min_k(q, d, opts.strict_bound);
  verdict.window = jacobsthal_window(d);

  const unsigned effective =
      opts.window_override ? *opts.window_override : verdict.window;
  for (unsigned i = 0; i < effective; ++i) {
    const unsigned k = verdict.k0 + i;
    BijectivityResult r = is_bijective_on(core, k, opts.cap);
    verdict.scanned_k.push_back(k);
    if (r.bijective) {
      verdict.status = ExceptionalityVerdict::Status::Exceptional;
      verdict.witness_k = k;
      verdict.collision.reset();
      return verdict;
    }
    verdict.collision = r.collision;  // keep the largest scanned k's witness
  }
  verdict.status = effective >= verdict.window
                       ? ExceptionalityVerdict::Status::NotExceptional
                       : ExceptionalityVerdict::Status::Inconclusive;
  return verdict;
}

RamificationReport check_ramification(const RatFunc& f, const ExcOptions& opts) {
  if (f.is_constant()) fail(ErrorKind::ConstantMap, "check_ramification of constant map");
  RamificationReport rep;
  const FieldPtr field = f.field();
  const std::uint64_t qm1 = field->q() - 1;
  FieldEmbedding id = embed(field, field);
  for (std::uint64_t idx = 0; idx <= field->q(); ++idx) {
    ProjPoint pt = idx == field->q() ? ProjPoint::at_infinity()
                                     : ProjPoint::finite(field->from_index(idx));
    unsigned e = ram_index(f, id, pt);
    std::uint64_t g = qm1 == 0 ? 1 : std::gcd(static_cast<std::uint64_t>(e), qm1);
    rep.profile.push_back(RamProfileEntry{pt, e, g});
  }
  rep.verdict = is_exceptional(f, opts);
  rep.ram_coprime = std::all_of(rep.profile.begin(), rep.profile.end(),
                                [](const RamProfileEntry& r) { return r.gcd_e_qm1 == 1; });
  rep.pass = !rep.verdict.exceptional() || rep.ram_coprime;
  return rep;
}

std::uint64_t census_size(const FieldPtr& field, unsigned degree,
                          bool full_enumeration) {
  const std::uint64_t q = field->q();
  std::uint64_t count = 1;
  if (full_enumeration) {
    for (unsigned i = 0; i < degree; ++i) count *= q;  // free c_0..c_{n-1}
    return count * (q - 1);                            // nonzero leading
  }
  for (unsigned i = 0; i + 1 < degree; ++i) count *= q;  // free c_1..c_{n-1}
  return count;
}

RatFunc census_candidate(const FieldPtr& field, unsigned degree,
                         std::uint64_t index, bool full_enumeration) {
  std::vector<FFElem> coeffs(degree + 1, field->zero());
  std::uint64_t rest = index;
  if (full_enumeration) {
    for (unsigned i = 0; i < degree; ++i) {
      coeffs[i] = field->from_index(rest % field->q());
      rest /= field->q();
    }
    coeffs[degree] = field->from_index(1 + rest);  // leading in 1..q-1
  } else {
    coeffs[degree] = field->one();
    for (unsigned i = 1; i < degree; ++i) {
      coeffs[i] = field->from_index(rest % field->q());
      rest /= field->q();
    }
  }
  return RatFunc::from_poly(Poly(field, std::move(coeffs)));
}

ScanReport carlitz_wan_scan(const FieldPtr& field, unsigned degree,
                            const ScanOptions& opts) {
  if (degree < 1 || degree > kMaxCensusDegree) {
    fail(ErrorKind::DegreeTooLarge, "census degree out of range");
  }
  const std::uint64_t total = census_size(field, degree, opts.full_enumeration);
  if (total > opts.cap) {
    fail(ErrorKind::CapExceeded, "census candidate count exceeds the cap");
  }

  ScanReport report;
  report.q = field->q();
  report.degree = degree;
  report.normalization = opts.full_enumeration
                             ? "full enumeration (audit)"
                             : "monic, constant term zero";
  report.total_candidates = total;
  report.nominal_window = jacobsthal_window(degree);

  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t qm1 = field->q() - 1;

  auto classify = [&](std::uint64_t index) {
    CensusRow row;
    row.index = index;
    row.candidate = census_candidate(field, degree, index, opts.full_enumeration);
    ExcOptions eo;
    eo.strict_bound = opts.strict_bound;
    eo.cap = opts.cap;
    row.verdict = is_exceptional(row.candidate, eo);
    if (row.verdict.exceptional()) {
      row.gcd_deg_qm1 =
          qm1 == 0 ? 1 : std::gcd(static_cast<std::uint64_t>(degree), qm1);
      RamificationReport ram = check_ramification(row.candidate, eo);
      row.ram_profile = std::move(ram.profile);
      bool ram_ok = ram.ram_coprime;
      row.violation = row.gcd_deg_qm1 != 1 || !ram_ok;
    }
    return row;
  };

  unsigned jobs = opts.jobs ? opts.jobs : std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;

  const std::uint64_t chunk_size = 4096;
  for (std::uint64_t chunk_lo = opts.resume_from; chunk_lo < total;
       chunk_lo += chunk_size) {
    const std::uint64_t chunk_hi = std::min(total, chunk_lo + chunk_size);
    const std::uint64_t count = chunk_hi - chunk_lo;
    std::vector<CensusRow> rows(count);
    if (jobs == 1 || count < 2 * jobs) {
      for (std::uint64_t i = 0; i < count; ++i) rows[i] = classify(chunk_lo + i);
    } else {
      std::atomic<std::uint64_t> next{0};
      std::vector<std::thread> pool;
      pool.reserve(jobs);
      std::exception_ptr error;
      std::mutex error_mutex;
      for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&]() {
          try {
            for (std::uint64_t i = next.fetch_add(1); i < count;
                 i = next.fetch_add(1)) {
              rows[i] = classify(chunk_lo + i);
            }
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      if (error) std::rethrow_exception(error);
    }
    for (auto& row : rows) {
      if (opts.row_sink) opts.row_sink(row);
      if (row.verdict.exceptional()) {
        report.exceptional.push_back(row);
        if (row.violation) report.violations.push_back(row);
      }
      ++report.processed;
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return report;
}

}  // namespace excmap
