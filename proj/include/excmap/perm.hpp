#pragma once

#include <cstdint>
#include <vector>

#include "excmap/errors.hpp"

namespace excmap {

inline constexpr std::size_t kDefaultGroupCap = 100000;

/// Permutation of {0..n-1} in one-line notation.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint8_t> images);
  static Perm identity(unsigned n);
  /// i -> i + shift (mod n).
  static Perm cycle_shift(unsigned n, unsigned shift);
  /// i -> m * i (mod n); m must be a unit mod n.
  static Perm mul_map(unsigned n, unsigned m);

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  unsigned operator()(unsigned i) const { return img_[i]; }
  const std::vector<std::uint8_t>& images() const { return img_; }

  bool is_identity() const;
  unsigned fixed_points() const;

  /// (a * b)(i) = a(b(i)): apply b first.
  friend Perm operator*(const Perm& a, const Perm& b);
  Perm inverse() const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

 private:
  std::vector<std::uint8_t> img_;
};

/// Fully enumerated permutation group: elements are kept sorted, so lookups
/// and canonical forms are deterministic. Sizes here stay tiny by design;
/// the cap turns accidental blowups into typed errors.
class PermGroup {
 public:
  PermGroup() = default;

  static PermGroup close(unsigned n, std::vector<Perm> gens,
                         std::size_t cap = kDefaultGroupCap);
  /// Wraps an already-closed element set (sorted and deduplicated here).
  static PermGroup from_elements(unsigned n, std::vector<Perm> elements);
  static PermGroup trivial(unsigned n);

  unsigned degree() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Perm>& gens() const { return gens_; }
  const std::vector<Perm>& elements() const { return elements_; }

  bool contains(const Perm& g) const;
  bool is_subgroup_of(const PermGroup& other) const;
  bool same_elements(const PermGroup& other) const;
  /// Conjugates of this group's elements by A's generators stay inside.
  bool is_normal_in(const PermGroup& A) const;

  std::vector<unsigned> orbit(unsigned point) const;
  bool transitive() const;
  PermGroup stabilizer(unsigned point) const;
  PermGroup intersection(const PermGroup& other) const;

 private:
  unsigned n_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> elements_;
};

PermGroup close_group(unsigned n, std::vector<Perm> gens,
                      std::size_t cap = kDefaultGroupCap);

/// All subgroups of G, found by breadth-first closure over added generators.
std::vector<PermGroup> all_subgroups(const PermGroup& G,
                                     std::size_t cap = kDefaultGroupCap);

/// Least j >= 1 with sigma^j in H; the order of sigma*H in the quotient when
/// H is normal. Throws NotGenerator if no power lands in H (sigma outside the
/// normalizer chain), which cannot happen for sigma in a finite overgroup.
unsigned coset_order(const Perm& sigma, const PermGroup& H);

/// True iff <H, sigma> equals A, for H normal in A and sigma in A.
bool generates_with(const PermGroup& A, const PermGroup& H, const Perm& sigma);

struct NaturalAction {
  unsigned n;
  unsigned size() const { return n; }
  unsigned apply(const Perm& g, unsigned i) const { return g(i); }
};

struct PairAction {
  unsigned n;
  unsigned size() const { return n * n; }
  unsigned apply(const Perm& g, unsigned i) const {
    return g(i / n) * n + g(i % n);
  }
};

/// Orbit partition of the action domain under the group generators; returns
/// orbit id per point, ids numbered by least member.
template <class Action>
std::vector<unsigned> orbit_ids(const PermGroup& G, const Action& act);

/// H1-orbits that are single H2-orbits, for H2 a subgroup of H1; the
/// brute-force counterpart of the coset-sum formula.
template <class Action>
std::vector<std::vector<unsigned>> common_orbits_direct(const PermGroup& H1,
                                                        const PermGroup& H2,
                                                        const Action& act);

/// Number of H1-orbits that are also H2-orbits, via the average of fixed
/// points over the generating coset sigma*H2. H2 must be normal in H1 with
/// sigma*H2 generating the (cyclic) quotient; the division is exact.
template <class Action>
long burnside_common_orbits(const PermGroup& H1, const PermGroup& H2,
                            const Perm& sigma, const Action& act);

struct CountReport {
  bool diagonal_unique_common_orbit = false;
  bool unique_fixed_point = false;
  bool at_most_one_fixed_point = false;
  bool at_least_one_fixed_point = false;
  bool agreement = false;
  bool common_value() const { return diagonal_unique_common_orbit; }
};

/// Evaluates the four fixed-point characterizations independently for a
/// normal pair with cyclic quotient acting transitively through H2.
template <class Action>
CountReport count_equiv(const PermGroup& H1, const PermGroup& H2,
                        const Action& act);

// Template definitions.

template <class Action>
std::vector<unsigned> orbit_ids(const PermGroup& G, const Action& act) {
  const unsigned m = act.size();
  std::vector<unsigned> id(m, m);
  const auto& gens = G.gens().empty() ? G.elements() : G.gens();
  std::vector<unsigned> stack;
  for (unsigned s = 0; s < m; ++s) {
    if (id[s] != m) continue;
    id[s] = s;
    stack.assign(1, s);
    while (!stack.empty()) {
      unsigned v = stack.back();
      stack.pop_back();
      for (const Perm& g : gens) {
        unsigned w = act.apply(g, v);
        if (id[w] == m) {
          id[w] = s;
          stack.push_back(w);
        }
      }
    }
  }
  return id;
}

template <class Action>
std::vector<std::vector<unsigned>> common_orbits_direct(const PermGroup& H1,
                                                        const PermGroup& H2,
                                                        const Action& act) {
  if (!H2.is_subgroup_of(H1)) fail(ErrorKind::NotNormal, "H2 not inside H1");
  const unsigned m = act.size();
  std::vector<unsigned> id1 = orbit_ids(H1, act);
  std::vector<unsigned> id2 = orbit_ids(H2, act);
  std::vector<std::vector<unsigned>> out;
  for (unsigned s = 0; s < m; ++s) {
    if (id1[s] != s) continue;  // not an orbit leader
    std::vector<unsigned> members;
    bool single = true;
    for (unsigned v = 0; v < m; ++v) {
      if (id1[v] == s) {
        members.push_back(v);
        if (id2[v] != id2[s]) single = false;
      }
    }
    if (single) out.push_back(std::move(members));
  }
  return out;
}

template <class Action>
long burnside_common_orbits(const PermGroup& H1, const PermGroup& H2,
                            const Perm& sigma, const Action& act) {
  if (!H2.is_subgroup_of(H1) || !H2.is_normal_in(H1)) {
    fail(ErrorKind::NotNormal, "H2 not normal in H1");
  }
  if (!H1.contains(sigma) || !generates_with(H1, H2, sigma)) {
    fail(ErrorKind::NotGenerator, "sigma*H2 does not generate H1/H2");
  }
  const unsigned m = act.size();
  long long total = 0;
  for (const Perm& g : H2.elements()) {
    Perm h = sigma * g;
    long long fix = 0;
    for (unsigned v = 0; v < m; ++v) {
      if (act.apply(h, v) == v) ++fix;
    }
    total += fix;
  }
  if (total % static_cast<long long>(H2.size()) != 0) {
    fail(ErrorKind::NotGenerator, "coset fixed-point sum not divisible");
  }
  return static_cast<long>(total / static_cast<long long>(H2.size()));
}

template <class Action>
CountReport count_equiv(const PermGroup& H1, const PermGroup& H2,
                        const Action& act) {
  if (!H2.is_subgroup_of(H1) || !H2.is_normal_in(H1)) {
    fail(ErrorKind::NotNormal, "H2 not normal in H1");
  }
  {
    std::vector<unsigned> id = orbit_ids(H2, act);
    for (unsigned v = 0; v < act.size(); ++v) {
      if (id[v] != id[0]) fail(ErrorKind::NotTransitive, "H2 not transitive");
    }
  }
  CountReport rep;

  struct ProductAction {
    const Action* inner;
    unsigned size() const { return inner->size() * inner->size(); }
    unsigned apply(const Perm& g, unsigned i) const {
      unsigned m = inner->size();
      return inner->apply(g, i / m) * m + inner->apply(g, i % m);
    }
  };
  ProductAction prod{&act};
  auto common = common_orbits_direct(H1, H2, prod);
  bool diag = common.size() == 1;
  if (diag) {
    for (unsigned v : common[0]) {
      if (v / act.size() != v % act.size()) diag = false;
    }
    diag = diag && common[0].size() == act.size();
  }
  rep.diagonal_unique_common_orbit = diag;

  bool unique = true, at_most = true, at_least = true;
  for (const Perm& sigma : H1.elements()) {
    if (!generates_with(H1, H2, sigma)) continue;
    unsigned fix = 0;
    for (unsigned v = 0; v < act.size(); ++v) {
      if (act.apply(sigma, v) == v) ++fix;
    }
    if (fix != 1) unique = false;
    if (fix > 1) at_most = false;
    if (fix < 1) at_least = false;
  }
  rep.unique_fixed_point = unique;
  rep.at_most_one_fixed_point = at_most;
  rep.at_least_one_fixed_point = at_least;
  rep.agreement = (diag == unique) && (unique == at_most) && (at_most == at_least);
  return rep;
}

}  // namespace excmap
