#include "excmap/triple.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace excmap {

namespace {

PermGroup stab_of_base(const ExcTriple& t) { return t.A.stabilizer(t.base); }

std::vector<Perm> frob_coset(const ExcTriple& t) {
  std::vector<Perm> out;
  out.reserve(t.G.size());
  for (const Perm& g : t.G.elements()) out.push_back(t.frob * g);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Perm> conjugate_set(const Perm& s, const std::vector<Perm>& H) {
  Perm si = s.inverse();
  std::vector<Perm> out;
  out.reserve(H.size());
  for (const Perm& h : H) out.push_back(s * h * si);
  std::sort(out.begin(), out.end());
  return out;
}

bool sorted_contains(const std::vector<Perm>& v, const Perm& g) {
  return std::binary_search(v.begin(), v.end(), g);
}

}  // namespace

std::string TripleDiagnostics::first_failure() const {
  if (!frob_in_A) return "frob not in A";
  if (!G_inside_A) return "G not contained in A";
  if (!G_normal) return "G not normal in A";
  if (!quotient_generated_by_frob) return "frob*G does not generate A/G";
  if (!A_transitive) return "A not transitive";
  if (!G_transitive) return "G not transitive";
  return "";
}

TripleDiagnostics validate_triple(const ExcTriple& t) {
  TripleDiagnostics d;
  d.frob_in_A = t.A.contains(t.frob);
  d.G_inside_A = t.G.is_subgroup_of(t.A);
  d.G_normal = d.G_inside_A && t.G.is_normal_in(t.A);
  d.quotient_generated_by_frob =
      d.frob_in_A && d.G_normal && generates_with(t.A, t.G, t.frob);
  d.A_transitive = t.A.transitive();
  d.G_transitive = t.G.transitive();
  return d;
}

void require_valid(const ExcTriple& t, bool require_totally_ramified) {
  TripleDiagnostics d = validate_triple(t);
  if (!d.valid() || (require_totally_ramified && !d.G_transitive)) {
    fail(ErrorKind::InvalidTriple, d.first_failure());
  }
}

TotalRamificationReport total_ramification_equiv(const ExcTriple& t) {
  TotalRamificationReport r;
  PermGroup A1 = stab_of_base(t);
  PermGroup G1 = t.G.intersection(A1);

  const std::size_t a = t.A.size(), g = t.G.size();
  const std::size_t a1 = A1.size(), g1 = G1.size();
  r.index_A_A1_eq_G_G1 = (a / a1) == (g / g1);
  r.index_A1_G1_eq_A_G = (a1 / g1) == (a / g);

  // Image of A1 in A/G, cosets keyed by their least member.
  std::set<Perm> image_keys;
  for (const Perm& s : A1.elements()) {
    Perm least = s;
    for (const Perm& h : t.G.elements()) {
      Perm cand = s * h;
      if (cand < least) least = cand;
    }
    image_keys.insert(least);
  }
  r.quotient_embedding_onto = image_keys.size() == a / g;

  // Image of G in A/A1: which base-point images are hit.
  std::vector<bool> hit(t.n, false);
  for (const Perm& h : t.G.elements()) hit[h(t.base)] = true;
  std::size_t hits = 0;
  for (bool b : hit) hits += b ? 1 : 0;
  r.coset_embedding_onto = hits == a / a1;

  r.G_transitive = t.G.transitive();

  r.agree = r.index_A_A1_eq_G_G1 == r.index_A1_G1_eq_A_G &&
            r.index_A1_G1_eq_A_G == r.quotient_embedding_onto &&
            r.quotient_embedding_onto == r.coset_embedding_onto &&
            r.coset_embedding_onto == r.G_transitive;
  return r;
}

BatteryReport exceptionality_battery(const ExcTriple& t) {
  require_valid(t, /*require_totally_ramified=*/true);
  BatteryReport rep;
  const unsigned n = t.n;
  PermGroup A1 = stab_of_base(t);
  PermGroup G1 = t.G.intersection(A1);
  const std::vector<Perm> phi = frob_coset(t);
  std::vector<Perm> phi_L;  // Frob(N/L) = phi intersect A1
  for (const Perm& s : phi) {
    if (A1.contains(s)) phi_L.push_back(s);
  }

  NaturalAction nat{n};
  PairAction pairs{n};

  // (2): {base} is the unique common orbit of A1 and G1 on S.
  {
    auto common = common_orbits_direct(A1, G1, nat);
    rep.items[2] = common.size() == 1 && common[0].size() == 1 &&
                   common[0][0] == t.base;
  }
  // (3): the diagonal is the unique common orbit of A and G on S x S.
  {
    auto common = common_orbits_direct(t.A, t.G, pairs);
    bool diag = common.size() == 1 && common[0].size() == n;
    if (diag) {
      for (unsigned v : common[0]) {
        if (v / n != v % n) diag = false;
      }
    }
    rep.items[3] = diag;
  }
  // (4): Frob(N/L) meets no conjugate stabilizer sigma*A1*sigma^-1, sigma
  // outside A1.
  {
    bool ok = true;
    for (const Perm& s : t.A.elements()) {
      if (A1.contains(s)) continue;
      auto conj = conjugate_set(s, A1.elements());
      for (const Perm& f : phi_L) {
        if (sorted_contains(conj, f)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    rep.items[4] = ok;
  }
  // (5): Frob(N/K) is the union of Frob(N/sigma(L)) over sigma in A.
  {
    std::set<Perm> covered;
    for (const Perm& s : t.A.elements()) {
      auto conj = conjugate_set(s, A1.elements());
      for (const Perm& f : phi) {
        if (sorted_contains(conj, f)) covered.insert(f);
      }
    }
    rep.items[5] = covered.size() == phi.size();
  }
  // (6)-(8): fixed points of generators sigma with A = <G, sigma>.
  {
    bool unique = true, at_most = true, at_least = true;
    for (const Perm& s : t.A.elements()) {
      if (!generates_with(t.A, t.G, s)) continue;
      unsigned fix = s.fixed_points();
      if (fix != 1) unique = false;
      if (fix > 1) at_most = false;
      if (fix < 1) at_least = false;
    }
    rep.items[6] = unique;
    rep.items[7] = at_most;
    rep.items[8] = at_least;
  }
  // (9)-(11): fixed points of elements of the Frobenius coset.
  {
    bool unique = true, at_most = true, at_least = true;
    for (const Perm& s : phi) {
      unsigned fix = s.fixed_points();
      if (fix != 1) unique = false;
      if (fix > 1) at_most = false;
      if (fix < 1) at_least = false;
    }
    rep.items[9] = unique;
    rep.items[10] = at_most;
    rep.items[11] = at_least;
  }
  // (12)-(13): sigma in A1 with A1 = <G1, sigma>, fixed points in S.
  {
    bool unique = true, at_most = true;
    for (const Perm& s : A1.elements()) {
      if (!generates_with(A1, G1, s)) continue;
      unsigned fix = s.fixed_points();
      if (fix != 1) unique = false;
      if (fix > 1) at_most = false;
    }
    rep.items[12] = unique;
    rep.items[13] = at_most;
  }
  // (14)-(15): elements of Frob(N/L), fixed points in S.
  {
    bool unique = true, at_most = true;
    for (const Perm& s : phi_L) {
      unsigned fix = s.fixed_points();
      if (fix != 1) unique = false;
      if (fix > 1) at_most = false;
    }
    rep.items[14] = unique;
    rep.items[15] = at_most;
  }

  rep.agreement = true;
  for (const auto& [k, v] : rep.items) {
    if (v != rep.items.at(2)) rep.agreement = false;
  }
  return rep;
}

bool is_exceptional_triple(const ExcTriple& t) {
  require_valid(t, /*require_totally_ramified=*/true);
  PairAction pairs{t.n};
  auto common = common_orbits_direct(t.A, t.G, pairs);
  if (common.size() != 1 || common[0].size() != t.n) return false;
  for (unsigned v : common[0]) {
    if (v / t.n != v % t.n) return false;
  }
  return true;
}

std::vector<PermGroup> intermediate_subgroups(const ExcTriple& t, std::size_t cap) {
  require_valid(t, /*require_totally_ramified=*/false);
  if (t.A.size() > cap) fail(ErrorKind::GroupTooLarge, "A exceeds lattice cap");
  PermGroup A1 = stab_of_base(t);

  // Transversal: least representative of each coset of A1 in A.
  std::vector<Perm> transversal;
  {
    std::vector<bool> seen(t.n, false);
    for (const Perm& s : t.A.elements()) {  // sorted, so first rep is least
      unsigned pt = s(t.base);
      if (!seen[pt]) {
        seen[pt] = true;
        transversal.push_back(s);
      }
    }
  }

  auto key_of = [](const PermGroup& H) {
    std::vector<std::uint8_t> key;
    for (const Perm& g : H.elements()) {
      key.insert(key.end(), g.images().begin(), g.images().end());
    }
    return key;
  };

  std::vector<PermGroup> found;
  std::set<std::vector<std::uint8_t>> seen_keys;
  found.push_back(A1);
  seen_keys.insert(key_of(A1));
  std::vector<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t idx = work.back();
    work.pop_back();
    PermGroup B = found[idx];
    for (const Perm& rep : transversal) {
      if (B.contains(rep)) continue;
      std::vector<Perm> gens = B.elements();
      gens.push_back(rep);
      PermGroup ext = PermGroup::close(t.A.degree(), std::move(gens), cap);
      auto key = key_of(ext);
      if (seen_keys.insert(std::move(key)).second) {
        found.push_back(std::move(ext));
        work.push_back(found.size() - 1);
      }
    }
  }
  std::sort(found.begin(), found.end(),
            [](const PermGroup& a, const PermGroup& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a.elements() < b.elements();
            });
  return found;
}

namespace {

// Action of a group's elements on the left cosets of a subgroup, cosets
// numbered so that the coset of the identity is 0.
struct CosetSpace {
  std::vector<Perm> reps;                 // least representative per coset
  std::map<Perm, unsigned> index_of_elem; // element -> coset index

  static CosetSpace make(const std::vector<Perm>& group_elements,
                         const PermGroup& B) {
    CosetSpace cs;
    for (const Perm& a : group_elements) {  // sorted ascending
      if (cs.index_of_elem.count(a)) continue;
      unsigned idx = static_cast<unsigned>(cs.reps.size());
      cs.reps.push_back(a);
      for (const Perm& b : B.elements()) {
        cs.index_of_elem.emplace(a * b, idx);
      }
    }
    return cs;
  }

  Perm induced(const Perm& a) const {
    std::vector<std::uint8_t> img(reps.size());
    for (unsigned i = 0; i < reps.size(); ++i) {
      img[i] = static_cast<std::uint8_t>(index_of_elem.at(a * reps[i]));
    }
    return Perm(std::move(img));
  }
};

}  // namespace

SubextReport subext_check(const ExcTriple& t, const PermGroup& B) {
  require_valid(t, /*require_totally_ramified=*/true);
  PermGroup A1 = stab_of_base(t);
  if (!A1.is_subgroup_of(B) || !B.is_subgroup_of(t.A)) {
    fail(ErrorKind::NotIntermediate, "B not between A1 and A");
  }

  SubextReport rep;
  rep.subgroup_size = B.size();
  rep.quotient_degree = static_cast<unsigned>(t.A.size() / B.size());
  rep.sub_degree = static_cast<unsigned>(B.size() / A1.size());
  rep.whole = is_exceptional_triple(t);

  // Quotient triple: A acting on A/B. The identity coset sits at index 0
  // because elements are scanned in sorted order.
  {
    CosetSpace cs = CosetSpace::make(t.A.elements(), B);
    std::vector<Perm> gens_A, gens_G;
    for (const Perm& g : t.A.gens().empty() ? t.A.elements() : t.A.gens()) {
      gens_A.push_back(cs.induced(g));
    }
    for (const Perm& g : t.G.gens().empty() ? t.G.elements() : t.G.gens()) {
      gens_G.push_back(cs.induced(g));
    }
    ExcTriple quot;
    quot.n = rep.quotient_degree;
    quot.A = PermGroup::close(quot.n, std::move(gens_A));
    quot.G = PermGroup::close(quot.n, std::move(gens_G));
    quot.frob = cs.induced(t.frob);
    quot.base = 0;
    rep.quotient_exceptional = is_exceptional_triple(quot);
  }

  // Sub-triple: B acting on B/A1, with geometric part B intersect G and the
  // Frobenius representative any element of frob*G inside B (nonempty since
  // G transitive forces GB = A); we take the least one.
  {
    PermGroup BG = B.intersection(t.G);
    Perm frob_sub;
    bool found = false;
    for (const Perm& g : t.G.elements()) {
      Perm cand = t.frob * g;
      if (B.contains(cand)) {
        if (!found || cand < frob_sub) {
          frob_sub = cand;
          found = true;
        }
      }
    }
    if (!found) fail(ErrorKind::InvalidTriple, "frob*G misses B");

    CosetSpace cs = CosetSpace::make(B.elements(), A1);
    std::vector<Perm> gens_B, gens_BG;
    for (const Perm& g : B.elements()) gens_B.push_back(cs.induced(g));
    for (const Perm& g : BG.elements()) gens_BG.push_back(cs.induced(g));
    ExcTriple sub;
    sub.n = rep.sub_degree;
    sub.A = PermGroup::close(sub.n, std::move(gens_B));
    sub.G = PermGroup::close(sub.n, std::move(gens_BG));
    sub.frob = cs.induced(frob_sub);
    sub.base = 0;
    rep.sub_exceptional = is_exceptional_triple(sub);
  }

  rep.holds = rep.whole == (rep.quotient_exceptional && rep.sub_exceptional);
  return rep;
}

bool galois_obstruction(const ExcTriple& t, std::size_t cap) {
  require_valid(t, /*require_totally_ramified=*/false);
  for (const PermGroup& B : intermediate_subgroups(t, cap)) {
    if (B.size() == t.A.size()) continue;
    if (B.is_normal_in(t.A)) return false;
  }
  return true;
}

bool aut_trivial(const ExcTriple& t) {
  require_valid(t, /*require_totally_ramified=*/false);
  PermGroup A1 = stab_of_base(t);
  std::size_t normalizer = 0;
  for (const Perm& a : t.A.elements()) {
    auto conj = conjugate_set(a, A1.elements());
    if (conj == A1.elements()) ++normalizer;
  }
  return normalizer == A1.size();
}

ExcTriple triple_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("triple JSON: ") + e.what());
  }
  auto perm_from = [](const nlohmann::json& arr) {
    if (!arr.is_array()) fail(ErrorKind::ParseError, "permutation must be an array");
    std::vector<std::uint8_t> img;
    for (const auto& v : arr) {
      if (!v.is_number_unsigned()) fail(ErrorKind::ParseError, "permutation entry");
      img.push_back(static_cast<std::uint8_t>(v.get<unsigned>()));
    }
    return Perm(std::move(img));
  };
  try {
    ExcTriple t;
    t.n = j.at("n").get<unsigned>();
    std::vector<Perm> gens_A, gens_G;
    for (const auto& arr : j.at("gens_A")) gens_A.push_back(perm_from(arr));
    for (const auto& arr : j.at("gens_G")) gens_G.push_back(perm_from(arr));
    for (const Perm& g : gens_A) {
      if (g.degree() != t.n) fail(ErrorKind::ParseError, "generator degree != n");
    }
    for (const Perm& g : gens_G) {
      if (g.degree() != t.n) fail(ErrorKind::ParseError, "generator degree != n");
    }
    t.A = PermGroup::close(t.n, std::move(gens_A));
    t.G = PermGroup::close(t.n, std::move(gens_G));
    t.frob = perm_from(j.at("frob"));
    if (t.frob.degree() != t.n) fail(ErrorKind::ParseError, "frob degree != n");
    t.base = j.value("base", 0u);
    if (t.base != 0) fail(ErrorKind::ParseError, "base must be 0");
    return t;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("triple JSON: ") + e.what());
  }
}

std::string triple_to_json_text(const ExcTriple& t) {
  nlohmann::json j;
  j["n"] = t.n;
  auto dump_perm = [](const Perm& g) {
    std::vector<unsigned> img(g.images().begin(), g.images().end());
    return img;
  };
  // Canonical form: deduplicated sorted non-identity generators, frob
  // normalized to the least member of its coset.
  auto canon_gens = [&](const PermGroup& H) {
    std::vector<Perm> gens = H.gens().empty() ? H.elements() : H.gens();
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const Perm& g) { return g.is_identity(); }),
               gens.end());
    nlohmann::json arr = nlohmann::json::array();
    for (const Perm& g : gens) arr.push_back(dump_perm(g));
    return arr;
  };
  j["gens_A"] = canon_gens(t.A);
  j["gens_G"] = canon_gens(t.G);
  Perm least = t.frob;
  for (const Perm& g : t.G.elements()) {
    Perm cand = t.frob * g;
    if (cand < least) least = cand;
  }
  j["frob"] = dump_perm(least);
  j["base"] = t.base;
  return j.dump();
}

}  // namespace excmap
