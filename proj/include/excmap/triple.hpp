#pragma once

#include <map>
#include <string>
#include <vector>

#include "excmap/perm.hpp"

namespace excmap {

/// Group-level model of a totally ramified extension: A transitive on
/// {0..n-1}, G normal in A with cyclic quotient generated by frob*G, base
/// point 0. A plays the arithmetic monodromy group, G the geometric one,
/// and frob the designated Frobenius coset representative.
struct ExcTriple {
  unsigned n = 0;
  PermGroup A;
  PermGroup G;
  Perm frob;
  unsigned base = 0;
};

struct TripleDiagnostics {
  bool frob_in_A = false;
  bool G_inside_A = false;
  bool G_normal = false;
  bool quotient_generated_by_frob = false;
  bool A_transitive = false;
  bool G_transitive = false;  // the totally ramified flag

  bool valid() const {
    return frob_in_A && G_inside_A && G_normal && quotient_generated_by_frob &&
           A_transitive;
  }
  bool totally_ramified() const { return valid() && G_transitive; }
  /// Name of the first failed flag, or empty when everything passes.
  std::string first_failure() const;
};

TripleDiagnostics validate_triple(const ExcTriple& t);
/// Throws InvalidTriple unless valid (and, when require_totally_ramified,
/// unless G is transitive too).
void require_valid(const ExcTriple& t, bool require_totally_ramified);

/// The five index/orbit formulations of total ramification, evaluated
/// independently; `agree` is true when all five coincide.
struct TotalRamificationReport {
  bool index_A_A1_eq_G_G1 = false;     // [A:A1] = [G:G1]
  bool index_A1_G1_eq_A_G = false;     // [A1:G1] = [A:G]
  bool quotient_embedding_onto = false;  // A1/G1 -> A/G is an isomorphism
  bool coset_embedding_onto = false;     // G/G1 -> A/A1 is a bijection
  bool G_transitive = false;
  bool agree = false;
  bool common_value() const { return G_transitive; }
};

TotalRamificationReport total_ramification_equiv(const ExcTriple& t);

/// One boolean per item (2)..(15) of the equivalence battery plus their
/// agreement; item numbers follow the order: orbit conditions (2)-(3),
/// Frobenius coset conditions (4)-(5), generator fixed points (6)-(8),
/// Frobenius fixed points (9)-(11), stabilizer-side variants (12)-(15).
struct BatteryReport {
  std::map<int, bool> items;
  bool agreement = false;
  bool common_value() const { return items.at(3); }
};

BatteryReport exceptionality_battery(const ExcTriple& t);

/// Canonical exceptionality predicate: the diagonal is the unique common
/// orbit of A and G on S x S.
bool is_exceptional_triple(const ExcTriple& t);

/// All subgroups B with A1 <= B <= A, by closing A1 together with subsets of
/// a transversal; sorted by size then element list.
std::vector<PermGroup> intermediate_subgroups(const ExcTriple& t,
                                              std::size_t cap = kDefaultGroupCap);

struct SubextReport {
  std::size_t subgroup_size = 0;
  unsigned quotient_degree = 0;  // [A:B]
  unsigned sub_degree = 0;       // [B:A1]
  bool whole = false;
  bool quotient_exceptional = false;
  bool sub_exceptional = false;
  bool holds = false;  // whole <=> (quotient && sub)
};

/// Tower decomposition through an intermediate subgroup B: builds the
/// quotient triple (A on A/B) and the sub-triple (B on B/A1) and checks the
/// two-sided equivalence.
SubextReport subext_check(const ExcTriple& t, const PermGroup& B);

/// True iff no B with A1 <= B normal in A and B != A exists (no proper
/// Galois subextension).
bool galois_obstruction(const ExcTriple& t, std::size_t cap = kDefaultGroupCap);

/// True iff the normalizer of A1 in A is A1 itself (trivial automorphism
/// group of the extension).
bool aut_trivial(const ExcTriple& t);

// JSON wire format: {"n":int, "gens_A":[[...]], "gens_G":[[...]],
// "frob":[...], "base":0}, permutations in 0-indexed one-line notation.
ExcTriple triple_from_json_text(const std::string& text);
std::string triple_to_json_text(const ExcTriple& t);

}  // namespace excmap
