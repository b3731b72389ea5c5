#pragma once
// ===== equivalence.hpp — bisimulations, rooted congruences, saturation =====
//
// Five flavours.  For a symmetric relation R, a move u -xi-> u' must be
// answered by v as follows (==> is zero or more tau steps; "(xi)" means a
// xi step, or no step at all when xi is tau):
//
//   strong     v -xi-> v'
//   branching  v ==> v1 -(xi)-> v'          with u R v1
//   eta        v ==> v1 -(xi)-> v2 ==> v'   with u R v1
//   delay      v ==> v1 -(xi)-> v'
//   weak       v ==> v1 -(xi)-> v2 ==> v'
//
// always with u' R v'.  The rooted congruences strengthen the root: every
// root move must be answered with a strict xi step (branching: in one step;
// eta: xi step then ==>; delay: ==> then xi step; weak: ==> xi ==>), in both
// directions.  Strong congruence is strong bisimilarity itself.

#include <optional>
#include <string>
#include <vector>

#include "flatstar/semantics.hpp"
#include "flatstar/syntax.hpp"

namespace flatstar {

enum class Relation { strong, branching, eta, delay, weak };

constexpr const char* kRelationNames[] = {"strong", "branching", "eta",
                                          "delay", "weak"};
std::string relation_name(Relation k);
std::optional<Relation> relation_from_name(std::string_view name);

// The greatest k-bisimulation on l as a symmetric n x n matrix.
std::vector<std::vector<char>> bisimulation(const LtsCore& l, Relation k);

bool bisimilar(const Process& p, const Process& q, Relation k);

// Rooted k-congruence (== k-bisimilarity for strong).
bool congruent(const Process& p, const Process& q, Relation k);

struct CongruenceResult {
  bool related;
  std::string witness;  // human-readable refusal when !related, else empty
};
CongruenceResult congruent_ex(const Process& p, const Process& q, Relation k);

// ── saturation predicates ───────────────────────────────────────────────
//
// A term is k-saturated when single steps already realise the weak shapes
// the flavour may consume, at every derivative u:
//   eta:    u -l-> v -tau-> w   implies  u -l-> w
//   delay:  u -tau-> v -xi-> w  implies  u -xi-> w
//   weak:   both
// Strongly saturated adds a tau self-loop on every derivative other than
// the term itself (variables cannot carry one and are exempt).

bool is_saturated(const Process& p, Relation k);          // eta/delay/weak
bool is_strongly_saturated(const Process& p, Relation k); // eta/delay/weak

// ── potential prefix iteration ──────────────────────────────────────────
//
// Consider the graph on derivatives with an edge u -a-> v for every visible
// a with u ==> u' -a-> v.  The term is a potential prefix-iteration
// expression iff no strongly connected component of that graph contains two
// such edges with distinct actions.

bool is_potential_prefix(const Process& p);
bool is_potential_prefix(const LtsCore& l);  // same check on any LTS

}  // namespace flatstar
