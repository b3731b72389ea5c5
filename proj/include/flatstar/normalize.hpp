#pragma once
// ===== normalize.hpp — normal forms, saturation, rewriting, translation ===
//
// Normal forms are star shapes s*(Σ α_i.P_i + Σ x_j) with canonical loop
// sumform and canonical body, the P_i again normal forms; branching mode
// additionally keeps τ out of every loop.  Saturation closes a term's
// derivatives under the two-step absorption conditions of is_saturated;
// strong saturation further gives every proper derivative a τ self-loop.
// All four constructions return checkable certificates.
//
// The rewrite system R (A5, A6, FA1 read left to right, plus FT1 in
// weak-family mode) and the translation φ to single-action prefixes work on
// bare terms; their outputs are validated semantically, not by proof.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flatstar/equivalence.hpp"
#include "flatstar/proof.hpp"
#include "flatstar/syntax.hpp"

namespace flatstar {

// ── normal forms ────────────────────────────────────────────────────────

enum class NfMode { strong, branching };

// Star of a canonical sum of atom-prefixed normal forms and variables;
// branching mode also demands τ-free loops, recursively.
bool is_normal_form(const Process& p, NfMode mode);

// A normal form together with a proof of p = result.  Strong mode derives
// within the strong system; branching mode may additionally use FT1.
std::pair<Process, Proof> to_normal_form(const Process& p, NfMode mode);

// ── head normal forms ──────────────────────────────────────────────────

// p = Σ α_i.P_i + Σ x_j, proven in the strong system.  `term` is the raw
// sum the proof concludes (Nil when both lists are empty).
struct HeadNormalForm {
  std::vector<std::pair<ActionTau, Process>> summands;
  std::vector<std::string> vars;
  Process term;
  Proof proof;
};

HeadNormalForm head_normal_form(const Process& p);

// ── saturation ──────────────────────────────────────────────────────────

// k in {eta, delay, weak}.  Result is a raw sum Σ α_i.P_i + Σ x_j passing
// is_saturated(result, k); the proof concludes p = result in system k.
std::pair<Process, Proof> saturate(const Process& p, Relation k);

// k in {delay, weak}.  As saturate, and the result additionally passes
// is_strongly_saturated(result, k).
std::pair<Process, Proof> strong_saturate(const Process& p, Relation k);

// ── the rewrite system R ────────────────────────────────────────────────

enum class RewriteMode { weak_family, strong };
enum class RewriteStrategy { innermost, outermost };

// Upper bound on the number of R steps from p: every contraction strictly
// decreases this weight.  Saturates instead of overflowing.
std::uint64_t rewrite_measure(const Process& p);

// Exhaustive reduction with A5, A6, FA1 (and FT1 in weak-family mode).
// The system is orthogonal, so both strategies reach the same normal form.
// Throws std::runtime_error when `fuel` contractions do not suffice.
Process rewrite_R(const Process& p, RewriteMode mode,
                  RewriteStrategy strategy = RewriteStrategy::innermost,
                  std::uint64_t fuel = UINT64_C(1) << 62);

// ── translation to prefix iteration ─────────────────────────────────────

// The three shapes a sumform may take, up to A1-4, in an expression whose
// behaviour fits prefix iteration.  The alternatives are mutually
// exclusive; sumforms with two distinct visible actions fit none (nullopt).
struct SumformClass {
  enum class Tag { IsZero, IsSingle, IsVisiblePlusTau };
  Tag tag;
  std::optional<ActionTau> action;  // IsSingle: the action; IsVisiblePlusTau:
                                    // the visible part
  bool operator==(const SumformClass& o) const {
    return tag == o.tag && action == o.action;
  }
};

std::optional<SumformClass> classify_sumform(const SumForm& s);

// Every Prefix/Star sumform is a single action.
bool in_prefix_fragment(const Process& p);

// Rewrites each star's sumform to its classified shape (0, α, or a+τ) and
// reduces with R until every head is atomic.  Identity on the fragment.
// Pre: is_potential_prefix(p); throws std::domain_error
// "not a potential prefix-iteration expression" otherwise.
Process phi(const Process& p);

// An axiom scheme instance carried into the prefix-iteration fragment.
struct PhiAxiom {
  Axiom scheme;
  Process lhs, rhs;
  bool operator==(const PhiAxiom& o) const {
    return scheme == o.scheme && lhs == o.lhs && rhs == o.rhs;
  }
};

// Instantiates every scheme of system k — sumform metavariables over
// {0, τ, a+τ}, α over b, process metavariables over distinct variables —
// applies φ to both sides, drops identities and duplicates.  `alphabet`
// must supply at least two distinct visible actions (a, then b).
std::vector<PhiAxiom> phi_axioms(Relation k,
                                 const std::vector<ActionTau>& alphabet);

}  // namespace flatstar
