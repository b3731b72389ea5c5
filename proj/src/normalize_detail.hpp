#pragma once
// Builder-level entry points shared by the normalization pipeline and the
// congruence prover: certified normal forms, star unfolding, saturation and
// τ-looping as steps inside a caller-owned ProofBuilder, plus the canonical
// tree constructors whose output matches canon_sum exactly.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "flatstar/derive.hpp"
#include "flatstar/normalize.hpp"

namespace flatstar::detail {

// Right comb of the sorted, deduplicated, zero-free summands; Nil when
// nothing remains.  Equal to what canon_sum leaves at a position.
Process canon_tree(std::vector<Process> summands);

// Right comb of the sorted, deduplicated action atoms; Zero when empty.
SumForm canon_sf_tree(const std::set<ActionTau>& actions);

// Flattened summands of a body: (action, target) pairs and variable names.
struct BodyView {
  std::vector<std::pair<ActionTau, Process>> pairs;
  std::vector<std::string> vars;
};
BodyView body_view(const Process& body);

// Position of summand i (0-based) inside a right comb of n summands,
// relative to the comb's root.
Path comb_pos(int i, int n);

// Splits the prefix at `at` into atom-prefixed summands with A5 and erases
// zero prefixes with A6.  The subterm at `at` must be a Prefix.
void split_prefix(Rewriter& rw, const Path& at);

// id: star = U with U the canonical raw sum of the star's one-step
// summands (loop atoms prefixing the star itself, then the body).
std::pair<int, Process> unfold_eq(ProofBuilder& b, Process star);

struct NfCtx {
  ProofBuilder& b;
  NfMode mode;
  std::map<Process, int> memo;  // input term -> id of (term = its NF)
};

// id: p = NF(p); the right side satisfies is_normal_form for the mode.
int nf_step(NfCtx& c, const Process& p);

// Given id: p = N with N a normal-form star, extends to
// id: p = 0*(unfold of N), pushing every star under a prefix.
int root_unfold(ProofBuilder& b, int nf_id);

struct SatCtx {
  ProofBuilder& b;
  Relation k;                      // eta, delay or weak
  std::map<Process, int> memo;     // star -> id of (star = saturated star)
  std::map<Process, int> unfolds;  // star -> id of unfold_eq
};

// id: star = saturated star.  `star` must be a normal-form star; the
// result's derivatives satisfy the is_saturated conditions for k.
int saturate_star(SatCtx& c, Process star);

struct LoopCtx {
  ProofBuilder& b;                            // system delay or weak
  std::map<std::pair<ActionTau, Process>, int> memo;
};

// id: α.d = α.d' where d' carries τ in its loop, recursively through the
// summand bodies.  `d` must be a star of prefixed summands and variables.
int loop_prefix(LoopCtx& c, const ActionTau& alpha, const Process& d);

// Applies loop_prefix to every prefixed summand of the body of `star`
// (which the transcript currently holds at rw.current()); id via rw.
void loop_body(LoopCtx& c, Rewriter& rw);

}  // namespace flatstar::detail
