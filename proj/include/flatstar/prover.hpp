#pragma once
// ===== prover.hpp — automated congruence proofs =====
//
// prove_congruent decides rooted k-congruence and, when it holds, emits an
// equational certificate in the k-system; the certificate is re-checked
// before it is returned.  prove_nf is the normal-form kernel: a strong-mode
// pair is joined through the shared canonical solution of its transition
// classes, a branching-mode pair is equated under a guarding prefix.

#include <optional>
#include <string>

#include "flatstar/equivalence.hpp"
#include "flatstar/proof.hpp"
#include "flatstar/syntax.hpp"

namespace flatstar {

struct ProveOutcome {
  std::optional<Proof> proof;  // present exactly when the pair is congruent
  std::string witness;         // the checker's refusal otherwise
  bool proved() const { return proof.has_value(); }
};

// Equates two bisimilar normal-form-shaped terms: stars of atom-prefixed
// normal-form-shaped bodies and variables, canonical or not; branching mode
// additionally demands τ-free loops.
//   strong:    gamma must be absent; the proof concludes p = q.
//   branching: p, q branching bisimilar (rootedness not required); gamma
//              names the guarding prefix; the proof concludes
//              gamma.p = gamma.q.
// Any shape, relation or precondition violation raises
// std::invalid_argument; the returned proof has been re-checked.
Proof prove_nf(const Process& p, const Process& q, Relation k,
               std::optional<ActionTau> gamma = std::nullopt);

// Decides rooted k-congruence for all five relations.  Proved outcomes
// carry a re-checked proof of p = q in system k; an internal derivation
// failure throws std::logic_error.
ProveOutcome prove_congruent(const Process& p, const Process& q, Relation k);

}  // namespace flatstar
