#pragma once
// ===== proof.hpp — machine-checkable equational proof certificates =====
//
// A proof is a numbered list of steps, each carrying its conclusion.  Step
// kinds and the facts the checker enforces:
//
//   axiom  <scheme> <L2R|R2L> <mv>:=<term>...   conclusion is the oriented
//          instance; the scheme must belong to the system being checked
//   refl                                        lhs == rhs
//   sym    <ref>                                flips an earlier conclusion
//   trans  <ref1> <ref2>                        chains two earlier ones
//   ctx    <ref> <path>                         rewrites the subterm at path
//          (path '-' is the root, else dot-joined child indices)
//   subst  <ref> <Var>:=<term>...               applies a substitution to a
//          process-sorted earlier conclusion
//
// Text form, one step per line ('#' starts a comment line):
//   <id> <kind> <args...> |- <lhs> = <rhs>      process equations
//   <id> <kind> <args...> |-sf <lhs> = <rhs>    sumform equations
//   claim |- <lhs> = <rhs>                      final line, must repeat the
//                                               last step's conclusion

#include <string>
#include <vector>

#include "flatstar/axioms.hpp"

namespace flatstar {

enum class StepKind { Axiom, Refl, Sym, Trans, Ctx, Subst };

struct ProofStep {
  StepKind kind = StepKind::Refl;
  AxiomInstance inst;      // Axiom
  int a = -1, b = -1;      // Sym/Ctx/Subst use a; Trans uses a and b
  Path path;               // Ctx
  Substitution subst;      // Subst
  Equation conclusion;
};

struct Proof {
  std::vector<ProofStep> steps;
  const Equation& claim() const;  // conclusion of the last step
};

enum class ProofStatus { valid, invalid, malformed };

struct CheckResult {
  ProofStatus status;
  std::string message;  // empty when valid
  bool ok() const { return status == ProofStatus::valid; }
};

// Structural check of every step against the axioms of relation k.
CheckResult check_proof(const Proof& p, Relation k);

// As above, and the proof must conclude exactly `claim`.
CheckResult check_proof(const Proof& p, Relation k, const Equation& claim);

std::string to_text(const Proof& p);

// Parse the text form; `malformed` covers syntax and format problems only.
// Whether the claim line matches the last step is a semantic question left
// to verify_text (an `invalid` outcome there).
struct ParsedProof {
  Proof proof;
  std::optional<Equation> claim;  // from the final claim line
  CheckResult parse;              // valid or malformed
};
ParsedProof parse_proof(const std::string& text);

// Convenience: parse then check against k (and claim when given).
CheckResult verify_text(const std::string& text, Relation k);
CheckResult verify_text(const std::string& text, Relation k,
                        const Equation& claim);

}  // namespace flatstar
