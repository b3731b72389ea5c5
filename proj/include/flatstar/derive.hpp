// Proof construction: a step builder that checks as it appends, a rewriting
// transcript that tracks start = current across positioned axiom
// applications, redex matching for the schemes, sum canonicalization by
// A1-A4 with certificates, and a handful of derived equations used
// throughout the prover.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "flatstar/proof.hpp"

namespace flatstar {

// Appends steps to a proof under a fixed axiom system, validating each one
// on the way in so that a bad derivation fails at its construction site
// (std::logic_error).  Methods return the id of the new step.
class ProofBuilder {
 public:
  explicit ProofBuilder(Relation system) : system_(system) {}
  Relation system() const { return system_; }

  int axiom(const AxiomInstance& inst);
  int refl(SortedTerm t);
  int sym(int a);
  int trans(int a, int b);
  // Folds trans over the ids; a singleton passes through unchanged.
  int chain(const std::vector<int>& ids);
  // premise rewritten at position `at` of `enclosing`: the subterm there
  // must be the premise's left side.  An empty path returns the premise id.
  int ctx(int premise, const SortedTerm& enclosing, const Path& at);
  int subst(int premise, const Substitution& sigma);

  const Equation& eq(int id) const;
  const SortedTerm& lhs(int id) const { return eq(id).lhs; }
  const SortedTerm& rhs(int id) const { return eq(id).rhs; }
  int size() const { return static_cast<int>(p_.steps.size()); }
  const Proof& proof() const { return p_; }

 private:
  int push(ProofStep s);
  Relation system_;
  Proof p_;
};

// Matches a redex against the oriented left side of a scheme and rebuilds
// the instance whose instantiation starts at exactly that redex.  Fails
// when the shape does not fit or that side does not determine every
// metavariable (A6 read right to left).
std::optional<AxiomInstance> match_axiom(Axiom a, bool l2r,
                                         const SortedTerm& redex);

// A rewriting transcript: a current term plus a proof of start = current,
// extended by applying proved equations at positions.
class Rewriter {
 public:
  Rewriter(ProofBuilder& b, SortedTerm start)
      : b_(b), start_(start), cur_(std::move(start)) {}

  const SortedTerm& current() const { return cur_; }
  ProofBuilder& builder() { return b_; }
  // Proof id for start = current (a fresh refl step if nothing applied).
  int id();

  // Rewrites with the equation of step `step_id`, whose left side must be
  // the subterm of current at `at`.
  void apply(int step_id, const Path& at = {});
  // Matches the scheme at the subterm and applies it; throws on mismatch.
  void rewrite(Axiom a, bool l2r, const Path& at = {});
  bool try_rewrite(Axiom a, bool l2r, const Path& at = {});

 private:
  ProofBuilder& b_;
  SortedTerm start_, cur_;
  int id_ = -1;
};

// The '+'-flattened summand list; a non-sum is its own single summand.
std::vector<SortedTerm> summands(const SortedTerm& t);
// Sorted, deduplicated, zero-free summands; empty means the term is 0.
std::vector<SortedTerm> canon_summands(const SortedTerm& t);

// Reassociates, sorts, deduplicates and strips zeros from the sum at `at`
// using A1-A4, leaving the canonical shape in the transcript.
void canon_sum(Rewriter& rw, const Path& at = {});

// A proof of lhs = rhs, available exactly when the two sides have equal
// canonical summand lists (equality modulo A1-A4 at the top layer).
std::optional<int> prove_sum_eq(ProofBuilder& b, const SortedTerm& lhs,
                                const SortedTerm& rhs);

// Derived equations.  Each returns the id of a step with the stated
// conclusion, built from the axioms of the builder's system, and throws
// std::logic_error when that system is too weak for the derivation.

// s.(s*x)+x = s*x          (any system)
int derive_bks1(ProofBuilder& b, const SumForm& s, const Process& x);
// s*(s*x) = s*x            (any system)
int derive_star_star(ProofBuilder& b, const SumForm& s, const Process& x);
// tau*x = tau.x            (delay, weak)
int derive_fir(ProofBuilder& b, const Process& x);
// tau.x = tau.x+x          (delay, weak)
int derive_t2(ProofBuilder& b, const Process& x);
// alpha.(tau.(x+y)+x) = alpha.(x+y)   (branching, eta, delay, weak)
int derive_b_law(ProofBuilder& b, const ActionTau& alpha, const Process& x,
                 const Process& y);
// alpha.(s+tau)*x = alpha.s*x         (branching, eta, delay, weak)
int derive_alpha_tau_star(ProofBuilder& b, const ActionTau& alpha,
                          const SumForm& s, const Process& x);

}  // namespace flatstar
