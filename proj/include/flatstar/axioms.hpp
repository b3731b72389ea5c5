#pragma once
// ===== axioms.hpp — the equational schemes and their five systems =====
//
// Schemes (metavariables: s,t,u sumforms; x,y,z processes; alpha an action):
//
//   A1    x+y = y+x                         (also s+t = t+s)
//   A2    (x+y)+z = x+(y+z)                 (also (s+t)+u = s+(t+u))
//   A3    x+x = x                           (also s+s = s)
//   A4    x+0 = x                           (also s+0 = s)
//   A5    (s+t).x = s.x+t.x
//   A6    0.x = 0
//   FA1   0*x = x
//   FA2   s*(t.(s+t)*x+x) = (s+t)*x
//   FT1   (s+tau)*x = tau.(s*x)+s*x
//   FT2   alpha.s*(tau.s*(x+y)+x) = alpha.s*(x+y)
//   T3    alpha.(x+tau.y) = alpha.(x+tau.y)+alpha.y
//   FT3   s*(x+tau.y) = s*(x+tau.y+s.y)
//   T1    alpha.tau.x = alpha.x
//   FFIR  (s+tau)*x = tau.(s*x)
//
// Systems, keyed by the congruence they axiomatise:
//   strong     A1-A6, FA1, FA2
//   branching  strong + FT1, FT2
//   eta        branching + T3, FT3
//   delay      strong + T1, FFIR
//   weak       delay + T3, FT3

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatstar/equivalence.hpp"
#include "flatstar/syntax.hpp"

namespace flatstar {

enum class Axiom {
  A1, A2, A3, A4, A5, A6, FA1, FA2, FT1, FT2, T3, FT3, T1, FFIR
};

const std::vector<Axiom>& all_axioms();
std::string axiom_name(Axiom a);
std::optional<Axiom> axiom_from_name(std::string_view name);

bool axiom_in_system(Axiom a, Relation k);
std::vector<Axiom> axioms_of(Relation k);

// An equation between two terms of one common sort.
struct Equation {
  SortedTerm lhs, rhs;

  Equation() : lhs(Process::nil()), rhs(Process::nil()) {}
  Equation(SortedTerm l, SortedTerm r);
  bool is_process() const { return lhs.is_process(); }
  bool operator==(const Equation& o) const {
    return lhs == o.lhs && rhs == o.rhs;
  }
  bool operator!=(const Equation& o) const { return !(*this == o); }
};

// A fully instantiated scheme occurrence.  A1-A4 exist at both sorts; all
// other schemes require process_sort.  The orientation is part of the
// instance: with l2r false the conclusion is the scheme read right-to-left.
struct AxiomInstance {
  Axiom scheme = Axiom::A1;
  bool l2r = true;
  bool process_sort = true;
  std::map<std::string, SumForm> sf;    // keys among s, t, u
  std::map<std::string, Process> proc;  // keys among x, y, z
  std::optional<ActionTau> alpha;
};

// The oriented equation this instance concludes, or nullopt when the
// assignment does not fit the scheme (missing, extra, or ill-sorted keys).
std::optional<Equation> instantiate(const AxiomInstance& inst);

}  // namespace flatstar
