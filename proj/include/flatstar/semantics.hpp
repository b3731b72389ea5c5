#pragma once
// ===== semantics.hpp — operational semantics and explicit LTSs =====
//
// Steps carry a Label: an action (visible or tau) or a process variable.
// A variable-labelled step always ends in that variable: X -var:X-> X, and
// x-labelled moves of larger terms reach exactly Var(x).

#include <string>
#include <utility>
#include <vector>

#include "flatstar/syntax.hpp"

namespace flatstar {

// All SOS steps of p, sorted by (label, target) and deduped.
std::vector<std::pair<Label, Process>> transitions(const Process& p);

// The action-labelled steps only (visible or tau).
std::vector<std::pair<ActionTau, Process>> action_transitions(const Process& p);

std::set<Label> initial_labels(const Process& p);

// Closure of {p} under action transitions.  Variable moves are not followed;
// a variable enters the set only as the target of an action step.
std::vector<Process> derivatives(const Process& p);

// ── explicit labelled transition systems ────────────────────────────────

struct LtsCore {
  int num_states = 0;
  // out[s] sorted by (label, target), deduped
  std::vector<std::vector<std::pair<Label, int>>> out;

  bool has_edge(int s, const Label& l, int t) const;
};

struct Lts {
  LtsCore core;
  std::vector<Process> states;  // states[i] is state i; BFS discovery order
  std::vector<int> roots;       // indices of the build roots, in call order

  int state_of(const Process& p) const;  // -1 if p is not a state
};

// BFS from the roots with structural dedup; roots enter the state table
// first, so build_lts(p).roots[0] == 0.
Lts build_lts(const Process& p);
Lts build_lts(const std::vector<Process>& roots);

// reach[i] = sorted states j with i ==> j (zero or more tau steps)
std::vector<std::vector<int>> tau_reach(const LtsCore& l);

// Aldebaran format: "des (<root>,<#transitions>,<#states>)" followed by one
// '(src,"label",dst)' line per transition, in state-major label order.
std::string to_aut(const Lts& l);

}  // namespace flatstar
