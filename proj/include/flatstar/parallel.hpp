#pragma once
// ===== parallel.hpp — closed-term merge and its elimination =====
//
// A net composes closed processes with the CCS merge: the components
// interleave, and complementary visible actions (a against 'a) handshake
// into a tau step.  expand_pair applies the expansion law once, leaving
// inner compositions as variables named by their net text;
// eliminate_parallel drives it recursively and returns a merge-free
// process with the same strong behaviour.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flatstar/equivalence.hpp"
#include "flatstar/semantics.hpp"
#include "flatstar/syntax.hpp"

namespace flatstar {

// The handshake partner: a <-> 'a.  Throws std::invalid_argument on tau.
ActionTau co_action(const ActionTau& a);

// Both visible and each other's co-action.
bool complementary(const ActionTau& a, const ActionTau& b);

class NetProcess {
 public:
  enum class Kind : std::uint8_t { Leaf, Par };

  // Throws std::invalid_argument when p has free variables.
  static NetProcess leaf(Process p);
  static NetProcess par(NetProcess left, NetProcess right);

  Kind kind() const;
  const Process& process() const;  // pre: Leaf
  const NetProcess& left() const;  // pre: Par
  const NetProcess& right() const;

  bool operator==(const NetProcess& o) const;
  bool operator!=(const NetProcess& o) const { return !(*this == o); }

 private:
  struct Node;
  explicit NetProcess(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
  friend int compare(const NetProcess&, const NetProcess&);
};

int compare(const NetProcess& a, const NetProcess& b);
inline bool operator<(const NetProcess& a, const NetProcess& b) {
  return compare(a, b) < 0;
}

// Components split at depth-0 '|' (left associative, parentheses regroup)
// and parse as closed processes.
NetProcess parse_net(std::string_view text);

// Components joined by " | "; a composite right operand keeps its
// parentheses so the text reparses to the same tree.
std::string format_net(const NetProcess& n);

// All merge SOS steps of n, sorted by (label, target) and deduped.
std::vector<std::pair<Label, NetProcess>> net_transitions(const NetProcess& n);

// ── explicit net transition systems ─────────────────────────────────────

struct NetLts {
  LtsCore core;
  std::vector<NetProcess> states;  // states[i] is state i; BFS order
  std::vector<int> roots;

  int state_of(const NetProcess& n) const;  // -1 if n is not a state
};

NetLts build_net_lts(const NetProcess& n);
NetLts build_net_lts(const std::vector<NetProcess>& roots);

// Plain k-bisimilarity of two nets on their joint LTS.
bool net_bisimilar(const NetProcess& m, const NetProcess& n, Relation k);

// ── the expansion law ───────────────────────────────────────────────────

// One application of the expansion law to two star-headed closed processes
// with atom-prefixed summands (the head shape of strong normal forms).
// The loops merge, gaining tau when they hold complementary actions; the
// body pairs each component's step with the other side at rest, plus a tau
// summand per handshake.  Inner compositions appear as variables named by
// their net text.  Throws std::invalid_argument on a shape violation.
Process expand_pair(const Process& p, const Process& q);

// A merge-free process strongly bisimilar to n: leaves normalize and pairs
// expand recursively, memoized on the derivative nets.
Process eliminate_parallel(const NetProcess& n);

}  // namespace flatstar
