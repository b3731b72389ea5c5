#include "flatstar/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace flatstar {

std::string relation_name(Relation k) {
  return kRelationNames[static_cast<int>(k)];
}

std::optional<Relation> relation_from_name(std::string_view name) {
  for (int i = 0; i < 5; ++i)
    if (name == kRelationNames[i]) return static_cast<Relation>(i);
  return std::nullopt;
}

namespace {

// Can j answer the move i -xi-> ip under the flavour's transfer clause,
// with targets (and intermediate states, where required) related by R?
bool answered(const LtsCore& l, const std::vector<std::vector<int>>& reach,
              const std::vector<std::vector<char>>& R, Relation k, int i,
              const Label& xi, int ip, int j) {
  switch (k) {
    case Relation::strong:
      for (const auto& [l2, jp] : l.out[j])
        if (l2 == xi && R[ip][jp]) return true;
      return false;
    case Relation::weak:
      if (xi.is_tau()) {
        for (int jp : reach[j])
          if (R[ip][jp]) return true;
        return false;
      }
      for (int j1 : reach[j])
        for (const auto& [l2, j2] : l.out[j1])
          if (l2 == xi)
            for (int jp : reach[j2])
              if (R[ip][jp]) return true;
      return false;
    case Relation::delay:
      if (xi.is_tau()) {
        for (int jp : reach[j])
          if (R[ip][jp]) return true;
        return false;
      }
      for (int j1 : reach[j])
        for (const auto& [l2, jp] : l.out[j1])
          if (l2 == xi && R[ip][jp]) return true;
      return false;
    case Relation::eta:
      for (int j1 : reach[j]) {
        if (!R[i][j1]) continue;
        if (xi.is_tau()) {
          for (int jp : reach[j1])
            if (R[ip][jp]) return true;
        } else {
          for (const auto& [l2, j2] : l.out[j1])
            if (l2 == xi)
              for (int jp : reach[j2])
                if (R[ip][jp]) return true;
        }
      }
      return false;
    case Relation::branching:
      for (int j1 : reach[j]) {
        if (!R[i][j1]) continue;
        if (xi.is_tau()) {
          if (R[ip][j1]) return true;  // answered by standing still
          for (const auto& [l2, jp] : l.out[j1])
            if (l2.is_tau() && R[ip][jp]) return true;
        } else {
          for (const auto& [l2, jp] : l.out[j1])
            if (l2 == xi && R[ip][jp]) return true;
        }
      }
      return false;
  }
  return false;
}

// Strict root answer: the xi step may not be skipped even when xi is tau.
bool root_answered(const LtsCore& l, const std::vector<std::vector<int>>& reach,
                   const std::vector<std::vector<char>>& R, Relation k,
                   const Label& xi, int ip, int rq) {
  switch (k) {
    case Relation::strong:
    case Relation::branching:
      for (const auto& [l2, qp] : l.out[rq])
        if (l2 == xi && R[ip][qp]) return true;
      return false;
    case Relation::eta:
      for (const auto& [l2, q1] : l.out[rq])
        if (l2 == xi)
          for (int qp : reach[q1])
            if (R[ip][qp]) return true;
      return false;
    case Relation::delay:
      for (int q1 : reach[rq])
        for (const auto& [l2, qp] : l.out[q1])
          if (l2 == xi && R[ip][qp]) return true;
      return false;
    case Relation::weak:
      for (int q1 : reach[rq])
        for (const auto& [l2, q2] : l.out[q1])
          if (l2 == xi)
            for (int qp : reach[q2])
              if (R[ip][qp]) return true;
      return false;
  }
  return false;
}

}  // namespace

std::vector<std::vector<char>> bisimulation(const LtsCore& l, Relation k) {
  int n = l.num_states;
  auto reach = tau_reach(l);
  std::vector<std::vector<char>> R(n, std::vector<char>(n, 1));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (!R[i][j]) continue;
        bool ok = true;
        for (const auto& [xi, ip] : l.out[i])
          if (!answered(l, reach, R, k, i, xi, ip, j)) {
            ok = false;
            break;
          }
        if (ok)
          for (const auto& [xi, jp] : l.out[j])
            if (!answered(l, reach, R, k, j, xi, jp, i)) {
              ok = false;
              break;
            }
        if (!ok) {
          R[i][j] = R[j][i] = 0;
          changed = true;
        }
      }
  }
  return R;
}

bool bisimilar(const Process& p, const Process& q, Relation k) {
  Lts l = build_lts({p, q});
  auto R = bisimulation(l.core, k);
  return R[l.roots[0]][l.roots[1]] != 0;
}

CongruenceResult congruent_ex(const Process& p, const Process& q, Relation k) {
  Lts l = build_lts({p, q});
  auto reach = tau_reach(l.core);
  auto R = bisimulation(l.core, k);
  int rp = l.roots[0], rq = l.roots[1];

  auto scan = [&](int from, int to, const char* side) -> std::string {
    for (const auto& [xi, ip] : l.core.out[from])
      if (!root_answered(l.core, reach, R, k, xi, ip, to))
        return std::string(side) + " root step " + xi.display() + " -> " +
               format_process(l.states[ip]) + " has no strict " +
               relation_name(k) + " answer";
    return "";
  };
  std::string w = scan(rp, rq, "left");
  if (w.empty()) w = scan(rq, rp, "right");
  if (k == Relation::strong && R[rp][rq]) return {true, ""};
  if (k == Relation::strong && w.empty())
    return {false, "the roots are not strongly bisimilar"};
  if (!w.empty()) return {false, w};
  return {true, ""};
}

bool congruent(const Process& p, const Process& q, Relation k) {
  return congruent_ex(p, q, k).related;
}

// ── saturation predicates ───────────────────────────────────────────────

static void require_weak_flavour(Relation k, const char* who) {
  if (k != Relation::eta && k != Relation::delay && k != Relation::weak)
    throw std::invalid_argument(std::string(who) +
                                ": flavour must be eta, delay or weak");
}

bool is_saturated(const Process& p, Relation k) {
  require_weak_flavour(k, "is_saturated");
  bool want_eta = k == Relation::eta || k == Relation::weak;
  bool want_delay = k == Relation::delay || k == Relation::weak;
  Lts l = build_lts(p);
  for (int u = 0; u < l.core.num_states; ++u)
    for (const auto& [l1, v] : l.core.out[u])
      for (const auto& [l2, w] : l.core.out[v]) {
        if (want_eta && l2.is_tau() && !l.core.has_edge(u, l1, w))
          return false;
        if (want_delay && l1.is_tau() && !l.core.has_edge(u, l2, w))
          return false;
      }
  return true;
}

bool is_strongly_saturated(const Process& p, Relation k) {
  require_weak_flavour(k, "is_strongly_saturated");
  if (!is_saturated(p, k)) return false;
  Lts l = build_lts(p);
  int n = l.core.num_states;
  // action-reachable states, starting from the root
  std::vector<char> reached(n, 0);
  reached[l.roots[0]] = 1;
  std::vector<int> work{l.roots[0]};
  std::vector<char> proper(n, 0);  // targets of action steps from reached states
  while (!work.empty()) {
    int u = work.back();
    work.pop_back();
    for (const auto& [lab, v] : l.core.out[u]) {
      if (!lab.is_action()) continue;
      proper[v] = 1;
      if (!reached[v]) {
        reached[v] = 1;
        work.push_back(v);
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    if (!proper[u] || l.states[u].kind() == Process::Kind::Var) continue;
    if (!l.core.has_edge(u, Label::tau(), u)) return false;
  }
  return true;
}

// ── potential prefix iteration ──────────────────────────────────────────

bool is_potential_prefix(const LtsCore& l) {
  int n = l.num_states;
  auto reach = tau_reach(l);
  // weak visible edges (u, a, v): u ==> u' -a-> v
  std::vector<std::vector<std::pair<std::string, int>>> edges(n);
  for (int u = 0; u < n; ++u)
    for (int u1 : reach[u])
      for (const auto& [lab, v] : l.out[u1])
        if (lab.kind() == Label::Kind::Visible)
          edges[u].emplace_back(lab.text(), v);

  // Tarjan over the weak-edge graph
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;
  std::function<void(int)> dfs = [&](int u) {
    index[u] = low[u] = next_index++;
    stack.push_back(u);
    on_stack[u] = 1;
    for (const auto& [a, v] : edges[u]) {
      if (index[v] == -1) {
        dfs(v);
        low[u] = std::min(low[u], low[v]);
      } else if (on_stack[v]) {
        low[u] = std::min(low[u], index[v]);
      }
    }
    if (low[u] == index[u]) {
      while (true) {
        int v = stack.back();
        stack.pop_back();
        on_stack[v] = 0;
        comp[v] = next_comp;
        if (v == u) break;
      }
      ++next_comp;
    }
  };
  for (int u = 0; u < n; ++u)
    if (index[u] == -1) dfs(u);

  std::vector<std::string> seen(next_comp);  // one intra label per component
  for (int u = 0; u < n; ++u)
    for (const auto& [a, v] : edges[u]) {
      if (comp[u] != comp[v]) continue;
      if (seen[comp[u]].empty())
        seen[comp[u]] = a;
      else if (seen[comp[u]] != a)
        return false;
    }
  return true;
}

bool is_potential_prefix(const Process& p) {
  return is_potential_prefix(build_lts(p).core);
}

}  // namespace flatstar
