#pragma once
// Independent reference implementations used only to cross-check the library.
// These recompute results from the definitions with different algorithms and
// data structures than src/ uses; agreement is the point, sharing code is not.

#include <map>
#include <set>
#include <string>

#include "flatstar/equivalence.hpp"
#include "flatstar/semantics.hpp"
#include "flatstar/syntax.hpp"

namespace flatstar::oracle {

// One SOS step as (label display, formatted target).
using StepSet = std::set<std::pair<std::string, std::string>>;

// The step relation recomputed rule by rule over the concrete syntax.
inline StepSet steps(const Process& p) {
  StepSet out;
  switch (p.kind()) {
    case Process::Kind::Nil:
      break;
    case Process::Kind::Var:
      out.insert({"var:" + p.var_name(), p.var_name()});
      break;
    case Process::Kind::Prefix: {
      // s.P -a-> P for every summand a of s (duplicates collapse in the set)
      for (const ActionTau& a : init_actions(p.sum()))
        out.insert({a.name(), format_process(p.body())});
      break;
    }
    case Process::Kind::Plus: {
      for (auto& st : steps(p.left())) out.insert(st);
      for (auto& st : steps(p.right())) out.insert(st);
      break;
    }
    case Process::Kind::Star: {
      for (const ActionTau& a : init_actions(p.sum()))
        out.insert({a.name(), format_process(p)});
      for (auto& st : steps(p.body())) out.insert(st);
      break;
    }
  }
  return out;
}

// Reflexive-transitive tau reachability by Floyd–Warshall.
inline std::vector<std::vector<char>> tau_reach_fw(const LtsCore& l) {
  int n = l.num_states;
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    m[i][i] = 1;
    for (const auto& [lab, j] : l.out[i])
      if (lab.is_tau()) m[i][j] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (m[i][k])
        for (int j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = 1;
  return m;
}

// ── bisimulations by exhaustive relation search ─────────────────────────
//
// Every flavour's transfer condition is an instance of one shape: the
// responder v picks v1 (after a leading tau run, where the flavour allows
// one), performs the xi step (skippable when xi is tau and the position is
// not a root clause), and possibly appends a trailing tau run; branching
// and eta additionally relate the mover to v1.

inline bool answers_shape(const LtsCore& l,
                          const std::vector<std::vector<char>>& W,
                          const std::vector<std::vector<char>>& R, Relation k,
                          int u, const Label& xi, int up, int v, bool root) {
  bool lead = (k == Relation::delay || k == Relation::weak) ||
              (!root && (k == Relation::branching || k == Relation::eta));
  bool trail = (k == Relation::eta || k == Relation::weak);
  bool mid_rel = !root && (k == Relation::branching || k == Relation::eta);
  bool skip_ok = !root && xi.is_tau() && k != Relation::strong;
  int n = l.num_states;
  for (int v1 = 0; v1 < n; ++v1) {
    if (lead ? !W[v][v1] : v1 != v) continue;
    if (mid_rel && !R[u][v1]) continue;
    if (skip_ok) {
      if (trail) {
        for (int vp = 0; vp < n; ++vp)
          if (W[v1][vp] && R[up][vp]) return true;
      } else if (R[up][v1]) {
        return true;
      }
    }
    for (const auto& [l2, v2] : l.out[v1]) {
      if (!(l2 == xi)) continue;
      if (trail) {
        for (int vp = 0; vp < n; ++vp)
          if (W[v2][vp] && R[up][vp]) return true;
      } else if (R[up][v2]) {
        return true;
      }
    }
  }
  return false;
}

inline bool relation_is_bisim(const LtsCore& l,
                              const std::vector<std::vector<char>>& W,
                              const std::vector<std::vector<char>>& R,
                              Relation k) {
  for (int i = 0; i < l.num_states; ++i)
    for (int j = 0; j < l.num_states; ++j) {
      if (!R[i][j]) continue;
      for (const auto& [xi, ip] : l.out[i])
        if (!answers_shape(l, W, R, k, i, xi, ip, j, false)) return false;
    }
  return true;
}

// Union of all symmetric k-bisimulations, found by enumerating every
// symmetric relation on the state set (diagonal bits included).
inline std::vector<std::vector<char>> brute_union(const LtsCore& l,
                                                  Relation k) {
  int n = l.num_states;
  if (n > 5) throw std::invalid_argument("brute_union: too many states");
  auto W = tau_reach_fw(l);
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) slots.emplace_back(i, j);
  std::vector<std::vector<char>> best(n, std::vector<char>(n, 0));
  for (unsigned long mask = 0; mask < (1UL << slots.size()); ++mask) {
    std::vector<std::vector<char>> R(n, std::vector<char>(n, 0));
    for (std::size_t b = 0; b < slots.size(); ++b)
      if (mask >> b & 1)
        R[slots[b].first][slots[b].second] =
            R[slots[b].second][slots[b].first] = 1;
    if (!relation_is_bisim(l, W, R, k)) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (R[i][j]) best[i][j] = 1;
  }
  return best;
}

// Rooted congruence via the same enumeration: some symmetric k-bisimulation
// must answer every root move strictly, in both directions.
inline bool brute_congruent(const LtsCore& l, Relation k, int rp, int rq) {
  int n = l.num_states;
  if (n > 5) throw std::invalid_argument("brute_congruent: too many states");
  auto W = tau_reach_fw(l);
  if (k == Relation::strong) return brute_union(l, k)[rp][rq] != 0;
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) slots.emplace_back(i, j);
  for (unsigned long mask = 0; mask < (1UL << slots.size()); ++mask) {
    std::vector<std::vector<char>> R(n, std::vector<char>(n, 0));
    for (std::size_t b = 0; b < slots.size(); ++b)
      if (mask >> b & 1)
        R[slots[b].first][slots[b].second] =
            R[slots[b].second][slots[b].first] = 1;
    if (!relation_is_bisim(l, W, R, k)) continue;
    bool ok = true;
    for (const auto& [xi, ip] : l.out[rp])
      if (!answers_shape(l, W, R, k, rp, xi, ip, rq, true)) {
        ok = false;
        break;
      }
    if (ok)
      for (const auto& [xi, ip] : l.out[rq])
        if (!answers_shape(l, W, R, k, rq, xi, ip, rp, true)) {
          ok = false;
          break;
        }
    if (ok) return true;
  }
  return false;
}

// Potential prefix iteration, reformulated: it fails exactly when two weak
// visible edges with distinct actions lie on a common cycle, i.e. each edge's
// target reaches the other edge's source.
inline bool potential_prefix_pairs(const LtsCore& l) {
  int n = l.num_states;
  auto W = tau_reach_fw(l);
  struct E {
    int u, v;
    std::string a;
  };
  std::vector<E> edges;
  for (int u = 0; u < n; ++u)
    for (int u1 = 0; u1 < n; ++u1)
      if (W[u][u1])
        for (const auto& [lab, v] : l.out[u1])
          if (lab.kind() == Label::Kind::Visible)
            edges.push_back({u, v, lab.text()});
  // plain reachability over every label
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    reach[i][i] = 1;
    for (const auto& [lab, j] : l.out[i]) reach[i][j] = 1;
  }
  for (int k2 = 0; k2 < n; ++k2)
    for (int i = 0; i < n; ++i)
      if (reach[i][k2])
        for (int j = 0; j < n; ++j)
          if (reach[k2][j]) reach[i][j] = 1;
  for (const E& e1 : edges)
    for (const E& e2 : edges)
      if (e1.a != e2.a && reach[e1.v][e2.u] && reach[e2.v][e1.u]) return false;
  return true;
}

}  // namespace flatstar::oracle
