#include "flatstar/semantics.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace flatstar {

namespace {

void collect_steps(const Process& p,
                   std::vector<std::pair<Label, Process>>& out) {
  switch (p.kind()) {
    case Process::Kind::Nil:
      return;
    case Process::Kind::Var:
      out.emplace_back(Label::variable(p.var_name()), p);
      return;
    case Process::Kind::Prefix:
      for (const ActionTau& a : init_actions(p.sum()))
        out.emplace_back(Label::from_action(a), p.body());
      return;
    case Process::Kind::Plus:
      collect_steps(p.left(), out);
      collect_steps(p.right(), out);
      return;
    case Process::Kind::Star:
      for (const ActionTau& a : init_actions(p.sum()))
        out.emplace_back(Label::from_action(a), p);
      collect_steps(p.body(), out);
      return;
  }
}

bool step_less(const std::pair<Label, Process>& a,
               const std::pair<Label, Process>& b) {
  if (a.first != b.first) return a.first < b.first;
  return compare(a.second, b.second) < 0;
}

}  // namespace

std::vector<std::pair<Label, Process>> transitions(const Process& p) {
  std::vector<std::pair<Label, Process>> out;
  collect_steps(p, out);
  std::sort(out.begin(), out.end(), step_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<ActionTau, Process>> action_transitions(
    const Process& p) {
  std::vector<std::pair<ActionTau, Process>> out;
  for (const auto& [l, q] : transitions(p))
    if (l.is_action()) out.emplace_back(l.action(), q);
  return out;
}

std::set<Label> initial_labels(const Process& p) {
  std::set<Label> out;
  for (const auto& [l, q] : transitions(p)) out.insert(l);
  return out;
}

std::vector<Process> derivatives(const Process& p) {
  std::vector<Process> order{p};
  std::unordered_map<Process, int, ProcessHash> seen{{p, 0}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    Process cur = order[i];
    for (const auto& [a, q] : action_transitions(cur)) {
      (void)a;
      if (seen.emplace(q, int(order.size())).second) order.push_back(q);
    }
  }
  return order;
}

bool LtsCore::has_edge(int s, const Label& l, int t) const {
  const auto& row = out[s];
  return std::binary_search(row.begin(), row.end(), std::make_pair(l, t));
}

int Lts::state_of(const Process& p) const {
  for (int i = 0; i < int(states.size()); ++i)
    if (states[i] == p) return i;
  return -1;
}

Lts build_lts(const Process& p) { return build_lts(std::vector<Process>{p}); }

Lts build_lts(const std::vector<Process>& roots) {
  Lts lts;
  std::unordered_map<Process, int, ProcessHash> index;
  auto intern = [&](const Process& q) {
    auto [it, fresh] = index.emplace(q, int(lts.states.size()));
    if (fresh) lts.states.push_back(q);
    return it->second;
  };
  for (const Process& r : roots) lts.roots.push_back(intern(r));
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    // states grows during the loop; the copy keeps the reference stable
    Process cur = lts.states[i];
    lts.core.out.resize(lts.states.size());
    auto& row = lts.core.out[i];
    for (const auto& [l, q] : transitions(cur)) row.emplace_back(l, intern(q));
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  lts.core.out.resize(lts.states.size());
  lts.core.num_states = int(lts.states.size());
  return lts;
}

std::vector<std::vector<int>> tau_reach(const LtsCore& l) {
  std::vector<std::vector<int>> reach(l.num_states);
  for (int s = 0; s < l.num_states; ++s) {
    std::vector<char> seen(l.num_states, 0);
    std::deque<int> work{s};
    seen[s] = 1;
    while (!work.empty()) {
      int u = work.front();
      work.pop_front();
      for (const auto& [lab, v] : l.out[u])
        if (lab.is_tau() && !seen[v]) {
          seen[v] = 1;
          work.push_back(v);
        }
    }
    for (int v = 0; v < l.num_states; ++v)
      if (seen[v]) reach[s].push_back(v);
  }
  return reach;
}

std::string to_aut(const Lts& l) {
  std::size_t ntrans = 0;
  for (const auto& row : l.core.out) ntrans += row.size();
  std::string out = "des (" + std::to_string(l.roots.empty() ? 0 : l.roots[0]) +
                    "," + std::to_string(ntrans) + "," +
                    std::to_string(l.core.num_states) + ")\n";
  for (int s = 0; s < l.core.num_states; ++s)
    for (const auto& [lab, t] : l.core.out[s])
      out += "(" + std::to_string(s) + ",\"" + lab.display() + "\"," +
             std::to_string(t) + ")\n";
  return out;
}

}  // namespace flatstar
