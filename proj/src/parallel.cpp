#include "flatstar/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flatstar/normalize.hpp"
#include "normalize_detail.hpp"

namespace flatstar {

// ── co-actions ──────────────────────────────────────────────────────────

ActionTau co_action(const ActionTau& a) {
  if (a.is_tau())
    throw std::invalid_argument("the silent action has no co-name");
  const std::string& n = a.name();
  return n[0] == '\'' ? ActionTau::visible(n.substr(1))
                      : ActionTau::visible("'" + n);
}

bool complementary(const ActionTau& a, const ActionTau& b) {
  return !a.is_tau() && !b.is_tau() && co_action(a) == b;
}

// ── nets ────────────────────────────────────────────────────────────────

struct NetProcess::Node {
  Kind kind = Kind::Leaf;
  Process leaf;
  std::vector<NetProcess> kid;  // Par: {left, right}
};

NetProcess NetProcess::leaf(Process p) {
  if (!is_closed(p))
    throw std::invalid_argument("net components must be closed");
  auto n = std::make_shared<Node>();
  n->leaf = std::move(p);
  return NetProcess(std::move(n));
}

NetProcess NetProcess::par(NetProcess left, NetProcess right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Par;
  n->kid.push_back(std::move(left));
  n->kid.push_back(std::move(right));
  return NetProcess(std::move(n));
}

NetProcess::Kind NetProcess::kind() const { return n_->kind; }

const Process& NetProcess::process() const {
  if (n_->kind != Kind::Leaf) throw std::logic_error("NetProcess::process");
  return n_->leaf;
}

const NetProcess& NetProcess::left() const {
  if (n_->kind != Kind::Par) throw std::logic_error("NetProcess::left");
  return n_->kid[0];
}

const NetProcess& NetProcess::right() const {
  if (n_->kind != Kind::Par) throw std::logic_error("NetProcess::right");
  return n_->kid[1];
}

int compare(const NetProcess& a, const NetProcess& b) {
  if (a.n_ == b.n_) return 0;
  if (a.n_->kind != b.n_->kind)
    return a.n_->kind == NetProcess::Kind::Leaf ? -1 : 1;
  if (a.n_->kind == NetProcess::Kind::Leaf)
    return compare(a.n_->leaf, b.n_->leaf);
  if (int c = compare(a.n_->kid[0], b.n_->kid[0])) return c;
  return compare(a.n_->kid[1], b.n_->kid[1]);
}

bool NetProcess::operator==(const NetProcess& o) const {
  return compare(*this, o) == 0;
}

// ── concrete syntax ─────────────────────────────────────────────────────

namespace {

NetProcess parse_net_view(std::string_view text, std::size_t base) {
  // split at depth-0 '|'; imbalances surface in the component parses
  std::vector<std::pair<std::size_t, std::size_t>> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '|' && depth == 0) {
      parts.emplace_back(start, i);
      start = i + 1;
    }
  }
  parts.emplace_back(start, text.size());
  if (parts.size() > 1) {
    auto piece = [&](std::size_t i) {
      return parse_net_view(text.substr(parts[i].first,
                                        parts[i].second - parts[i].first),
                            base + parts[i].first);
    };
    NetProcess n = piece(0);
    for (std::size_t i = 1; i < parts.size(); ++i)
      n = NetProcess::par(std::move(n), piece(i));
    return n;
  }

  std::size_t b = 0, e = text.size();
  auto space = [&](std::size_t i) {
    return std::isspace(static_cast<unsigned char>(text[i]));
  };
  while (b < e && space(b)) ++b;
  while (e > b && space(e - 1)) --e;
  if (b == e) throw ParseError("empty parallel component", base + b);
  if (text[b] == '(') {
    // a full wrap regroups; anything else is part of a component term
    int d = 0;
    std::size_t close = b;
    for (std::size_t i = b; i < e; ++i) {
      if (text[i] == '(') ++d;
      if (text[i] == ')' && --d == 0) {
        close = i;
        break;
      }
    }
    if (d == 0 && close == e - 1)
      return parse_net_view(text.substr(b + 1, close - b - 1), base + b + 1);
  }
  Process p = parse_process(text.substr(b, e - b));
  if (!is_closed(p))
    throw ParseError("parallel components must be closed", base + b);
  return NetProcess::leaf(std::move(p));
}

void print_net(const NetProcess& n, std::string& out) {
  if (n.kind() == NetProcess::Kind::Leaf) {
    out += format_process(n.process());
    return;
  }
  print_net(n.left(), out);
  out += " | ";
  const NetProcess& r = n.right();
  if (r.kind() == NetProcess::Kind::Par) {
    out += '(';
    print_net(r, out);
    out += ')';
  } else {
    print_net(r, out);
  }
}

}  // namespace

NetProcess parse_net(std::string_view text) {
  return parse_net_view(text, 0);
}

std::string format_net(const NetProcess& n) {
  std::string out;
  print_net(n, out);
  return out;
}

// ── merge semantics ─────────────────────────────────────────────────────

std::vector<std::pair<Label, NetProcess>> net_transitions(const NetProcess& n) {
  std::vector<std::pair<Label, NetProcess>> out;
  if (n.kind() == NetProcess::Kind::Leaf) {
    for (const auto& [a, d] : action_transitions(n.process()))
      out.emplace_back(Label::from_action(a), NetProcess::leaf(d));
  } else {
    auto ls = net_transitions(n.left());
    auto rs = net_transitions(n.right());
    for (const auto& [l, d] : ls)
      out.emplace_back(l, NetProcess::par(d, n.right()));
    for (const auto& [l, e] : rs)
      out.emplace_back(l, NetProcess::par(n.left(), e));
    for (const auto& [l, d] : ls)
      for (const auto& [m, e] : rs)
        if (l.is_action() && m.is_action() &&
            complementary(l.action(), m.action()))
          out.emplace_back(Label::tau(), NetProcess::par(d, e));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int NetLts::state_of(const NetProcess& n) const {
  for (int i = 0; i < int(states.size()); ++i)
    if (states[i] == n) return i;
  return -1;
}

NetLts build_net_lts(const NetProcess& n) {
  return build_net_lts(std::vector<NetProcess>{n});
}

NetLts build_net_lts(const std::vector<NetProcess>& roots) {
  NetLts lts;
  std::map<NetProcess, int> index;
  auto intern = [&](const NetProcess& q) {
    auto [it, fresh] = index.emplace(q, int(lts.states.size()));
    if (fresh) lts.states.push_back(q);
    return it->second;
  };
  for (const NetProcess& r : roots) lts.roots.push_back(intern(r));
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    // states grows during the loop; the copy keeps the reference stable
    NetProcess cur = lts.states[i];
    lts.core.out.resize(lts.states.size());
    auto& row = lts.core.out[i];
    for (const auto& [l, q] : net_transitions(cur)) row.emplace_back(l, intern(q));
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  lts.core.out.resize(lts.states.size());
  lts.core.num_states = int(lts.states.size());
  return lts;
}

bool net_bisimilar(const NetProcess& m, const NetProcess& n, Relation k) {
  NetLts l = build_net_lts({m, n});
  auto rel = bisimulation(l.core, k);
  return rel[static_cast<size_t>(l.roots[0])]
            [static_cast<size_t>(l.roots[1])] != 0;
}

// ── the expansion law ───────────────────────────────────────────────────

namespace {

// s* Σ α_i.P_i pulled apart; order of arms follows the summand walk.
struct HeadShape {
  std::set<ActionTau> loop;
  std::vector<std::pair<ActionTau, Process>> arms;
};

HeadShape head_shape(const Process& p) {
  if (p.kind() != Process::Kind::Star || !is_closed(p))
    throw std::invalid_argument(
        "expand_pair: expected a closed star-headed term");
  HeadShape h;
  h.loop = init_actions(p.sum());
  for (const SortedTerm& t : summands(SortedTerm(p.body()))) {
    const Process& s = t.process();
    if (s.kind() == Process::Kind::Nil) continue;
    if (s.kind() != Process::Kind::Prefix ||
        s.sum().kind() != SumForm::Kind::Act)
      throw std::invalid_argument("expand_pair: summands must be atom-prefixed");
    h.arms.emplace_back(s.sum().action(), s.body());
  }
  return h;
}

Process mark(const Process& l, const Process& r,
             std::map<std::string, NetProcess>* pairs) {
  NetProcess n = NetProcess::par(NetProcess::leaf(l), NetProcess::leaf(r));
  std::string name = format_net(n);
  if (pairs) pairs->emplace(name, std::move(n));
  return Process::var(std::move(name));
}

Process expand_core(const Process& p, const Process& q,
                    std::map<std::string, NetProcess>* pairs) {
  HeadShape hp = head_shape(p), hq = head_shape(q);
  std::set<ActionTau> loop = hp.loop;
  loop.insert(hq.loop.begin(), hq.loop.end());
  for (const ActionTau& a : hp.loop)
    if (!a.is_tau() && hq.loop.count(co_action(a))) {
      loop.insert(ActionTau::tau());
      break;
    }
  const SumForm tau = SumForm::act(ActionTau::tau());
  std::vector<Process> body;
  for (const auto& [a, d] : hp.arms)
    body.push_back(Process::prefix(SumForm::act(a), mark(d, q, pairs)));
  for (const auto& [b, e] : hq.arms)
    body.push_back(Process::prefix(SumForm::act(b), mark(p, e, pairs)));
  for (const auto& [a, d] : hp.arms)
    for (const auto& [b, e] : hq.arms)
      if (complementary(a, b))
        body.push_back(Process::prefix(tau, mark(d, e, pairs)));
  for (const auto& [a, d] : hp.arms)
    if (!a.is_tau() && hq.loop.count(co_action(a)))
      body.push_back(Process::prefix(tau, mark(d, q, pairs)));
  for (const auto& [b, e] : hq.arms)
    if (!b.is_tau() && hp.loop.count(co_action(b)))
      body.push_back(Process::prefix(tau, mark(p, e, pairs)));
  return Process::star(detail::canon_sf_tree(loop),
                       detail::canon_tree(std::move(body)));
}

// Leaves normalize; pairs expand over normalized sides.  Every inner pair
// joins proper subterms of the outer normal forms, so the combined size
// shrinks and the recursion bottoms out.
Process eliminate(const NetProcess& n, std::map<NetProcess, Process>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Process out;
  if (n.kind() == NetProcess::Kind::Leaf) {
    out = to_normal_form(n.process(), NfMode::strong).first;
  } else {
    Process l = eliminate(n.left(), memo);
    Process r = eliminate(n.right(), memo);
    std::map<std::string, NetProcess> pairs;
    Process e = expand_core(l, r, &pairs);
    Substitution sub;
    for (const auto& [name, net] : pairs)
      sub.emplace(name, eliminate(net, memo));
    out = substitute(e, sub);
  }
  memo.emplace(n, out);
  return out;
}

}  // namespace

Process expand_pair(const Process& p, const Process& q) {
  return expand_core(p, q, nullptr);
}

Process eliminate_parallel(const NetProcess& n) {
  std::map<NetProcess, Process> memo;
  return eliminate(n, memo);
}

}  // namespace flatstar
