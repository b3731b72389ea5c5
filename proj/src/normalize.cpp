#include "flatstar/normalize.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "normalize_detail.hpp"

namespace flatstar {
namespace detail {

namespace {

const char* kNotPotential = "not a potential prefix-iteration expression";

SumForm tau_sf() { return SumForm::act(ActionTau::tau()); }

std::set<ActionTau> atoms(const SumForm& s) { return init_actions(s); }

}  // namespace

Process canon_tree(std::vector<Process> v) {
  std::erase_if(v, [](const Process& p) { return p.kind() == Process::Kind::Nil; });
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.empty()) return Process::nil();
  Process out = v.back();
  for (int i = static_cast<int>(v.size()) - 2; i >= 0; --i)
    out = Process::plus(v[static_cast<size_t>(i)], out);
  return out;
}

SumForm canon_sf_tree(const std::set<ActionTau>& actions) {
  // std::set orders by operator<, which puts tau last — same as canon_sum.
  std::vector<ActionTau> v(actions.begin(), actions.end());
  if (v.empty()) return SumForm::zero();
  SumForm out = SumForm::act(v.back());
  for (int i = static_cast<int>(v.size()) - 2; i >= 0; --i)
    out = SumForm::plus(SumForm::act(v[static_cast<size_t>(i)]), out);
  return out;
}

BodyView body_view(const Process& body) {
  BodyView out;
  for (const SortedTerm& t : summands(SortedTerm(body))) {
    const Process& s = t.process();
    switch (s.kind()) {
      case Process::Kind::Var:
        out.vars.push_back(s.var_name());
        break;
      case Process::Kind::Nil:
        break;
      case Process::Kind::Prefix:
        if (s.sum().kind() == SumForm::Kind::Act) {
          out.pairs.emplace_back(s.sum().action(), s.body());
          break;
        }
        [[fallthrough]];
      default:
        throw std::logic_error("body_view: summand is not atom-prefixed");
    }
  }
  return out;
}

Path comb_pos(int i, int n) {
  Path p(static_cast<size_t>(i), 1);
  if (i < n - 1) p.push_back(0);
  return p;
}

void split_prefix(Rewriter& rw, const Path& at) {
  SortedTerm t = *subterm_at(rw.current(), at);
  const Process& pr = t.process();
  if (pr.kind() != Process::Kind::Prefix)
    throw std::logic_error("split_prefix: not a prefix");
  if (pr.sum().kind() == SumForm::Kind::Zero) {
    rw.rewrite(Axiom::A6, true, at);
    return;
  }
  if (pr.sum().kind() == SumForm::Kind::Plus) {
    rw.rewrite(Axiom::A5, true, at);
    Path l = at, r = at;
    l.push_back(0);
    r.push_back(1);
    split_prefix(rw, l);
    split_prefix(rw, r);
  }
}

std::pair<int, Process> unfold_eq(ProofBuilder& b, Process star) {
  if (star.kind() != Process::Kind::Star)
    throw std::logic_error("unfold_eq: not a star");
  Rewriter rw(b, SortedTerm(star));
  if (star.sum().kind() == SumForm::Kind::Zero) {
    rw.rewrite(Axiom::FA1, true, {});
  } else {
    rw.apply(b.sym(derive_bks1(b, star.sum(), star.body())), {});
    split_prefix(rw, {0});
    canon_sum(rw, {});
  }
  return {rw.id(), rw.current().process()};
}

namespace {

bool canonical_sumform(const SumForm& s) {
  return s == canon_sf_tree(atoms(s));
}

// Summand-body replacements for the right comb currently at `base`.  The
// callback receives (index, count, summand) and returns a step id whose
// left side is the summand, or -1 to leave it.
template <typename F>
void map_summands(Rewriter& rw, const Path& base, F&& f) {
  SortedTerm body = *subterm_at(rw.current(), base);
  std::vector<Process> sums;
  for (const SortedTerm& t : summands(body)) sums.push_back(t.process());
  int n = static_cast<int>(sums.size());
  for (int i = 0; i < n; ++i) {
    int id = f(sums[static_cast<size_t>(i)]);
    if (id < 0) continue;
    Path at = base;
    for (int x : comb_pos(i, n)) at.push_back(x);
    rw.apply(id, at);
  }
}

}  // namespace

int nf_step(NfCtx& c, const Process& p) {
  if (auto it = c.memo.find(p); it != c.memo.end()) return it->second;
  ProofBuilder& b = c.b;
  int out = -1;
  switch (p.kind()) {
    case Process::Kind::Var:
    case Process::Kind::Nil: {
      Rewriter rw(b, SortedTerm(p));
      rw.rewrite(Axiom::FA1, false, {});
      out = rw.id();
      break;
    }
    case Process::Kind::Prefix: {
      int nid = nf_step(c, p.body());
      Rewriter rw(b, SortedTerm(p));
      rw.apply(nid, {1});
      split_prefix(rw, {});
      canon_sum(rw, {});
      rw.rewrite(Axiom::FA1, false, {});
      out = rw.id();
      break;
    }
    case Process::Kind::Plus: {
      int lid = nf_step(c, p.left());
      int rid = nf_step(c, p.right());
      Rewriter rw(b, SortedTerm(p));
      rw.apply(lid, {0});
      rw.apply(rid, {1});
      rw.apply(unfold_eq(b, b.rhs(lid).process()).first, {0});
      rw.apply(unfold_eq(b, b.rhs(rid).process()).first, {1});
      canon_sum(rw, {});
      rw.rewrite(Axiom::FA1, false, {});
      out = rw.id();
      break;
    }
    case Process::Kind::Star: {
      int nid = nf_step(c, p.body());
      Rewriter rw(b, SortedTerm(p));
      rw.apply(nid, {1});
      rw.apply(unfold_eq(b, b.rhs(nid).process()).first, {1});
      canon_sum(rw, {1});
      canon_sum(rw, {0});
      SumForm loop = rw.current().process().sum();
      if (c.mode == NfMode::branching && atoms(loop).count(ActionTau::tau())) {
        std::set<ActionTau> rest = atoms(loop);
        rest.erase(ActionTau::tau());
        SumForm visible = canon_sf_tree(rest);
        SortedTerm target(SumForm::plus(visible, tau_sf()));
        auto sid = prove_sum_eq(b, SortedTerm(loop), target);
        if (!sid) throw std::logic_error("nf_step: loop rearrangement failed");
        rw.apply(*sid, {0});
        rw.rewrite(Axiom::FT1, true, {});
        rw.apply(unfold_eq(b, rw.current().process().right()).first, {1});
        canon_sum(rw, {});
        rw.rewrite(Axiom::FA1, false, {});
      }
      out = rw.id();
      break;
    }
  }
  c.memo.emplace(p, out);
  return out;
}

int root_unfold(ProofBuilder& b, int nf_id) {
  Process n = b.rhs(nf_id).process();
  auto [uid, u] = unfold_eq(b, n);
  int flat = b.trans(nf_id, uid);
  Rewriter rw(b, SortedTerm(u));
  rw.rewrite(Axiom::FA1, false, {});
  return b.trans(flat, rw.id());
}

namespace {

// One-step behaviour of a normal-form star: loop atoms point back at the
// star itself, then the body's own summands.
BodyView one_step(const Process& star) {
  BodyView v = body_view(star.body());
  for (const ActionTau& a : atoms(star.sum())) v.pairs.emplace_back(a, star);
  return v;
}

int memo_unfold(SatCtx& c, const Process& star) {
  if (auto it = c.unfolds.find(star); it != c.unfolds.end()) return it->second;
  int id = unfold_eq(c.b, star).first;
  c.unfolds.emplace(star, id);
  return id;
}

// id: l.d = l.d + l.e, for a body summand tau.e of d.
int eta_step_eq(SatCtx& c, const ActionTau& l, const Process& d,
                const Process& e) {
  ProofBuilder& b = c.b;
  Rewriter rw(b, SortedTerm(Process::prefix(SumForm::act(l), d)));
  int uid = memo_unfold(c, d);
  rw.apply(uid, {1});
  Process u = b.rhs(uid).process();
  std::vector<Process> rest;
  Process taue = Process::prefix(tau_sf(), e);
  bool dropped = false;
  for (const SortedTerm& t : summands(SortedTerm(u))) {
    if (!dropped && t.process() == taue) {
      dropped = true;
      continue;
    }
    rest.push_back(t.process());
  }
  if (!dropped) throw std::logic_error("eta_step_eq: tau summand missing");
  SortedTerm shaped(Process::plus(canon_tree(rest), taue));
  auto pid = prove_sum_eq(b, SortedTerm(u), shaped);
  if (!pid) throw std::logic_error("eta_step_eq: rearrangement failed");
  rw.apply(*pid, {1});
  rw.rewrite(Axiom::T3, true, {});
  rw.apply(b.sym(*pid), {0, 1});
  rw.apply(b.sym(uid), {0, 1});
  return rw.id();
}

// Position of the summand equal to `s` in the canonical body at {1}.
Path find_summand(const Rewriter& rw, const Process& s) {
  SortedTerm body = *subterm_at(rw.current(), {1});
  std::vector<SortedTerm> v = summands(body);
  int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i)
    if (v[static_cast<size_t>(i)] == SortedTerm(s)) {
      Path at{1};
      for (int x : comb_pos(i, n)) at.push_back(x);
      return at;
    }
  throw std::logic_error("find_summand: summand not present");
}

}  // namespace

int saturate_star(SatCtx& c, Process star) {
  if (auto it = c.memo.find(star); it != c.memo.end()) return it->second;
  ProofBuilder& b = c.b;
  const bool want_delay = c.k == Relation::delay || c.k == Relation::weak;
  const bool want_eta = c.k == Relation::eta || c.k == Relation::weak;
  Rewriter rw(b, SortedTerm(star));

  map_summands(rw, {1}, [&](const Process& s) {
    if (s.kind() != Process::Kind::Prefix) return -1;
    int sid = saturate_star(c, s.body());
    if (b.rhs(sid).process() == s.body()) return -1;
    return b.ctx(sid, SortedTerm(s), {1});
  });
  canon_sum(rw, {1});

  std::set<ActionTau> loop = atoms(star.sum());
  for (bool grew = true; grew;) {
    grew = false;
    BodyView bv = body_view(rw.current().process().body());
    std::set<std::pair<ActionTau, Process>> have(bv.pairs.begin(),
                                                 bv.pairs.end());
    std::set<std::string> have_vars(bv.vars.begin(), bv.vars.end());

    auto absorbed = [&](const Process& d) {
      BodyView u = one_step(d);
      for (const auto& pr : u.pairs)
        if (!have.count(pr)) return false;
      for (const std::string& x : u.vars)
        if (!have_vars.count(x)) return false;
      return true;
    };

    if (want_delay) {
      for (const auto& [a, d] : bv.pairs) {
        if (!a.is_tau() || absorbed(d)) continue;
        Path at = find_summand(rw, Process::prefix(tau_sf(), d));
        rw.apply(derive_t2(b, d), at);
        at.push_back(1);
        rw.apply(memo_unfold(c, d), at);
        canon_sum(rw, {1});
        grew = true;
        break;
      }
      if (grew) continue;
    }
    if (want_eta && !loop.empty()) {
      // the loop can stutter past a tau summand: give it direct summands
      for (const auto& [a, d] : bv.pairs) {
        if (!a.is_tau()) continue;
        bool all = true;
        for (const ActionTau& la : loop)
          if (!have.count({la, d})) all = false;
        if (all) continue;
        Process taud = Process::prefix(tau_sf(), d);
        std::vector<Process> rest;
        bool dropped = false;
        for (const auto& [pa, pd] : bv.pairs) {
          Process s = Process::prefix(SumForm::act(pa), pd);
          if (!dropped && s == taud) {
            dropped = true;
            continue;
          }
          rest.push_back(s);
        }
        for (const std::string& x : bv.vars) rest.push_back(Process::var(x));
        SortedTerm shaped(Process::plus(canon_tree(rest), taud));
        auto pid = prove_sum_eq(b, *subterm_at(rw.current(), {1}), shaped);
        if (!pid) throw std::logic_error("saturate: body rearrangement failed");
        rw.apply(*pid, {1});
        rw.rewrite(Axiom::FT3, true, {});
        split_prefix(rw, {1, 1});
        canon_sum(rw, {1});
        grew = true;
        break;
      }
      if (grew) continue;
    }
    if (want_eta) {
      // a summand's target can end with a tau step: take the shortcut too
      for (const auto& [a, d] : bv.pairs) {
        for (const auto& [ta, e] : body_view(d.body()).pairs) {
          if (!ta.is_tau() || have.count({a, e})) continue;
          Path at = find_summand(rw, Process::prefix(SumForm::act(a), d));
          rw.apply(eta_step_eq(c, a, d, e), at);
          canon_sum(rw, {1});
          grew = true;
          break;
        }
        if (grew) break;
      }
    }
  }
  int out = rw.id();
  c.memo.emplace(star, out);
  return out;
}

int loop_prefix(LoopCtx& c, const ActionTau& alpha, const Process& d) {
  auto key = std::make_pair(alpha, d);
  if (auto it = c.memo.find(key); it != c.memo.end()) return it->second;
  ProofBuilder& b = c.b;
  Rewriter rw(b, SortedTerm(Process::prefix(SumForm::act(alpha), d)));
  map_summands(rw, {1, 1}, [&](const Process& s) {
    if (s.kind() != Process::Kind::Prefix) return -1;
    return loop_prefix(c, s.sum().action(), s.body());
  });
  canon_sum(rw, {1, 1});
  Process cur = rw.current().process().body();
  if (!atoms(cur.sum()).count(ActionTau::tau())) {
    rw.apply(b.sym(derive_alpha_tau_star(b, alpha, cur.sum(), cur.body())),
             {});
    canon_sum(rw, {1, 0});
  }
  int out = rw.id();
  c.memo.emplace(key, out);
  return out;
}

void loop_body(LoopCtx& c, Rewriter& rw) {
  map_summands(rw, {1}, [&](const Process& s) {
    if (s.kind() != Process::Kind::Prefix) return -1;
    return loop_prefix(c, s.sum().action(), s.body());
  });
  canon_sum(rw, {1});
}

}  // namespace detail

using namespace detail;

// ── normal forms ────────────────────────────────────────────────────────

bool is_normal_form(const Process& p, NfMode mode) {
  if (p.kind() != Process::Kind::Star) return false;
  if (!canonical_sumform(p.sum())) return false;
  if (mode == NfMode::branching && atoms(p.sum()).count(ActionTau::tau()))
    return false;
  const Process& body = p.body();
  if (body.kind() == Process::Kind::Nil) return true;
  std::vector<Process> leaves;
  for (const SortedTerm& t : summands(SortedTerm(body))) {
    const Process& s = t.process();
    switch (s.kind()) {
      case Process::Kind::Var:
        break;
      case Process::Kind::Prefix:
        if (s.sum().kind() != SumForm::Kind::Act) return false;
        if (!is_normal_form(s.body(), mode)) return false;
        break;
      default:
        return false;
    }
    leaves.push_back(s);
  }
  return body == canon_tree(leaves);
}

std::pair<Process, Proof> to_normal_form(const Process& p, NfMode mode) {
  ProofBuilder b(mode == NfMode::strong ? Relation::strong
                                        : Relation::branching);
  NfCtx c{b, mode, {}};
  int id = nf_step(c, p);
  Process out = b.rhs(id).process();
  if (!is_normal_form(out, mode))
    throw std::logic_error("to_normal_form: result is not a normal form");
  return {out, b.proof()};
}

// ── head normal forms ──────────────────────────────────────────────────

namespace {

void hnf_rec(Rewriter& rw, ProofBuilder& b, const Path& at) {
  SortedTerm t = *subterm_at(rw.current(), at);
  const Process& pr = t.process();
  switch (pr.kind()) {
    case Process::Kind::Var:
    case Process::Kind::Nil:
      return;
    case Process::Kind::Prefix:
      split_prefix(rw, at);
      return;
    case Process::Kind::Plus: {
      Path l = at, r = at;
      l.push_back(0);
      r.push_back(1);
      hnf_rec(rw, b, l);
      hnf_rec(rw, b, r);
      return;
    }
    case Process::Kind::Star: {
      if (pr.sum().kind() == SumForm::Kind::Zero) {
        rw.rewrite(Axiom::FA1, true, at);
        hnf_rec(rw, b, at);
        return;
      }
      rw.apply(b.sym(derive_bks1(b, pr.sum(), pr.body())), at);
      Path l = at, r = at;
      l.push_back(0);
      r.push_back(1);
      split_prefix(rw, l);
      hnf_rec(rw, b, r);
      return;
    }
  }
}

}  // namespace

HeadNormalForm head_normal_form(const Process& p) {
  ProofBuilder b(Relation::strong);
  Rewriter rw(b, SortedTerm(p));
  hnf_rec(rw, b, {});
  canon_sum(rw, {});
  HeadNormalForm out;
  out.term = rw.current().process();
  if (out.term.kind() != Process::Kind::Nil) {
    BodyView bv = body_view(out.term);
    out.summands = std::move(bv.pairs);
    out.vars = std::move(bv.vars);
  }
  rw.id();
  out.proof = b.proof();
  return out;
}

// ── saturation ──────────────────────────────────────────────────────────

namespace {

void require_flavour(Relation k, std::initializer_list<Relation> ok,
                     const char* who) {
  for (Relation r : ok)
    if (k == r) return;
  throw std::invalid_argument(std::string(who) + ": unsupported flavour");
}

// p = raw saturated sum, via normal form, saturation and one root unfold.
int saturated_sum_step(ProofBuilder& b, SatCtx& sc, const Process& p,
                       NfMode mode) {
  NfCtx nc{b, mode, {}};
  int nid = nf_step(nc, p);
  int sid = saturate_star(sc, b.rhs(nid).process());
  return root_unfold(b, b.trans(nid, sid));
}

}  // namespace

std::pair<Process, Proof> saturate(const Process& p, Relation k) {
  require_flavour(k, {Relation::eta, Relation::delay, Relation::weak},
                  "saturate");
  ProofBuilder b(k);
  SatCtx sc{b, k, {}, {}};
  int rid = saturated_sum_step(
      b, sc, p, k == Relation::eta ? NfMode::branching : NfMode::strong);
  Rewriter rw(b, b.rhs(rid));
  rw.rewrite(Axiom::FA1, true, {});
  b.trans(rid, rw.id());
  Process out = rw.current().process();
  if (!is_saturated(out, k))
    throw std::logic_error("saturate: result is not saturated");
  return {out, b.proof()};
}

std::pair<Process, Proof> strong_saturate(const Process& p, Relation k) {
  require_flavour(k, {Relation::delay, Relation::weak}, "strong_saturate");
  ProofBuilder b(k);
  SatCtx sc{b, k, {}, {}};
  int rid = saturated_sum_step(b, sc, p, NfMode::strong);
  LoopCtx lc{b, {}};
  Rewriter rw(b, b.rhs(rid));
  loop_body(lc, rw);
  rw.rewrite(Axiom::FA1, true, {});
  b.trans(rid, rw.id());
  Process out = rw.current().process();
  if (!is_strongly_saturated(out, k))
    throw std::logic_error("strong_saturate: result is not strongly saturated");
  return {out, b.proof()};
}

// ── the rewrite system R ────────────────────────────────────────────────

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > std::numeric_limits<std::uint64_t>::max() / b
             ? std::numeric_limits<std::uint64_t>::max()
             : a * b;
}

std::uint64_t pow2(int n) {
  return n >= 64 ? std::numeric_limits<std::uint64_t>::max()
                 : std::uint64_t{1} << n;
}

}  // namespace

std::uint64_t rewrite_measure(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Var:
    case Process::Kind::Nil:
      return 1;
    case Process::Kind::Plus:
      return sat_add(rewrite_measure(p.left()), rewrite_measure(p.right()));
    case Process::Kind::Prefix:
      return sat_mul(pow2(p.sum().size()),
                     sat_add(rewrite_measure(p.body()), 1));
    case Process::Kind::Star:
      return sat_mul(pow2(p.sum().size()),
                     sat_add(rewrite_measure(p.body()), 2));
  }
  return 1;
}

namespace {

struct Redex {
  Path at;
  Process replacement;
};

std::optional<Process> contract(const Process& p, RewriteMode mode) {
  static const Axiom rules[] = {Axiom::A6, Axiom::FA1, Axiom::A5, Axiom::FT1};
  int n = mode == RewriteMode::weak_family ? 4 : 3;
  for (int i = 0; i < n; ++i)
    if (auto inst = match_axiom(rules[i], true, SortedTerm(p)))
      if (auto eq = instantiate(*inst)) return eq->rhs.process();
  return std::nullopt;
}

std::optional<Redex> find_redex(const Process& p, RewriteMode mode,
                                RewriteStrategy strategy, Path at = {}) {
  if (strategy == RewriteStrategy::outermost)
    if (auto r = contract(p, mode)) return Redex{at, *r};
  auto child = [&](const Process& q, int i) {
    Path next = at;
    next.push_back(i);
    return find_redex(q, mode, strategy, next);
  };
  switch (p.kind()) {
    case Process::Kind::Plus:
      if (auto r = child(p.left(), 0)) return r;
      if (auto r = child(p.right(), 1)) return r;
      break;
    case Process::Kind::Prefix:
    case Process::Kind::Star:
      if (auto r = child(p.body(), 1)) return r;
      break;
    default:
      break;
  }
  if (strategy == RewriteStrategy::innermost)
    if (auto r = contract(p, mode)) return Redex{at, *r};
  return std::nullopt;
}

}  // namespace

Process rewrite_R(const Process& p, RewriteMode mode,
                  RewriteStrategy strategy, std::uint64_t fuel) {
  Process cur = p;
  while (auto r = find_redex(cur, mode, strategy)) {
    if (fuel == 0) throw std::runtime_error("rewrite_R: fuel exhausted");
    --fuel;
    cur = replace_at(SortedTerm(cur), r->at, SortedTerm(r->replacement))
              ->process();
  }
  return cur;
}

// ── translation to prefix iteration ─────────────────────────────────────

std::optional<SumformClass> classify_sumform(const SumForm& s) {
  std::set<ActionTau> a = atoms(s);
  if (a.empty()) return SumformClass{SumformClass::Tag::IsZero, std::nullopt};
  if (a.size() == 1)
    return SumformClass{SumformClass::Tag::IsSingle, *a.begin()};
  if (a.size() == 2 && a.count(ActionTau::tau()))
    return SumformClass{SumformClass::Tag::IsVisiblePlusTau, *a.begin()};
  return std::nullopt;
}

bool in_prefix_fragment(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Var:
    case Process::Kind::Nil:
      return true;
    case Process::Kind::Plus:
      return in_prefix_fragment(p.left()) && in_prefix_fragment(p.right());
    case Process::Kind::Prefix:
    case Process::Kind::Star:
      return p.sum().kind() == SumForm::Kind::Act &&
             in_prefix_fragment(p.body());
  }
  return false;
}

namespace {

SumForm classified_shape(const SumForm& s) {
  auto c = classify_sumform(s);
  // Unclassifiable loops can only sit in dead code here (the reachable ones
  // were rejected by the gate); R erases that code, so leave them alone.
  if (!c) return s;
  switch (c->tag) {
    case SumformClass::Tag::IsZero:
      return SumForm::zero();
    case SumformClass::Tag::IsSingle:
      return SumForm::act(*c->action);
    case SumformClass::Tag::IsVisiblePlusTau:
      return SumForm::plus(SumForm::act(*c->action), tau_sf());
  }
  return SumForm::zero();
}

Process reshape_heads(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Var:
    case Process::Kind::Nil:
      return p;
    case Process::Kind::Plus:
      return Process::plus(reshape_heads(p.left()), reshape_heads(p.right()));
    case Process::Kind::Prefix:
      return Process::prefix(p.sum(), reshape_heads(p.body()));
    case Process::Kind::Star:
      return Process::star(classified_shape(p.sum()),
                           reshape_heads(p.body()));
  }
  return p;
}

}  // namespace

Process phi(const Process& p) {
  if (!is_potential_prefix(p)) throw std::domain_error(kNotPotential);
  Process cur = p;
  for (int round = 0; round < 64; ++round) {
    if (in_prefix_fragment(cur)) return cur;
    cur = rewrite_R(reshape_heads(cur), RewriteMode::weak_family);
  }
  throw std::logic_error("phi: no fixpoint reached");
}

namespace {

struct SchemeKeys {
  std::vector<std::string> sf, proc;
  bool alpha = false;
};

SchemeKeys scheme_keys(Axiom a) {
  switch (a) {
    case Axiom::A1: return {{}, {"x", "y"}, false};
    case Axiom::A2: return {{}, {"x", "y", "z"}, false};
    case Axiom::A3: return {{}, {"x"}, false};
    case Axiom::A4: return {{}, {"x"}, false};
    case Axiom::A5: return {{"s", "t"}, {"x"}, false};
    case Axiom::A6: return {{}, {"x"}, false};
    case Axiom::FA1: return {{}, {"x"}, false};
    case Axiom::FA2: return {{"s", "t"}, {"x"}, false};
    case Axiom::FT1: return {{"s"}, {"x"}, false};
    case Axiom::FT2: return {{"s"}, {"x", "y"}, true};
    case Axiom::T3: return {{}, {"x", "y"}, true};
    case Axiom::FT3: return {{"s"}, {"x", "y"}, false};
    case Axiom::T1: return {{}, {"x"}, true};
    case Axiom::FFIR: return {{"s"}, {"x"}, false};
  }
  return {};
}

}  // namespace

std::vector<PhiAxiom> phi_axioms(Relation k,
                                 const std::vector<ActionTau>& alphabet) {
  std::vector<ActionTau> vis;
  for (const ActionTau& a : alphabet)
    if (!a.is_tau() && std::find(vis.begin(), vis.end(), a) == vis.end())
      vis.push_back(a);
  if (vis.size() < 2)
    throw std::invalid_argument("phi_axioms: need two visible actions");
  const SumForm shapes[] = {SumForm::zero(), tau_sf(),
                            SumForm::plus(SumForm::act(vis[0]), tau_sf())};
  const char* var_names[] = {"X", "Y", "Z"};

  std::vector<PhiAxiom> out;
  for (Axiom scheme : axioms_of(k)) {
    SchemeKeys keys = scheme_keys(scheme);
    int nsf = static_cast<int>(keys.sf.size());
    int combos = 1;
    for (int i = 0; i < nsf; ++i) combos *= 3;
    for (int pick = 0; pick < combos; ++pick) {
      AxiomInstance inst;
      inst.scheme = scheme;
      inst.l2r = true;
      inst.process_sort = true;
      int rem = pick;
      for (int i = 0; i < nsf; ++i) {
        inst.sf[keys.sf[static_cast<size_t>(i)]] = shapes[rem % 3];
        rem /= 3;
      }
      for (size_t i = 0; i < keys.proc.size(); ++i)
        inst.proc[keys.proc[i]] = Process::var(var_names[i]);
      if (keys.alpha) inst.alpha = vis[1];
      auto eq = instantiate(inst);
      if (!eq) throw std::logic_error("phi_axioms: bad instantiation");
      PhiAxiom ax{scheme, phi(eq->lhs.process()), phi(eq->rhs.process())};
      if (ax.lhs == ax.rhs) continue;
      if (std::find(out.begin(), out.end(), ax) == out.end())
        out.push_back(ax);
    }
  }
  return out;
}

}  // namespace flatstar
