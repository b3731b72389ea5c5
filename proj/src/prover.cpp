#include "flatstar/prover.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flatstar/derive.hpp"
#include "flatstar/normalize.hpp"
#include "flatstar/semantics.hpp"
#include "normalize_detail.hpp"

namespace flatstar {

namespace {

using detail::body_view;
using detail::BodyView;
using detail::canon_sf_tree;
using detail::canon_tree;
using detail::comb_pos;
using detail::LoopCtx;
using detail::NfCtx;
using detail::SatCtx;

SumForm tau_sf() { return SumForm::act(ActionTau::tau()); }

std::set<ActionTau> atoms(const SumForm& s) { return init_actions(s); }

bool trivial(const ProofBuilder& b, int id) { return b.lhs(id) == b.rhs(id); }

// Folds trans over the ids that do real work, skipping -1 and refl-shaped
// links; an all-trivial chain collapses to a refl at `t`.
int chain_nontrivial(ProofBuilder& b, const std::vector<int>& ids,
                     const SortedTerm& t) {
  std::vector<int> keep;
  for (int id : ids)
    if (id >= 0 && !trivial(b, id)) keep.push_back(id);
  if (keep.empty()) return b.refl(t);
  return b.chain(keep);
}

// Summand replacements for the right comb currently at `base`.  The
// callback receives each summand and returns a step id whose left side is
// that summand, or -1 to leave it.
template <typename F>
void rewrite_summands(Rewriter& rw, const Path& base, F&& f) {
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

// Star of atom-prefixed normal-form-shaped bodies and variables, canonical
// or not; branching mode keeps tau out of every loop.
bool nf_shaped(const Process& p, NfMode mode) {
  if (p.kind() != Process::Kind::Star) return false;
  if (mode == NfMode::branching && atoms(p.sum()).count(ActionTau::tau()))
    return false;
  for (const SortedTerm& t : summands(SortedTerm(p.body()))) {
    const Process& s = t.process();
    switch (s.kind()) {
      case Process::Kind::Var:
      case Process::Kind::Nil:
        break;
      case Process::Kind::Prefix:
        if (s.sum().kind() != SumForm::Kind::Act) return false;
        if (!nf_shaped(s.body(), mode)) return false;
        break;
      default:
        return false;
    }
  }
  return true;
}

// ── transition classes and their canonical solutions ───────────────────
//
// The summand targets of the two sums span an LTS; its states fall into
// bisimilarity classes (strong classes for the strong, delay and weak
// routes, branching classes otherwise).  Each class gets one canonical
// star: in-class moves of the smallest member become the loop, its exits
// become prefixes of the already-solved target classes.  Exits of any
// member only reach classes with strictly smaller least members, so
// solving in that order is well founded.

struct ClassTable {
  bool branching_side = false;
  Lts lts;
  std::vector<int> cls;        // state -> smallest bisimilar state index
  std::map<int, Process> sol;  // class -> canonical solution star
  std::map<Process, int> candid;                     // m -> id: m = sol
  std::map<std::pair<ActionTau, Process>, int> bc;   // (g,p) -> id: g.p = g.sol

  int class_of(const Process& p) const {
    int s = lts.state_of(p);
    if (s < 0) throw std::logic_error("prover: term escaped the state space");
    return cls[static_cast<size_t>(s)];
  }
  const Process& sol_of(const Process& p) const {
    auto it = sol.find(class_of(p));
    if (it == sol.end()) throw std::logic_error("prover: class never solved");
    return it->second;
  }
};

ClassTable make_classes(bool branching_side,
                        const std::vector<Process>& roots) {
  ClassTable t;
  t.branching_side = branching_side;
  t.lts = build_lts(roots);
  auto matrix = bisimulation(
      t.lts.core, branching_side ? Relation::branching : Relation::strong);
  int n = t.lts.core.num_states;
  t.cls.resize(static_cast<size_t>(n));
  std::map<int, std::vector<int>> members;
  for (int i = 0; i < n; ++i) {
    int c = i;
    for (int j = 0; j < i; ++j)
      if (matrix[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
        c = j;
        break;
      }
    t.cls[static_cast<size_t>(i)] = c;
    members[c].push_back(i);
  }

  std::vector<std::pair<int, Process>> order;  // (class id, least member)
  for (const auto& [c, ms] : members) {
    const Process* best = nullptr;
    for (int s : ms) {
      const Process& p = t.lts.states[static_cast<size_t>(s)];
      if (!best || term_size(p) < term_size(*best) ||
          (term_size(p) == term_size(*best) && p < *best))
        best = &p;
    }
    order.emplace_back(c, *best);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    int sa = term_size(a.second), sb = term_size(b.second);
    return sa != sb ? sa < sb : a.second < b.second;
  });

  for (const auto& [c, rep] : order) {
    switch (rep.kind()) {
      case Process::Kind::Var:
        t.sol.emplace(c, Process::star(SumForm::zero(), rep));
        break;
      case Process::Kind::Star: {
        std::set<ActionTau> loop = atoms(rep.sum());
        if (branching_side && loop.count(ActionTau::tau()))
          throw std::logic_error("prover: representative loop carries tau");
        BodyView bv = body_view(rep.body());
        std::set<std::pair<ActionTau, int>> exits;
        for (const auto& [a, d] : bv.pairs) {
          int dc = t.class_of(d);
          if (dc == c) {
            if (branching_side && a.is_tau())
              throw std::logic_error("prover: representative is no bottom");
            loop.insert(a);
          } else {
            exits.insert({a, dc});
          }
        }
        std::vector<Process> body;
        for (const auto& [a, dc] : exits) {
          auto it = t.sol.find(dc);
          if (it == t.sol.end())
            throw std::logic_error("prover: exit class solved out of order");
          body.push_back(Process::prefix(SumForm::act(a), it->second));
        }
        for (const std::string& x :
             std::set<std::string>(bv.vars.begin(), bv.vars.end()))
          body.push_back(Process::var(x));
        t.sol.emplace(c, Process::star(canon_sf_tree(loop),
                                       canon_tree(std::move(body))));
        break;
      }
      default:
        throw std::logic_error("prover: unexpected state shape");
    }
  }
  return t;
}

// Left combs of h.c0 summands and of the h atoms, for the loop folds.
std::pair<Process, SumForm> in_class_fold(const std::set<ActionTau>& h,
                                          const Process& c0) {
  std::vector<ActionTau> hs(h.begin(), h.end());
  Process fold = Process::prefix(SumForm::act(hs[0]), c0);
  SumForm sum = SumForm::act(hs[0]);
  for (std::size_t i = 1; i < hs.size(); ++i) {
    fold = Process::plus(fold, Process::prefix(SumForm::act(hs[i]), c0));
    sum = SumForm::plus(sum, SumForm::act(hs[i]));
  }
  return {fold, sum};
}

// Inside `rw`, the star at `at` holds in-class summands h.c0 (h ranging
// over the set) next to exactly the solution's own body: fold them into
// the loop with A5 and FA2 and canonicalize back to c0.
void fold_in_class(ProofBuilder& b, Rewriter& rw, const Path& at,
                   const std::set<ActionTau>& h, const SumForm& own_loop,
                   const Process& c0) {
  auto [hfold, hsum] = in_class_fold(h, c0);
  Path body_at = at;
  body_at.push_back(1);
  SortedTerm shaped(Process::plus(hfold, c0.body()));
  auto pid = prove_sum_eq(b, *subterm_at(rw.current(), body_at), shaped);
  if (!pid) throw std::logic_error("prover: exit summands disagree");
  rw.apply(*pid, body_at);
  for (int j = static_cast<int>(h.size()) - 2; j >= 0; --j) {
    Path fold_at = body_at;
    fold_at.push_back(0);
    fold_at.insert(fold_at.end(), static_cast<size_t>(j), 0);
    rw.rewrite(Axiom::A5, false, fold_at);
  }
  SumForm grown = SumForm::plus(own_loop, hsum);
  if (c0.sum() != grown) {
    auto sid = prove_sum_eq(b, SortedTerm(c0.sum()), SortedTerm(grown));
    if (!sid) throw std::logic_error("prover: loop atoms disagree");
    Path inner = body_at;
    inner.push_back(0);
    inner.push_back(1);
    inner.push_back(0);
    rw.apply(*sid, inner);
  }
  rw.rewrite(Axiom::FA2, true, at);
  Path loop_at = at;
  loop_at.push_back(0);
  canon_sum(rw, loop_at);
}

// id: m = sol[class of m], derived with the strong axioms.  Recurses into
// the summand targets, which are proper subterms, so the size measure
// strictly decreases.
int to_candid(ProofBuilder& b, ClassTable& t, const Process& m) {
  if (auto it = t.candid.find(m); it != t.candid.end()) return it->second;
  const Process k = t.sol_of(m);
  int out;
  if (m == k) {
    out = b.refl(SortedTerm(m));
  } else {
    const int bound = term_size(m);
    Rewriter rw(b, SortedTerm(m));
    rewrite_summands(rw, {1}, [&](const Process& s) {
      if (s.kind() != Process::Kind::Prefix) return -1;
      if (term_size(s.body()) >= bound)
        throw std::logic_error("prover: summand measure did not decrease");
      int cid = to_candid(b, t, s.body());
      if (trivial(b, cid)) return -1;
      return b.ctx(cid, SortedTerm(s), {1});
    });
    canon_sum(rw, {1});
    std::set<ActionTau> h;
    const int mc = t.class_of(m);
    for (const auto& [a, d] : body_view(m.body()).pairs)
      if (t.class_of(d) == mc) h.insert(a);
    if (!h.empty()) fold_in_class(b, rw, {}, h, m.sum(), k);
    if (rw.current() != SortedTerm(k))
      throw std::logic_error("prover: canonical solution mismatch");
    out = rw.id();
  }
  t.candid.emplace(m, out);
  return out;
}

// id: g.p = g.sol[class of p], derived with the branching axioms.  A
// member without an in-class tau summand folds like to_candid, one level
// down; a stuttering member instead reaches its tau link, swaps in the
// (possibly loop-extended) unfolding of the solution and cancels the
// stutter with FT2.
int to_bc(ProofBuilder& b, ClassTable& t, const ActionTau& g,
          const Process& p) {
  auto key = std::make_pair(g, p);
  if (auto it = t.bc.find(key); it != t.bc.end()) return it->second;
  const Process c0 = t.sol_of(p);
  const Process gp = Process::prefix(SumForm::act(g), p);
  int out;
  if (p == c0) {
    out = b.refl(SortedTerm(gp));
  } else {
    const int bound = term_size(p);
    const int pc = t.class_of(p);
    Rewriter rw(b, SortedTerm(gp));
    rewrite_summands(rw, {1, 1}, [&](const Process& s) {
      if (s.kind() != Process::Kind::Prefix) return -1;
      if (term_size(s.body()) >= bound)
        throw std::logic_error("prover: summand measure did not decrease");
      int eid = to_bc(b, t, s.sum().action(), s.body());
      return trivial(b, eid) ? -1 : eid;
    });
    canon_sum(rw, {1, 1});
    bool stutter = false;
    std::set<ActionTau> h;
    for (const auto& [a, d] : body_view(p.body()).pairs)
      if (t.class_of(d) == pc) {
        if (a.is_tau())
          stutter = true;
        else
          h.insert(a);
      }
    if (!stutter) {
      if (!h.empty()) fold_in_class(b, rw, {1}, h, p.sum(), c0);
    } else {
      // extend the solution's loop to the member's own loop plus direct
      // summands for the in-class visible moves
      std::set<ActionTau> extra = atoms(c0.sum());
      for (const ActionTau& a : atoms(p.sum())) extra.erase(a);
      for (const ActionTau& a : h) extra.insert(a);
      int cs = -1;
      Process bstar = c0;
      if (!extra.empty()) {
        Rewriter rws(b, SortedTerm(c0));
        SumForm grown = SumForm::plus(p.sum(), canon_sf_tree(extra));
        auto sid = prove_sum_eq(b, SortedTerm(c0.sum()), SortedTerm(grown));
        if (!sid) throw std::logic_error("prover: loop atoms disagree");
        rws.apply(*sid, {0});
        rws.rewrite(Axiom::FA2, false, {});
        rws.apply(b.sym(*sid), {1, 0, 1, 0});
        detail::split_prefix(rws, {1, 0});
        bstar = rws.current().process();
        cs = rws.id();
      }
      Process tau_link = Process::prefix(tau_sf(), c0);
      std::vector<Process> rest;
      bool dropped = false;
      for (const SortedTerm& s : summands(*subterm_at(rw.current(), {1, 1}))) {
        if (!dropped && s.process() == tau_link) {
          dropped = true;
          continue;
        }
        rest.push_back(s.process());
      }
      if (!dropped) throw std::logic_error("prover: stutter summand missing");
      Process rfold = canon_tree(rest);
      auto pid = prove_sum_eq(b, *subterm_at(rw.current(), {1, 1}),
                              SortedTerm(Process::plus(tau_link, rfold)));
      if (!pid) throw std::logic_error("prover: body rearrangement failed");
      rw.apply(*pid, {1, 1});
      if (cs >= 0) rw.apply(cs, {1, 1, 0, 1});
      std::set<Process> have;
      for (const SortedTerm& s : summands(SortedTerm(bstar.body())))
        have.insert(s.process());
      for (const Process& s : rest)
        if (!have.count(s))
          throw std::logic_error("prover: residue escaped the unfolding");
      std::set<Process> rset(rest.begin(), rest.end());
      std::vector<Process> fresh;
      for (const Process& s : have)
        if (!rset.count(s)) fresh.push_back(s);
      Process yfold = canon_tree(std::move(fresh));
      auto qid = prove_sum_eq(b, SortedTerm(bstar.body()),
                              SortedTerm(Process::plus(rfold, yfold)));
      if (!qid) throw std::logic_error("prover: unfolding rearrangement failed");
      rw.apply(*qid, {1, 1, 0, 1, 1});
      rw.rewrite(Axiom::FT2, true, {});
      rw.apply(b.sym(*qid), {1, 1});
      if (cs >= 0) rw.apply(b.sym(cs), {1});
    }
    if (rw.current() != SortedTerm(Process::prefix(SumForm::act(g), c0)))
      throw std::logic_error("prover: canonical solution mismatch");
    out = rw.id();
  }
  t.bc.emplace(key, out);
  return out;
}

// ── head sums ───────────────────────────────────────────────────────────
//
// id: p = S with S the flat sum that carries p's rooted behaviour as
// single steps: the unfolded normal form, made eta-saturated first for
// eta, strongly saturated and tau-looped for delay and weak.

struct SumChain {
  int id;
  Process sum;
};

SumChain sum_chain(ProofBuilder& b, const Process& p, Relation k) {
  const NfMode mode = (k == Relation::branching || k == Relation::eta)
                          ? NfMode::branching
                          : NfMode::strong;
  int nid = -1;
  Process n = p;
  if (!is_normal_form(p, mode)) {
    NfCtx nc{b, mode, {}};
    nid = detail::nf_step(nc, p);
    n = b.rhs(nid).process();
  }
  switch (k) {
    case Relation::strong:
    case Relation::branching: {
      auto [uid, u] = detail::unfold_eq(b, n);
      return {nid < 0 ? uid : b.trans(nid, uid), u};
    }
    case Relation::eta: {
      SatCtx sc{b, k, {}, {}};
      int sid = detail::saturate_star(sc, n);
      auto [uid, u] = detail::unfold_eq(b, b.rhs(sid).process());
      int id = nid < 0 ? b.trans(sid, uid) : b.chain({nid, sid, uid});
      return {id, u};
    }
    default: {  // delay, weak: also a tau self-loop on every derivative
      SatCtx sc{b, k, {}, {}};
      int sid = detail::saturate_star(sc, n);
      int rid = detail::root_unfold(b, nid < 0 ? sid : b.trans(nid, sid));
      LoopCtx lc{b, {}};
      Rewriter rw(b, b.rhs(rid));
      detail::loop_body(lc, rw);
      rw.rewrite(Axiom::FA1, true, {});
      int id = b.trans(rid, rw.id());
      return {id, rw.current().process()};
    }
  }
}

// id: into + from = into.  Every prefix summand of `from` is rewritten to
// the first summand of `into` whose target sits in the same class; the
// duplicates then vanish by A1-A4.
int absorb(ProofBuilder& b, ClassTable& t, const Process& into,
           const Process& from) {
  BodyView tv = body_view(into);
  std::set<std::string> tvars(tv.vars.begin(), tv.vars.end());
  Rewriter rw(b, SortedTerm(Process::plus(into, from)));
  rewrite_summands(rw, {1}, [&](const Process& s) {
    switch (s.kind()) {
      case Process::Kind::Nil:
        return -1;
      case Process::Kind::Var:
        if (!tvars.count(s.var_name()))
          throw std::logic_error("prover: unmatched variable summand");
        return -1;
      case Process::Kind::Prefix: {
        const ActionTau xi = s.sum().action();
        const Process& n = s.body();
        const Process* m = nullptr;
        for (const auto& [a, d] : tv.pairs)
          if (a == xi && t.class_of(d) == t.class_of(n)) {
            m = &d;
            break;
          }
        if (!m) throw std::logic_error("prover: unmatched summand");
        if (*m == n) return -1;
        if (t.branching_side) {
          int l = to_bc(b, t, xi, n);
          int r = b.sym(to_bc(b, t, xi, *m));
          return chain_nontrivial(b, {l, r}, SortedTerm(s));
        }
        int l = to_candid(b, t, n);
        int r = b.sym(to_candid(b, t, *m));
        int eid = chain_nontrivial(b, {l, r}, SortedTerm(n));
        return b.ctx(eid, SortedTerm(s), {1});
      }
      default:
        throw std::logic_error("prover: sum has a compound summand");
    }
  });
  auto pid = prove_sum_eq(b, rw.current(), SortedTerm(into));
  if (!pid) throw std::logic_error("prover: absorption left extra behaviour");
  rw.apply(*pid, {});
  return rw.id();
}

// Re-issue the equation as the final step when later bookkeeping steps
// buried it, so the proof's claim is the intended conclusion.
int finalize(ProofBuilder& b, int id) {
  if (id != b.size() - 1) id = b.trans(id, b.refl(b.rhs(id)));
  return id;
}

void recheck(const ProofBuilder& b, Relation k, const Equation& claim,
             const char* who) {
  CheckResult res = check_proof(b.proof(), k, claim);
  if (!res.ok())
    throw std::logic_error(std::string(who) +
                           ": certificate rejected: " + res.message);
}

}  // namespace

Proof prove_nf(const Process& p, const Process& q, Relation k,
               std::optional<ActionTau> gamma) {
  if (k != Relation::strong && k != Relation::branching)
    throw std::invalid_argument("prove_nf: relation must be strong or branching");
  const bool bside = k == Relation::branching;
  if (bside && !gamma)
    throw std::invalid_argument("prove_nf: branching mode needs a guard");
  if (!bside && gamma)
    throw std::invalid_argument("prove_nf: strong mode takes no guard");
  const NfMode mode = bside ? NfMode::branching : NfMode::strong;
  if (!nf_shaped(p, mode) || !nf_shaped(q, mode))
    throw std::invalid_argument("prove_nf: inputs are not normal-form shaped");
  if (!bisimilar(p, q, k))
    throw std::invalid_argument("prove_nf: inputs are not bisimilar");

  ProofBuilder b(k);
  Process lhs = p, rhs = q;
  if (bside) {
    lhs = Process::prefix(SumForm::act(*gamma), p);
    rhs = Process::prefix(SumForm::act(*gamma), q);
  }
  const Equation claim{SortedTerm(lhs), SortedTerm(rhs)};
  if (p == q) {
    b.refl(SortedTerm(lhs));
    recheck(b, k, claim, "prove_nf");
    return b.proof();
  }

  NfCtx nc{b, mode, {}};
  int np = -1, nq = -1;
  Process vp = p, vq = q;
  if (!is_normal_form(p, mode)) {
    np = detail::nf_step(nc, p);
    vp = b.rhs(np).process();
  }
  if (!is_normal_form(q, mode)) {
    nq = detail::nf_step(nc, q);
    vq = b.rhs(nq).process();
  }
  std::vector<Process> roots{vp};
  if (vq != vp) roots.push_back(vq);
  ClassTable t = make_classes(bside, roots);

  int id;
  if (bside) {
    int lp = np < 0 ? -1 : b.ctx(np, SortedTerm(lhs), {1});
    int lq = nq < 0 ? -1 : b.ctx(nq, SortedTerm(rhs), {1});
    int l = to_bc(b, t, *gamma, vp);
    int r = b.sym(to_bc(b, t, *gamma, vq));
    id = chain_nontrivial(b, {lp, l, r, lq < 0 ? -1 : b.sym(lq)},
                          SortedTerm(lhs));
  } else {
    int l = to_candid(b, t, vp);
    int r = b.sym(to_candid(b, t, vq));
    id = chain_nontrivial(b, {np, l, r, nq < 0 ? -1 : b.sym(nq)},
                          SortedTerm(lhs));
  }
  id = finalize(b, id);
  if (b.eq(id) != claim)
    throw std::logic_error("prove_nf: derivation missed its goal");
  recheck(b, k, claim, "prove_nf");
  return b.proof();
}

ProveOutcome prove_congruent(const Process& p, const Process& q, Relation k) {
  CongruenceResult gate = congruent_ex(p, q, k);
  if (!gate.related) return {std::nullopt, gate.witness};

  ProofBuilder b(k);
  int id;
  if (p == q) {
    id = b.refl(SortedTerm(p));
  } else {
    SumChain cp = sum_chain(b, p, k);
    if (cp.sum == q) {
      id = cp.id;
    } else {
      SumChain cq = sum_chain(b, q, k);
      if (cq.sum == p) {
        id = b.sym(cq.id);
      } else if (cp.sum == cq.sum) {
        id = b.trans(cp.id, b.sym(cq.id));
      } else {
        const bool bside = k == Relation::branching || k == Relation::eta;
        std::vector<Process> roots;
        std::set<Process> seen;
        for (const Process* s : {&cp.sum, &cq.sum})
          for (const auto& [a, d] : body_view(*s).pairs)
            if (seen.insert(d).second) roots.push_back(d);
        ClassTable t = make_classes(bside, roots);
        int pq = absorb(b, t, cp.sum, cq.sum);
        int qp = absorb(b, t, cq.sum, cp.sum);
        auto mid = prove_sum_eq(b, SortedTerm(Process::plus(cp.sum, cq.sum)),
                                SortedTerm(Process::plus(cq.sum, cp.sum)));
        if (!mid) throw std::logic_error("prover: commutation failed");
        id = b.chain({cp.id, b.sym(pq), *mid, qp, b.sym(cq.id)});
      }
    }
  }
  id = finalize(b, id);
  const Equation claim{SortedTerm(p), SortedTerm(q)};
  if (b.eq(id) != claim)
    throw std::logic_error("prover: derivation missed its goal");
  recheck(b, k, claim, "prove_congruent");
  return {b.proof(), ""};
}

}  // namespace flatstar
