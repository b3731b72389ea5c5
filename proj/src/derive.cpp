#include "flatstar/derive.hpp"

#include <algorithm>
#include <string>

namespace flatstar {

namespace {

[[noreturn]] void misuse(const std::string& what) {
  throw std::logic_error("proof construction: " + what);
}

SumForm tau_sf() { return SumForm::act(ActionTau::tau()); }

bool is_tau_atom(const SumForm& s) {
  return s.kind() == SumForm::Kind::Act && s.action().is_tau();
}

}  // namespace

// ── ProofBuilder ─────────────────────────────────────────────────────────

int ProofBuilder::push(ProofStep s) {
  p_.steps.push_back(std::move(s));
  return static_cast<int>(p_.steps.size()) - 1;
}

const Equation& ProofBuilder::eq(int id) const {
  if (id < 0 || id >= size()) misuse("step id out of range");
  return p_.steps[id].conclusion;
}

int ProofBuilder::axiom(const AxiomInstance& inst) {
  if (!axiom_in_system(inst.scheme, system_))
    misuse(std::string(axiom_name(inst.scheme)) + " is not available in " +
           std::string(relation_name(system_)));
  auto eq = instantiate(inst);
  if (!eq) misuse(std::string(axiom_name(inst.scheme)) + ": bad instantiation");
  ProofStep s;
  s.kind = StepKind::Axiom;
  s.inst = inst;
  s.conclusion = *eq;
  return push(std::move(s));
}

int ProofBuilder::refl(SortedTerm t) {
  ProofStep s;
  s.kind = StepKind::Refl;
  s.conclusion = Equation(t, t);
  return push(std::move(s));
}

int ProofBuilder::sym(int a) {
  const Equation& e = eq(a);
  ProofStep s;
  s.kind = StepKind::Sym;
  s.a = a;
  s.conclusion = Equation(e.rhs, e.lhs);
  return push(std::move(s));
}

int ProofBuilder::trans(int a, int b) {
  const Equation& ea = eq(a);
  const Equation& eb = eq(b);
  if (ea.rhs != eb.lhs)
    misuse("trans mismatch: " + format(ea.rhs) + " vs " + format(eb.lhs));
  ProofStep s;
  s.kind = StepKind::Trans;
  s.a = a;
  s.b = b;
  s.conclusion = Equation(ea.lhs, eb.rhs);
  return push(std::move(s));
}

int ProofBuilder::chain(const std::vector<int>& ids) {
  if (ids.empty()) misuse("chain of nothing");
  int acc = ids[0];
  for (std::size_t i = 1; i < ids.size(); ++i) acc = trans(acc, ids[i]);
  return acc;
}

int ProofBuilder::ctx(int premise, const SortedTerm& enclosing,
                      const Path& at) {
  if (at.empty()) return premise;
  const Equation& e = eq(premise);
  auto sub = subterm_at(enclosing, at);
  if (!sub || *sub != e.lhs)
    misuse("ctx: " + format(e.lhs) + " does not sit at that position of " +
           format(enclosing));
  auto replaced = replace_at(enclosing, at, e.rhs);
  if (!replaced) misuse("ctx: replacement failed");
  ProofStep s;
  s.kind = StepKind::Ctx;
  s.a = premise;
  s.path = at;
  s.conclusion = Equation(enclosing, *replaced);
  return push(std::move(s));
}

int ProofBuilder::subst(int premise, const Substitution& sigma) {
  const Equation& e = eq(premise);
  if (!e.is_process()) misuse("subst into a sumform equation");
  ProofStep s;
  s.kind = StepKind::Subst;
  s.a = premise;
  s.subst = sigma;
  s.conclusion = Equation(SortedTerm(substitute(e.lhs.process(), sigma)),
                          SortedTerm(substitute(e.rhs.process(), sigma)));
  return push(std::move(s));
}

// ── redex matching ───────────────────────────────────────────────────────

namespace {

struct Match {
  AxiomInstance in;
  bool ok = false;
};

// Views for shallow destructuring; each returns false when the shape
// fails.  The source is copied first so outputs may alias it.
bool p_plus(const Process& p, Process& l, Process& r) {
  if (p.kind() != Process::Kind::Plus) return false;
  Process src = p;
  l = src.left();
  r = src.right();
  return true;
}
bool s_plus(const SumForm& s, SumForm& l, SumForm& r) {
  if (s.kind() != SumForm::Kind::Plus) return false;
  SumForm src = s;
  l = src.left();
  r = src.right();
  return true;
}
bool p_prefix(const Process& p, SumForm& s, Process& b) {
  if (p.kind() != Process::Kind::Prefix) return false;
  Process src = p;
  s = src.sum();
  b = src.body();
  return true;
}
bool p_star(const Process& p, SumForm& s, Process& b) {
  if (p.kind() != Process::Kind::Star) return false;
  Process src = p;
  s = src.sum();
  b = src.body();
  return true;
}
bool atom_of(const SumForm& s, ActionTau& a) {
  if (s.kind() != SumForm::Kind::Act) return false;
  a = s.action();
  return true;
}

}  // namespace

std::optional<AxiomInstance> match_axiom(Axiom a, bool l2r,
                                         const SortedTerm& redex) {
  AxiomInstance in;
  in.scheme = a;
  in.l2r = l2r;
  in.process_sort = redex.is_process();

  // The two-sorted core schemes match on either sort; sumform variants of
  // the rest do not exist, so a sumform redex fails them outright.
  bool core = a == Axiom::A1 || a == Axiom::A2 || a == Axiom::A3 ||
              a == Axiom::A4;
  if (!redex.is_process() && !core) return std::nullopt;

  auto done = [&]() -> std::optional<AxiomInstance> {
    auto eq = instantiate(in);
    if (!eq || eq->lhs != redex) return std::nullopt;
    return in;
  };
  auto bindp = [&](const char* k, const Process& p) { in.proc[k] = p; };
  auto binds = [&](const char* k, const SumForm& s) { in.sf[k] = s; };

  if (core && !redex.is_process()) {
    const SumForm& t = redex.sumform();
    SumForm x, y, z;
    switch (a) {
      case Axiom::A1:
        if (!s_plus(t, x, y)) return std::nullopt;
        if (l2r) {
          binds("s", x), binds("t", y);
        } else {
          binds("t", x), binds("s", y);
        }
        return done();
      case Axiom::A2:
        if (l2r) {
          if (!s_plus(t, x, z) || !s_plus(x, x, y)) return std::nullopt;
        } else {
          if (!s_plus(t, x, y) || !s_plus(y, y, z)) return std::nullopt;
        }
        binds("s", x), binds("t", y), binds("u", z);
        return done();
      case Axiom::A3:
        if (l2r) {
          if (!s_plus(t, x, y) || x != y) return std::nullopt;
          binds("s", x);
        } else {
          binds("s", t);
        }
        return done();
      case Axiom::A4:
        if (l2r) {
          if (!s_plus(t, x, y) || y.kind() != SumForm::Kind::Zero)
            return std::nullopt;
          binds("s", x);
        } else {
          binds("s", t);
        }
        return done();
      default:
        return std::nullopt;
    }
  }

  const Process& t = redex.process();
  Process x, y, z;
  SumForm s, u, v;
  ActionTau act = ActionTau::tau();
  switch (a) {
    case Axiom::A1:
      if (!p_plus(t, x, y)) return std::nullopt;
      if (l2r) {
        bindp("x", x), bindp("y", y);
      } else {
        bindp("y", x), bindp("x", y);
      }
      return done();
    case Axiom::A2:
      if (l2r) {
        if (!p_plus(t, x, z) || !p_plus(x, x, y)) return std::nullopt;
      } else {
        if (!p_plus(t, x, y) || !p_plus(y, y, z)) return std::nullopt;
      }
      bindp("x", x), bindp("y", y), bindp("z", z);
      return done();
    case Axiom::A3:
      if (l2r) {
        if (!p_plus(t, x, y) || x != y) return std::nullopt;
        bindp("x", x);
      } else {
        bindp("x", t);
      }
      return done();
    case Axiom::A4:
      if (l2r) {
        if (!p_plus(t, x, y) || y.kind() != Process::Kind::Nil)
          return std::nullopt;
        bindp("x", x);
      } else {
        bindp("x", t);
      }
      return done();
    case Axiom::A5:
      if (l2r) {
        if (!p_prefix(t, u, x) || !s_plus(u, s, u)) return std::nullopt;
        binds("s", s), binds("t", u), bindp("x", x);
      } else {
        if (!p_plus(t, x, y) || !p_prefix(x, s, x) || !p_prefix(y, u, y) ||
            x != y)
          return std::nullopt;
        binds("s", s), binds("t", u), bindp("x", x);
      }
      return done();
    case Axiom::A6:
      if (!l2r) return std::nullopt;  // the right side forgets x
      if (!p_prefix(t, s, x) || s.kind() != SumForm::Kind::Zero)
        return std::nullopt;
      bindp("x", x);
      return done();
    case Axiom::FA1:
      if (l2r) {
        if (!p_star(t, s, x) || s.kind() != SumForm::Kind::Zero)
          return std::nullopt;
        bindp("x", x);
      } else {
        bindp("x", t);
      }
      return done();
    case Axiom::FA2:
      if (l2r) {
        if (!p_star(t, s, x) || !p_plus(x, x, y) || !p_prefix(x, u, x) ||
            !p_star(x, v, x))
          return std::nullopt;
        if (v != SumForm::plus(s, u) || x != y) return std::nullopt;
        binds("s", s), binds("t", u), bindp("x", x);
      } else {
        if (!p_star(t, u, x) || !s_plus(u, s, u)) return std::nullopt;
        binds("s", s), binds("t", u), bindp("x", x);
      }
      return done();
    case Axiom::FT1:
    case Axiom::FFIR:
      if (l2r) {
        if (!p_star(t, u, x) || !s_plus(u, s, u) || !is_tau_atom(u))
          return std::nullopt;
        binds("s", s), bindp("x", x);
        return done();
      }
      if (a == Axiom::FFIR) {
        if (!p_prefix(t, u, x) || !is_tau_atom(u) || !p_star(x, s, x))
          return std::nullopt;
        binds("s", s), bindp("x", x);
        return done();
      }
      // FT1 right side: tau.(s*x)+s*x
      if (!p_plus(t, x, y) || !p_prefix(x, u, x) || !is_tau_atom(u) ||
          !p_star(x, s, x) || !p_star(y, v, y) || s != v || x != y)
        return std::nullopt;
      binds("s", s), bindp("x", x);
      return done();
    case Axiom::FT2:
      if (l2r) {
        if (!p_prefix(t, u, x) || !atom_of(u, act)) return std::nullopt;
        if (!p_star(x, s, x) || !p_plus(x, x, y) || !p_prefix(x, u, x) ||
            !is_tau_atom(u) || !p_star(x, v, x) || v != s)
          return std::nullopt;
        // x now holds the inner x+y whose left part must be the trailing y
        if (!p_plus(x, z, x) || z != y) return std::nullopt;
        in.alpha = act;
        binds("s", s), bindp("x", z), bindp("y", x);
      } else {
        if (!p_prefix(t, u, x) || !atom_of(u, act) || !p_star(x, s, x) ||
            !p_plus(x, x, y))
          return std::nullopt;
        in.alpha = act;
        binds("s", s), bindp("x", x), bindp("y", y);
      }
      return done();
    case Axiom::T3:
      if (l2r) {
        if (!p_prefix(t, u, x) || !atom_of(u, act) || !p_plus(x, x, y) ||
            !p_prefix(y, v, y) || !is_tau_atom(v))
          return std::nullopt;
        in.alpha = act;
        bindp("x", x), bindp("y", y);
      } else {
        if (!p_plus(t, x, z) || !p_prefix(x, u, x) || !atom_of(u, act) ||
            !p_plus(x, x, y) || !p_prefix(y, v, y) || !is_tau_atom(v) ||
            !p_prefix(z, v, z) || !atom_of(v, act) || z != y)
          return std::nullopt;
        in.alpha = act;
        bindp("x", x), bindp("y", y);
      }
      return done();
    case Axiom::FT3:
      if (l2r) {
        if (!p_star(t, s, x) || !p_plus(x, x, y) || !p_prefix(y, v, y) ||
            !is_tau_atom(v))
          return std::nullopt;
        binds("s", s), bindp("x", x), bindp("y", y);
      } else {
        if (!p_star(t, s, x) || !p_plus(x, x, z) || !p_plus(x, x, y) ||
            !p_prefix(y, v, y) || !is_tau_atom(v) || !p_prefix(z, u, z) ||
            u != s || z != y)
          return std::nullopt;
        binds("s", s), bindp("x", x), bindp("y", y);
      }
      return done();
    case Axiom::T1:
      if (l2r) {
        if (!p_prefix(t, u, x) || !atom_of(u, act) || !p_prefix(x, v, x) ||
            !is_tau_atom(v))
          return std::nullopt;
      } else {
        if (!p_prefix(t, u, x) || !atom_of(u, act)) return std::nullopt;
      }
      in.alpha = act;
      bindp("x", x);
      return done();
  }
  return std::nullopt;
}

// ── Rewriter ─────────────────────────────────────────────────────────────

int Rewriter::id() {
  if (id_ < 0) id_ = b_.refl(cur_);
  return id_;
}

void Rewriter::apply(int step_id, const Path& at) {
  int wrapped = b_.ctx(step_id, cur_, at);
  if (b_.lhs(wrapped) != cur_)
    misuse("applied an equation for " + format(b_.lhs(wrapped)) + " to " +
           format(cur_));
  id_ = id_ < 0 ? wrapped : b_.trans(id_, wrapped);
  cur_ = b_.rhs(wrapped);
}

void Rewriter::rewrite(Axiom a, bool l2r, const Path& at) {
  if (!try_rewrite(a, l2r, at))
    misuse(std::string(axiom_name(a)) + (l2r ? "" : " reversed") +
           " does not match inside " + format(cur_));
}

bool Rewriter::try_rewrite(Axiom a, bool l2r, const Path& at) {
  auto sub = subterm_at(cur_, at);
  if (!sub) return false;
  auto in = match_axiom(a, l2r, *sub);
  if (!in) return false;
  apply(b_.axiom(*in), at);
  return true;
}

// ── sum canonicalization ─────────────────────────────────────────────────

namespace {

bool is_plus_term(const SortedTerm& t) {
  return t.is_process() ? t.process().kind() == Process::Kind::Plus
                        : t.sumform().kind() == SumForm::Kind::Plus;
}

bool is_zero_term(const SortedTerm& t) {
  return t.is_process() ? t.process().kind() == Process::Kind::Nil
                        : t.sumform().kind() == SumForm::Kind::Zero;
}

SortedTerm child(const SortedTerm& t, int i) {
  if (t.is_process()) {
    const Process& p = t.process();
    return SortedTerm(i == 0 ? p.left() : p.right());
  }
  const SumForm& s = t.sumform();
  return SortedTerm(i == 0 ? s.left() : s.right());
}

bool term_less(const SortedTerm& a, const SortedTerm& b) {
  if (a.is_process()) return compare(a.process(), b.process()) < 0;
  return compare(a.sumform(), b.sumform()) < 0;
}

void collect_summands(const SortedTerm& t, std::vector<SortedTerm>& out) {
  if (is_plus_term(t)) {
    collect_summands(child(t, 0), out);
    collect_summands(child(t, 1), out);
  } else {
    out.push_back(t);
  }
}

// Reassociate the sum at `at` into a right comb.
void right_comb(Rewriter& rw, Path at) {
  for (;;) {
    SortedTerm t = *subterm_at(rw.current(), at);
    if (!is_plus_term(t)) return;
    if (is_plus_term(child(t, 0))) {
      rw.rewrite(Axiom::A2, true, at);
      continue;
    }
    at.push_back(1);
  }
}

}  // namespace

std::vector<SortedTerm> summands(const SortedTerm& t) {
  std::vector<SortedTerm> out;
  collect_summands(t, out);
  return out;
}

std::vector<SortedTerm> canon_summands(const SortedTerm& t) {
  std::vector<SortedTerm> v = summands(t);
  std::erase_if(v, [](const SortedTerm& s) { return is_zero_term(s); });
  std::sort(v.begin(), v.end(), term_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void canon_sum(Rewriter& rw, const Path& at) {
  right_comb(rw, at);
  auto sub = [&](const Path& p) { return *subterm_at(rw.current(), p); };

  // bubble sort the comb with adjacent A1 swaps
  for (bool swapped = true; swapped;) {
    swapped = false;
    Path p = at;
    for (;;) {
      SortedTerm t = sub(p);
      if (!is_plus_term(t)) break;
      SortedTerm head = child(t, 0), rest = child(t, 1);
      if (is_plus_term(rest)) {
        if (term_less(child(rest, 0), head)) {
          rw.rewrite(Axiom::A2, false, p);
          Path pl = p;
          pl.push_back(0);
          rw.rewrite(Axiom::A1, true, pl);
          rw.rewrite(Axiom::A2, true, p);
          swapped = true;
        }
      } else if (term_less(rest, head)) {
        rw.rewrite(Axiom::A1, true, p);
        swapped = true;
      }
      p.push_back(1);
    }
  }

  // collapse equal neighbours
  for (bool changed = true; changed;) {
    changed = false;
    Path p = at;
    for (;;) {
      SortedTerm t = sub(p);
      if (!is_plus_term(t)) break;
      SortedTerm head = child(t, 0), rest = child(t, 1);
      if (is_plus_term(rest) && child(rest, 0) == head) {
        rw.rewrite(Axiom::A2, false, p);
        Path pl = p;
        pl.push_back(0);
        rw.rewrite(Axiom::A3, true, pl);
        changed = true;
        break;
      }
      if (!is_plus_term(rest) && rest == head) {
        rw.rewrite(Axiom::A3, true, p);
        changed = true;
        break;
      }
      p.push_back(1);
    }
  }

  // strip zero summands
  for (bool changed = true; changed;) {
    changed = false;
    Path p = at;
    for (;;) {
      SortedTerm t = sub(p);
      if (!is_plus_term(t)) break;
      if (is_zero_term(child(t, 0))) {
        rw.rewrite(Axiom::A1, true, p);
        rw.rewrite(Axiom::A4, true, p);
        changed = true;
        break;
      }
      SortedTerm rest = child(t, 1);
      if (!is_plus_term(rest) && is_zero_term(rest)) {
        rw.rewrite(Axiom::A4, true, p);
        changed = true;
        break;
      }
      p.push_back(1);
    }
  }
}

std::optional<int> prove_sum_eq(ProofBuilder& b, const SortedTerm& lhs,
                                const SortedTerm& rhs) {
  if (lhs == rhs) return b.refl(lhs);
  if (canon_summands(lhs) != canon_summands(rhs)) return std::nullopt;
  Rewriter l(b, lhs), r(b, rhs);
  canon_sum(l);
  canon_sum(r);
  if (l.current() != r.current()) return std::nullopt;
  return b.trans(l.id(), b.sym(r.id()));
}

// ── derived equations ────────────────────────────────────────────────────

namespace {

// (0+s) = s as a sumform equation.
int zero_plus_sf(ProofBuilder& b, const SumForm& s) {
  AxiomInstance a1;
  a1.scheme = Axiom::A1;
  a1.process_sort = false;
  a1.sf = {{"s", SumForm::zero()}, {"t", s}};
  AxiomInstance a4;
  a4.scheme = Axiom::A4;
  a4.process_sort = false;
  a4.sf = {{"s", s}};
  return b.trans(b.axiom(a1), b.axiom(a4));
}

void need_weak_family(const ProofBuilder& b, const char* law) {
  if (b.system() == Relation::delay || b.system() == Relation::weak) return;
  misuse(std::string(law) + " needs the delay or weak system, not " +
         std::string(relation_name(b.system())));
}

}  // namespace

int derive_bks1(ProofBuilder& b, const SumForm& s, const Process& x) {
  int zs = zero_plus_sf(b, s);  // (0+s) = s
  Process sx = Process::star(s, x);
  Rewriter rw(b, SortedTerm(Process::plus(Process::prefix(s, sx), x)));
  rw.apply(b.sym(zs), {0, 1, 0});  // s.(0+s)*x+x
  rw.rewrite(Axiom::FA1, false);   // 0*(s.(0+s)*x+x)
  rw.rewrite(Axiom::FA2, true);    // (0+s)*x
  rw.apply(zs, {0});               // s*x
  return rw.id();
}

int derive_star_star(ProofBuilder& b, const SumForm& s, const Process& x) {
  int bks = derive_bks1(b, s, x);
  Rewriter rw(b, SortedTerm(Process::star(s, Process::star(s, x))));
  rw.apply(b.sym(bks), {1});             // s*(s.(s*x)+x)
  rw.rewrite(Axiom::A3, false, {1, 0, 1, 0});  // s*(s.(s+s)*x+x)
  rw.rewrite(Axiom::FA2, true);          // (s+s)*x
  rw.rewrite(Axiom::A3, true, {0});      // s*x
  return rw.id();
}

int derive_fir(ProofBuilder& b, const Process& x) {
  need_weak_family(b, "tau*x = tau.x");
  int zt = zero_plus_sf(b, tau_sf());  // (0+tau) = tau
  Rewriter rw(b, SortedTerm(Process::star(tau_sf(), x)));
  rw.apply(b.sym(zt), {0});          // (0+tau)*x
  rw.rewrite(Axiom::FFIR, true);     // tau.(0*x)
  rw.rewrite(Axiom::FA1, true, {1});  // tau.x
  return rw.id();
}

int derive_t2(ProofBuilder& b, const Process& x) {
  need_weak_family(b, "tau.x = tau.x+x");
  int fir = derive_fir(b, x);              // tau*x = tau.x
  int bks = derive_bks1(b, tau_sf(), x);   // tau.(tau*x)+x = tau*x
  Rewriter rw(b, SortedTerm(Process::plus(Process::prefix(tau_sf(), x), x)));
  rw.apply(b.sym(fir), {0});         // tau*x+x
  rw.apply(b.sym(bks), {0});         // (tau.(tau*x)+x)+x
  rw.rewrite(Axiom::A2, true);       // tau.(tau*x)+(x+x)
  rw.rewrite(Axiom::A3, true, {1});  // tau.(tau*x)+x
  rw.apply(bks);                     // tau*x
  rw.apply(fir);                     // tau.x
  return b.sym(rw.id());
}

int derive_b_law(ProofBuilder& b, const ActionTau& alpha, const Process& x,
                 const Process& y) {
  Process xy = Process::plus(x, y);
  SortedTerm start(Process::prefix(
      SumForm::act(alpha),
      Process::plus(Process::prefix(tau_sf(), xy), x)));
  if (b.system() == Relation::branching || b.system() == Relation::eta) {
    Rewriter rw(b, start);
    rw.rewrite(Axiom::FA1, false, {1, 0, 1});  // alpha.(tau.0*(x+y)+x)
    rw.rewrite(Axiom::FA1, false, {1});        // alpha.0*(tau.0*(x+y)+x)
    rw.rewrite(Axiom::FT2, true);              // alpha.0*(x+y)
    rw.rewrite(Axiom::FA1, true, {1});         // alpha.(x+y)
    return rw.id();
  }
  need_weak_family(b, "alpha.(tau.(x+y)+x) = alpha.(x+y)");
  int t2 = derive_t2(b, xy);  // tau.(x+y) = tau.(x+y)+(x+y)
  Rewriter rw(b, start);
  rw.apply(t2, {1, 0});  // alpha.((tau.(x+y)+(x+y))+x)
  auto flat = prove_sum_eq(b, *subterm_at(rw.current(), {1}), b.rhs(t2));
  if (!flat) misuse("absorption rearrangement failed");
  rw.apply(*flat, {1});         // alpha.(tau.(x+y)+(x+y))
  rw.apply(b.sym(t2), {1});     // alpha.tau.(x+y)
  rw.rewrite(Axiom::T1, true);  // alpha.(x+y)
  return rw.id();
}

int derive_alpha_tau_star(ProofBuilder& b, const ActionTau& alpha,
                          const SumForm& s, const Process& x) {
  SortedTerm start(Process::prefix(SumForm::act(alpha),
                                   Process::star(SumForm::plus(s, tau_sf()), x)));
  Rewriter rw(b, start);
  if (b.system() == Relation::delay || b.system() == Relation::weak) {
    rw.rewrite(Axiom::FFIR, true, {1});  // alpha.tau.(s*x)
    rw.rewrite(Axiom::T1, true);         // alpha.(s*x)
    return rw.id();
  }
  if (b.system() != Relation::branching && b.system() != Relation::eta)
    misuse("alpha.(s+tau)*x = alpha.s*x needs a weak-family system");
  rw.rewrite(Axiom::FT1, true, {1});     // alpha.(tau.(s*x)+s*x)
  rw.rewrite(Axiom::A4, false, {1, 0, 1});  // alpha.(tau.(s*x+0)+s*x)
  int bl = derive_b_law(b, alpha, Process::star(s, x), Process::nil());
  rw.apply(bl);                        // alpha.(s*x+0)
  rw.rewrite(Axiom::A4, true, {1});    // alpha.(s*x)
  return rw.id();
}

}  // namespace flatstar
