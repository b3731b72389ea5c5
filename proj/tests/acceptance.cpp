// acceptance — twelve end-to-end checks over the whole library.
//
// Each criterion prints exactly one PASS/FAIL line; the exit status is the
// number of failed criteria.  All randomness is seeded, so a run is
// reproducible bit for bit.
#include <cstdio>
#include <exception>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flatstar/axioms.hpp"
#include "flatstar/equivalence.hpp"
#include "flatstar/normalize.hpp"
#include "flatstar/parallel.hpp"
#include "flatstar/proof.hpp"
#include "flatstar/prover.hpp"
#include "flatstar/semantics.hpp"
#include "flatstar/syntax.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace flatstar;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& note) {
  std::printf("criterion %2d: %s - %s\n", n, ok ? "PASS" : "FAIL",
              note.c_str());
  if (!ok) ++failures;
}

const Relation kAll[] = {Relation::strong, Relation::branching, Relation::eta,
                         Relation::delay, Relation::weak};

Process P(const char* s) { return parse_process(s); }

// ── 1. every axiom of every system is sound for that system ─────────────

struct SchemeShape {
  std::vector<std::string> sf;    // sumform metavariables
  std::vector<std::string> proc;  // process metavariables
  bool alpha = false;
  bool sumform_sort = false;  // A1-A4 exist at the sumform sort too
};

const std::map<Axiom, SchemeShape>& scheme_shapes() {
  static const std::map<Axiom, SchemeShape> m = {
      {Axiom::A1, {{"s", "t"}, {"x", "y"}, false, true}},
      {Axiom::A2, {{"s", "t", "u"}, {"x", "y", "z"}, false, true}},
      {Axiom::A3, {{"s"}, {"x"}, false, true}},
      {Axiom::A4, {{"s"}, {"x"}, false, true}},
      {Axiom::A5, {{"s", "t"}, {"x"}, false, false}},
      {Axiom::A6, {{}, {"x"}, false, false}},
      {Axiom::FA1, {{}, {"x"}, false, false}},
      {Axiom::FA2, {{"s", "t"}, {"x"}, false, false}},
      {Axiom::FT1, {{"s"}, {"x"}, false, false}},
      {Axiom::FT2, {{"s"}, {"x", "y"}, true, false}},
      {Axiom::T3, {{}, {"x", "y"}, true, false}},
      {Axiom::FT3, {{"s"}, {"x", "y"}, false, false}},
      {Axiom::T1, {{}, {"x"}, true, false}},
      {Axiom::FFIR, {{"s"}, {"x"}, false, false}},
  };
  return m;
}

void criterion_soundness() {
  gen::Rng rng(112201);
  gen::Options opt;
  opt.max_size = 10;
  long instances = 0, bad = 0;
  for (Relation k : kAll)
    for (Axiom a : axioms_of(k)) {
      const SchemeShape& sh = scheme_shapes().at(a);
      for (int i = 0; i < 200; ++i) {
        AxiomInstance in;
        in.scheme = a;
        in.l2r = gen::chance(rng, 0.5);
        bool at_sf = sh.sumform_sort && gen::chance(rng, 0.25);
        in.process_sort = !at_sf;
        if (at_sf) {
          for (const std::string& mv : sh.sf)
            in.sf.emplace(mv, gen::random_sumform(rng, opt, 4));
        } else {
          // sumform metavariables of the two-sorted A1-A4 belong to the
          // sumform reading only; the others bind theirs at process sort
          if (!sh.sumform_sort)
            for (const std::string& mv : sh.sf)
              in.sf.emplace(mv, gen::random_sumform(rng, opt, 4));
          for (const std::string& mv : sh.proc)
            in.proc.emplace(mv, gen::random_process(rng, opt));
        }
        if (sh.alpha) in.alpha = gen::random_action(rng, opt);
        std::optional<Equation> eq = instantiate(in);
        if (!eq) {
          ++bad;
          continue;
        }
        ++instances;
        Process l = eq->is_process()
                        ? eq->lhs.process()
                        : Process::prefix(eq->lhs.sumform(), Process::nil());
        Process r = eq->is_process()
                        ? eq->rhs.process()
                        : Process::prefix(eq->rhs.sumform(), Process::nil());
        if (!congruent(l, r, k)) ++bad;
      }
    }
  report(1, bad == 0,
         "axiom soundness: " + std::to_string(instances) +
             " instances across the five systems, " + std::to_string(bad) +
             " violations");
}

// ── 2. derived laws prove and re-check ───────────────────────────────────

void criterion_derived_laws() {
  struct Law {
    const char* lhs;
    const char* rhs;
    Relation k;
  };
  const Law laws[] = {
      {"a.(a*X)+X", "a*X", Relation::strong},           // BKS1
      {"a*(a*X)", "a*X", Relation::strong},             // BKS2
      {"tau.X+X", "tau.X", Relation::delay},            // T2
      {"a.(tau.(X+Y)+X)", "a.(X+Y)", Relation::branching},
      {"a.((b+tau)*X)", "a.(b*X)", Relation::branching},
      {"a.((b+tau)*X)", "a.(b*X)", Relation::delay},
  };
  int ok = 0, total = 0;
  for (const Law& law : laws) {
    ++total;
    Process l = P(law.lhs), r = P(law.rhs);
    ProveOutcome o = prove_congruent(l, r, law.k);
    if (!o.proved()) continue;
    Equation claim{SortedTerm(l), SortedTerm(r)};
    if (check_proof(*o.proof, law.k, claim).ok()) ++ok;
  }
  report(2, ok == total,
         "derived laws: " + std::to_string(ok) + "/" + std::to_string(total) +
             " proved and accepted by the checker");
}

// ── 3 & 4. completeness at desk scale, and the lattice ──────────────────

void criteria_completeness_and_lattice() {
  gen::Rng rng(902113);
  gen::Options opt;
  opt.max_size = 12;
  const int pairs = 2000;
  long disagreements = 0, cert_failures = 0, lattice_bad = 0, proved = 0;
  for (int i = 0; i < pairs; ++i) {
    Process p = gen::random_process(rng, opt);
    Process q = gen::random_process(rng, opt);
    bool cong[5], bis[5];
    for (int ki = 0; ki < 5; ++ki) {
      Relation k = kAll[ki];
      cong[ki] = congruent(p, q, k);
      bis[ki] = bisimilar(p, q, k);
      ProveOutcome o = prove_congruent(p, q, k);
      if (o.proved() != cong[ki]) ++disagreements;
      if (o.proved()) {
        ++proved;
        Equation claim{SortedTerm(p), SortedTerm(q)};
        if (!check_proof(*o.proof, k, claim).ok()) ++cert_failures;
      }
    }
    // strong => branching => {eta, delay} => weak, at both levels
    for (bool* v : {cong, bis}) {
      if (v[0] && !v[1]) ++lattice_bad;
      if (v[1] && (!v[2] || !v[3])) ++lattice_bad;
      if ((v[2] || v[3]) && !v[4]) ++lattice_bad;
    }
  }
  report(3, disagreements == 0 && cert_failures == 0,
         "completeness: " + std::to_string(pairs) + " pairs x 5 relations, " +
             std::to_string(proved) + " proved, " +
             std::to_string(disagreements) + " checker disagreements, " +
             std::to_string(cert_failures) + " rejected certificates");
  report(4, lattice_bad == 0,
         "lattice: " + std::to_string(lattice_bad) +
             " inclusion violations over the same pool");
}

// ── 5. the eta counterexample separating saturation from strong equality ─

void criterion_eta_counterexample() {
  Process p = P("a.tau*tau.tau*b.tau*0+a.tau*b.tau*0");
  Process q = P("a.tau*b.tau*0");
  bool ok = is_strongly_saturated(p, Relation::eta) &&
            is_strongly_saturated(q, Relation::eta) &&
            congruent(p, q, Relation::eta) &&
            !bisimilar(p, q, Relation::strong);
  report(5, ok,
         "eta counterexample: both strongly saturated, eta-congruent, not "
         "strongly bisimilar");
}

// ── 6. normal forms ──────────────────────────────────────────────────────

void criterion_normal_forms() {
  gen::Rng rng(330017);
  gen::Options opt;
  long bad = 0;
  const int terms = 500;
  for (int i = 0; i < terms; ++i) {
    Process p = gen::random_process(rng, opt);
    for (NfMode m : {NfMode::strong, NfMode::branching}) {
      Relation k =
          m == NfMode::strong ? Relation::strong : Relation::branching;
      auto [nf, proof] = to_normal_form(p, m);
      Equation claim{SortedTerm(p), SortedTerm(nf)};
      if (!is_normal_form(nf, m) || !check_proof(proof, k, claim).ok() ||
          !congruent(p, nf, k))
        ++bad;
    }
  }
  report(6, bad == 0,
         "normal forms: " + std::to_string(terms) +
             " terms x 2 modes, " + std::to_string(bad) + " violations");
}

// ── 7. saturation ────────────────────────────────────────────────────────

void criterion_saturation() {
  gen::Rng rng(440021);
  gen::Options opt;
  long bad = 0;
  const int terms = 500;
  for (int i = 0; i < terms; ++i) {
    Process p = gen::random_process(rng, opt);
    for (Relation k : {Relation::eta, Relation::delay, Relation::weak}) {
      auto [s, proof] = saturate(p, k);
      Equation claim{SortedTerm(p), SortedTerm(s)};
      if (!is_saturated(s, k) || !check_proof(proof, k, claim).ok()) ++bad;
      if (k == Relation::eta) continue;  // strong saturation is delay/weak
      auto [ss, sproof] = strong_saturate(p, k);
      Equation sclaim{SortedTerm(p), SortedTerm(ss)};
      if (!is_strongly_saturated(ss, k) || !check_proof(sproof, k, sclaim).ok())
        ++bad;
    }
  }
  report(7, bad == 0,
         "saturation: " + std::to_string(terms) +
             " terms, eta/delay/weak plus strong variants, " +
             std::to_string(bad) + " violations");
}

// ── 8. the rewrite system is confluent and terminating ──────────────────

void criterion_rewriting() {
  gen::Rng rng(550087);
  gen::Options opt;
  opt.max_size = 40;
  long bad = 0;
  const int terms = 500;
  const std::uint64_t fuel = 1ull << 22;
  for (int i = 0; i < terms; ++i) {
    Process p = gen::random_process(rng, opt);
    for (RewriteMode m : {RewriteMode::weak_family, RewriteMode::strong}) {
      try {
        Process inn = rewrite_R(p, m, RewriteStrategy::innermost, fuel);
        Process out = rewrite_R(p, m, RewriteStrategy::outermost, fuel);
        if (inn != out) ++bad;
      } catch (const std::exception&) {
        ++bad;  // fuel exhausted: termination failure at this size
      }
    }
  }
  report(8, bad == 0,
         "rewriting: " + std::to_string(terms) +
             " terms x 2 modes, innermost == outermost, " +
             std::to_string(bad) + " violations");
}

// ── 9. phi is the identity on the prefix fragment; instance counts ──────

Process random_fragment(gen::Rng& rng, gen::Options& opt, int budget) {
  if (budget <= 1) {
    switch (gen::pick(rng, 0, 2)) {
      case 0: return Process::nil();
      case 1: return Process::var(opt.vars[gen::pick(
                  rng, 0, static_cast<int>(opt.vars.size()) - 1)]);
      default:
        return Process::prefix(SumForm::act(gen::random_action(rng, opt)),
                               Process::nil());
    }
  }
  switch (gen::pick(rng, 0, 2)) {
    case 0: {
      int lb = gen::pick(rng, 1, budget - 1);
      return Process::plus(random_fragment(rng, opt, lb),
                           random_fragment(rng, opt, budget - lb));
    }
    case 1:
      return Process::prefix(SumForm::act(gen::random_action(rng, opt)),
                             random_fragment(rng, opt, budget - 1));
    default:
      return Process::star(SumForm::act(gen::random_action(rng, opt)),
                           random_fragment(rng, opt, budget - 1));
  }
}

void criterion_phi() {
  gen::Rng rng(660091);
  gen::Options opt;
  long bad = 0;
  const int terms = 200;
  for (int i = 0; i < terms; ++i) {
    Process p = random_fragment(rng, opt, gen::pick(rng, 1, 12));
    if (!in_prefix_fragment(p) || phi(p) != p) ++bad;
  }
  std::vector<ActionTau> ab = {ActionTau::visible("a"),
                               ActionTau::visible("b")};
  auto count = [](const std::vector<PhiAxiom>& v, Axiom a) {
    long n = 0;
    for (const PhiAxiom& pa : v)
      if (pa.scheme == a) ++n;
    return n;
  };
  auto eb = phi_axioms(Relation::branching, ab);
  auto ed = phi_axioms(Relation::delay, ab);
  auto ew = phi_axioms(Relation::weak, ab);
  bool counts_ok = count(eb, Axiom::FA2) == 9 && count(eb, Axiom::FT1) == 3 &&
                   count(eb, Axiom::FT2) == 3 && count(ed, Axiom::FFIR) == 3 &&
                   count(ew, Axiom::FFIR) == 3 && count(ew, Axiom::FT3) == 3;
  for (const auto& v : {eb, ed, ew})
    for (Axiom a : {Axiom::A5, Axiom::A6, Axiom::FA1})
      if (count(v, a) != 0) counts_ok = false;
  report(9, bad == 0 && counts_ok,
         "phi: identity on " + std::to_string(terms) +
             " fragment terms with " + std::to_string(bad) +
             " violations; instance counts " +
             (counts_ok ? "as expected" : "off"));
}

// ── 10. parallel elimination matches the merge semantics ────────────────

void criterion_expansion() {
  gen::Rng rng(770099);
  gen::Options opt;
  opt.max_size = 10;
  opt.closed = true;
  opt.actions = {"a", "b", "'a", "'b"};
  long bad = 0;
  const int pairs = 100;
  for (int i = 0; i < pairs; ++i) {
    NetProcess net =
        NetProcess::par(NetProcess::leaf(gen::random_process(rng, opt)),
                        NetProcess::leaf(gen::random_process(rng, opt)));
    Process flat = eliminate_parallel(net);
    if (!net_bisimilar(NetProcess::leaf(flat), net, Relation::strong)) ++bad;
  }
  bool counter =
      !is_potential_prefix(build_net_lts(parse_net("a*0 | b*0")).core);
  report(10, bad == 0 && counter,
         "expansion: " + std::to_string(pairs) + " closed pairs, " +
             std::to_string(bad) +
             " mismatches; a*0 | b*0 escapes prefix iteration");
}

// ── 11. stuttering along tau paths with branching-equivalent endpoints ───

void criterion_stuttering() {
  gen::Rng rng(880111);
  gen::Options opt;
  opt.tau_weight = 0.5;
  long paths = 0, bad = 0;
  const long want = 500;
  for (int t = 0; t < 4000 && paths < want; ++t) {
    Lts l = build_lts(gen::random_process(rng, opt));
    auto B = bisimulation(l.core, Relation::branching);
    // depth-first over tau paths (revisits allowed, bounded length)
    std::vector<int> path;
    long seen_here = 0;
    auto dfs = [&](auto&& self, int u) -> void {
      if (seen_here > 200) return;
      path.push_back(u);
      if (path.size() >= 3 && B[path.front()][u]) {
        ++paths;
        ++seen_here;
        for (int v : path)
          if (!B[path.front()][v]) ++bad;
      }
      if (path.size() < 6)
        for (const auto& [lab, v] : l.core.out[u])
          if (lab.is_tau()) self(self, v);
      path.pop_back();
    };
    for (int s = 0; s < l.core.num_states; ++s) dfs(dfs, s);
  }
  report(11, bad == 0 && paths >= want,
         "stuttering: " + std::to_string(paths) +
             " tau paths with equivalent endpoints, " + std::to_string(bad) +
             " off-path states");
}

// ── 12. the fixpoint checker agrees with relation enumeration ───────────

void criterion_oracle_agreement() {
  gen::Rng rng(990127);
  gen::Options opt;
  opt.max_size = 6;
  long corpus = 0, bad = 0;
  const long want = 150;
  for (int t = 0; t < 3000 && corpus < want; ++t) {
    Process p = gen::random_process(rng, opt);
    Process q = gen::random_process(rng, opt);
    Lts joint = build_lts(std::vector<Process>{p, q});
    if (joint.core.num_states > 5) continue;
    ++corpus;
    for (Relation k : kAll) {
      auto fix = bisimulation(joint.core, k);
      auto ref = oracle::brute_union(joint.core, k);
      for (int i = 0; i < joint.core.num_states; ++i)
        for (int j = 0; j < joint.core.num_states; ++j)
          if ((fix[i][j] != 0) != (ref[i][j] != 0)) ++bad;
      bool c = congruent(p, q, k);
      bool bc = oracle::brute_congruent(joint.core, k, joint.roots[0],
                                        joint.roots[1]);
      if (c != bc) ++bad;
    }
  }
  report(12, bad == 0 && corpus >= want,
         "oracle agreement: " + std::to_string(corpus) +
             " joint systems of <= 5 states, " + std::to_string(bad) +
             " disagreements");
}

}  // namespace

int main() {
  criterion_soundness();
  criterion_derived_laws();
  criteria_completeness_and_lattice();
  criterion_eta_counterexample();
  criterion_normal_forms();
  criterion_saturation();
  criterion_rewriting();
  criterion_phi();
  criterion_expansion();
  criterion_stuttering();
  criterion_oracle_agreement();
  return failures;
}
