#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "flatstar/derive.hpp"
#include "flatstar/equivalence.hpp"
#include "flatstar/normalize.hpp"
#include "flatstar/parallel.hpp"
#include "flatstar/semantics.hpp"
#include "flatstar/syntax.hpp"
#include "generators.hpp"

using namespace flatstar;

namespace {

Process P(const std::string& s) { return parse_process(s); }
NetProcess N(const std::string& s) { return parse_net(s); }
NetProcess L(const std::string& s) { return NetProcess::leaf(parse_process(s)); }

// Merge steps recomputed rule by rule: interleaving on both sides plus a
// tau handshake for every complementary pair of visible moves.
std::vector<std::pair<std::string, NetProcess>> ref_steps(const NetProcess& n) {
  std::vector<std::pair<std::string, NetProcess>> out;
  if (n.kind() == NetProcess::Kind::Leaf) {
    for (const auto& [a, d] : action_transitions(n.process()))
      out.emplace_back(a.name(), NetProcess::leaf(d));
    return out;
  }
  auto ls = ref_steps(n.left());
  auto rs = ref_steps(n.right());
  for (const auto& [a, d] : ls)
    out.emplace_back(a, NetProcess::par(d, n.right()));
  for (const auto& [b, e] : rs)
    out.emplace_back(b, NetProcess::par(n.left(), e));
  for (const auto& [a, d] : ls)
    for (const auto& [b, e] : rs)
      if (a != "tau" && b != "tau" && (a == "'" + b || b == "'" + a))
        out.emplace_back("tau", NetProcess::par(d, e));
  return out;
}

std::set<std::string> step_set(
    const std::vector<std::pair<std::string, NetProcess>>& v) {
  std::set<std::string> out;
  for (const auto& [l, t] : v) out.insert(l + " -> " + format_net(t));
  return out;
}

std::set<std::string> step_set(
    const std::vector<std::pair<Label, NetProcess>>& v) {
  std::set<std::string> out;
  for (const auto& [l, t] : v) out.insert(l.display() + " -> " + format_net(t));
  return out;
}

NetProcess random_net(gen::Rng& rng, const gen::Options& opt) {
  NetProcess n = NetProcess::leaf(gen::random_process(rng, opt));
  int extra = gen::pick(rng, 1, 2);
  for (int i = 0; i < extra; ++i) {
    NetProcess m = NetProcess::leaf(gen::random_process(rng, opt));
    n = gen::chance(rng, 0.5) ? NetProcess::par(n, m) : NetProcess::par(m, n);
  }
  return n;
}

std::set<Process> summand_set(const Process& body) {
  std::set<Process> out;
  for (const SortedTerm& t : summands(SortedTerm(body))) out.insert(t.process());
  return out;
}

}  // namespace

TEST_CASE("co-actions pair names with conames") {
  ActionTau a = ActionTau::visible("a");
  ActionTau ca = ActionTau::visible("'a");
  CHECK(co_action(a) == ca);
  CHECK(co_action(ca) == a);
  CHECK(co_action(co_action(ActionTau::visible("go"))) ==
        ActionTau::visible("go"));
  CHECK(complementary(a, ca));
  CHECK(complementary(ca, a));
  CHECK_FALSE(complementary(a, a));
  CHECK_FALSE(complementary(a, ActionTau::visible("b")));
  CHECK_FALSE(complementary(ActionTau::tau(), a));
  CHECK_FALSE(complementary(ActionTau::tau(), ActionTau::tau()));
  CHECK_THROWS_AS(co_action(ActionTau::tau()), std::invalid_argument);
}

TEST_CASE("net parsing and printing") {
  NetProcess n = N("a.0 | 'a.0");
  REQUIRE(n.kind() == NetProcess::Kind::Par);
  CHECK(n.left() == L("a.0"));
  CHECK(n.right() == L("'a.0"));
  CHECK(format_net(n) == "a.0 | 'a.0");
  CHECK(N("a.0") == L("a.0"));
  CHECK(format_net(L("(a+b)*0")) == "(a+b)*0");

  // '|' associates left; parentheses regroup
  CHECK(N("a.0 | b.0 | c.0") ==
        NetProcess::par(NetProcess::par(L("a.0"), L("b.0")), L("c.0")));
  CHECK(N("(a.0 | b.0) | c.0") == N("a.0 | b.0 | c.0"));
  NetProcess r = NetProcess::par(L("a.0"), NetProcess::par(L("b.0"), L("c.0")));
  CHECK(r != N("a.0 | b.0 | c.0"));
  CHECK(format_net(r) == "a.0 | (b.0 | c.0)");
  CHECK(parse_net(format_net(r)) == r);

  CHECK_THROWS_AS(N("a.0 | X"), ParseError);
  CHECK_THROWS_AS(N("a.0 |"), ParseError);
  CHECK_THROWS_AS(N("| a.0"), ParseError);
  CHECK_THROWS_AS(N(""), ParseError);
  CHECK_THROWS_AS(NetProcess::leaf(P("X+a.0")), std::invalid_argument);
}

TEST_CASE("merge steps on pinned nets") {
  CHECK(step_set(net_transitions(N("a.0 | 'a.0"))) ==
        std::set<std::string>{"a -> 0 | 'a.0", "'a -> a.0 | 0",
                              "tau -> 0 | 0"});

  NetProcess m = N("a*0 | b*0");
  auto st = net_transitions(m);
  REQUIRE(st.size() == 2);
  CHECK(st[0].first == Label::visible("a"));
  CHECK(st[1].first == Label::visible("b"));
  CHECK(st[0].second == m);
  CHECK(st[1].second == m);

  CHECK(net_transitions(N("0 | 0")).empty());
  CHECK(step_set(net_transitions(L("a.b.0"))) ==
        std::set<std::string>{"a -> b.0"});
}

TEST_CASE("merge steps agree with the rule oracle") {
  gen::Rng rng(582341);
  gen::Options opt;
  opt.closed = true;
  opt.max_size = 9;
  opt.actions = {"a", "b", "'a", "'b"};
  for (int i = 0; i < 80; ++i) {
    NetProcess n = random_net(rng, opt);
    CAPTURE(format_net(n));
    CHECK(step_set(net_transitions(n)) == step_set(ref_steps(n)));
  }
}

TEST_CASE("net LTS and the prefix-iteration counterexample") {
  NetLts l = build_net_lts(N("a*0 | b*0"));
  CHECK(l.core.num_states == 1);
  REQUIRE(l.core.out.size() == 1);
  CHECK(l.core.out[0].size() == 2);
  CHECK_FALSE(is_potential_prefix(l.core));
  CHECK(is_potential_prefix(build_net_lts(N("a*0 | a*0")).core));

  // a leaf net carries exactly the process LTS
  NetLts l2 = build_net_lts(L("a.b.0+tau.0"));
  Lts l3 = build_lts(P("a.b.0+tau.0"));
  CHECK(l2.core.num_states == l3.core.num_states);
  CHECK(l2.core.out == l3.core.out);
  CHECK(l2.state_of(L("b.0")) == l3.state_of(P("b.0")));
}

TEST_CASE("net bisimilarity embeds the process relations") {
  CHECK(net_bisimilar(N("a.0 | b.0"), L("a.b.0+b.a.0"), Relation::strong));
  // the interleaving alone misses the tau handshake
  CHECK_FALSE(
      net_bisimilar(N("a.0 | 'a.0"), L("a.'a.0+'a.a.0"), Relation::strong));
  CHECK(net_bisimilar(N("a.0 | 'a.0"), L("a.'a.0+('a.a.0+tau.0)"),
                      Relation::strong));
  CHECK(net_bisimilar(N("a*0 | b*0"), N("b*0 | a*0"), Relation::strong));
  CHECK_FALSE(net_bisimilar(N("tau.a.0 | 0"), L("a.0"), Relation::strong));
  CHECK(net_bisimilar(N("tau.a.0 | 0"), L("a.0"), Relation::weak));
}

TEST_CASE("one expansion step") {
  CHECK(expand_pair(P("a*0"), P("b*0")) == P("(a+b)*0"));
  // complementary loop actions handshake forever: tau joins the loop
  CHECK(expand_pair(P("a*0"), P("'a*0")) == P("('a+(a+tau))*0"));

  // body pairs: both interleavings plus the synchronization summand
  Process e = expand_pair(P("0*(a.0*0)"), P("0*('a.0*0)"));
  REQUIRE(e.kind() == Process::Kind::Star);
  CHECK(e.sum() == SumForm::zero());
  CHECK(summand_set(e.body()) ==
        std::set<Process>{
            Process::prefix(SumForm::act(ActionTau::visible("a")),
                            Process::var("0*0 | 0*'a.0*0")),
            Process::prefix(SumForm::act(ActionTau::visible("'a")),
                            Process::var("0*a.0*0 | 0*0")),
            Process::prefix(SumForm::act(ActionTau::tau()),
                            Process::var("0*0 | 0*0")),
        });

  // a loop move may answer the other side's body move
  Process f = expand_pair(P("'b*0"), P("0*(b.0*0)"));
  REQUIRE(f.kind() == Process::Kind::Star);
  CHECK(f.sum() == SumForm::act(ActionTau::visible("'b")));
  CHECK(summand_set(f.body()) ==
        std::set<Process>{
            Process::prefix(SumForm::act(ActionTau::visible("b")),
                            Process::var("'b*0 | 0*0")),
            Process::prefix(SumForm::act(ActionTau::tau()),
                            Process::var("'b*0 | 0*0")),
        });

  CHECK_THROWS_AS(expand_pair(P("a.0"), P("b*0")), std::invalid_argument);
  CHECK_THROWS_AS(expand_pair(P("b*0"), P("a*X")), std::invalid_argument);
  CHECK_THROWS_AS(expand_pair(P("0*((a+b).0*0)"), P("b*0")),
                  std::invalid_argument);
}

TEST_CASE("eliminating the merge") {
  Process one = P("a.b.0+b.0");
  CHECK(eliminate_parallel(NetProcess::leaf(one)) ==
        to_normal_form(one, NfMode::strong).first);
  CHECK(eliminate_parallel(N("0 | 0")) == P("0*0"));
  CHECK(eliminate_parallel(N("a*0 | b*0")) == P("(a+b)*0"));

  Process r = eliminate_parallel(N("a.0 | 'a.0"));
  REQUIRE(r.kind() == Process::Kind::Star);
  CHECK(r.sum() == SumForm::zero());
  CHECK(summand_set(r.body()) ==
        std::set<Process>{
            Process::prefix(SumForm::act(ActionTau::visible("a")),
                            P("0*('a.(0*0))")),
            Process::prefix(SumForm::act(ActionTau::visible("'a")),
                            P("0*(a.(0*0))")),
            Process::prefix(SumForm::act(ActionTau::tau()), P("0*0")),
        });
  CHECK(initial_labels(r) == std::set<Label>{Label::tau(), Label::visible("a"),
                                             Label::visible("'a")});
  CHECK(net_bisimilar(NetProcess::leaf(r), N("a.0 | 'a.0"), Relation::strong));
}

TEST_CASE("elimination matches the merge semantics") {
  gen::Rng rng(271828);
  gen::Options opt;
  opt.closed = true;
  opt.max_size = 8;
  opt.actions = {"a", "b", "'a", "'b"};
  for (int i = 0; i < 40; ++i) {
    Process p = gen::random_process(rng, opt);
    Process q = gen::random_process(rng, opt);
    NetProcess n = NetProcess::par(NetProcess::leaf(p), NetProcess::leaf(q));
    CAPTURE(format_net(n));
    Process e = eliminate_parallel(n);
    CHECK(is_closed(e));
    CHECK(net_bisimilar(NetProcess::leaf(e), n, Relation::strong));
    Process c = eliminate_parallel(
        NetProcess::par(NetProcess::leaf(q), NetProcess::leaf(p)));
    CHECK(bisimilar(e, c, Relation::strong));
  }

  // associativity at the semantic level
  Process l = eliminate_parallel(N("(a.0 | 'a.b.0) | 'b.0"));
  Process r = eliminate_parallel(N("a.0 | ('a.b.0 | 'b.0)"));
  CHECK(bisimilar(l, r, Relation::strong));
}
