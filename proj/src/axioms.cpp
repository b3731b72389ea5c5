#include "flatstar/axioms.hpp"

#include <stdexcept>

namespace flatstar {

const std::vector<Axiom>& all_axioms() {
  static const std::vector<Axiom> all = {
      Axiom::A1,  Axiom::A2,  Axiom::A3, Axiom::A4,  Axiom::A5,
      Axiom::A6,  Axiom::FA1, Axiom::FA2, Axiom::FT1, Axiom::FT2,
      Axiom::T3,  Axiom::FT3, Axiom::T1, Axiom::FFIR};
  return all;
}

static const char* kAxiomNames[] = {"A1",  "A2",  "A3", "A4",  "A5",
                                    "A6",  "FA1", "FA2", "FT1", "FT2",
                                    "T3",  "FT3", "T1", "FFIR"};

std::string axiom_name(Axiom a) { return kAxiomNames[static_cast<int>(a)]; }

std::optional<Axiom> axiom_from_name(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kAxiomNames); ++i)
    if (name == kAxiomNames[i]) return static_cast<Axiom>(i);
  return std::nullopt;
}

bool axiom_in_system(Axiom a, Relation k) {
  switch (a) {
    case Axiom::A1:
    case Axiom::A2:
    case Axiom::A3:
    case Axiom::A4:
    case Axiom::A5:
    case Axiom::A6:
    case Axiom::FA1:
    case Axiom::FA2:
      return true;
    case Axiom::FT1:
    case Axiom::FT2:
      return k == Relation::branching || k == Relation::eta;
    case Axiom::T3:
    case Axiom::FT3:
      return k == Relation::eta || k == Relation::weak;
    case Axiom::T1:
    case Axiom::FFIR:
      return k == Relation::delay || k == Relation::weak;
  }
  return false;
}

std::vector<Axiom> axioms_of(Relation k) {
  std::vector<Axiom> out;
  for (Axiom a : all_axioms())
    if (axiom_in_system(a, k)) out.push_back(a);
  return out;
}

Equation::Equation(SortedTerm l, SortedTerm r)
    : lhs(std::move(l)), rhs(std::move(r)) {
  if (lhs.is_process() != rhs.is_process())
    throw std::invalid_argument("equation sides have different sorts");
}

namespace {

struct Keys {
  std::vector<std::string> sf, proc;
  bool alpha = false;
};

// required assignment per scheme, process sort
Keys keys_of(Axiom a) {
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

Keys keys_of_sumform(Axiom a) {
  switch (a) {
    case Axiom::A1: return {{"s", "t"}, {}, false};
    case Axiom::A2: return {{"s", "t", "u"}, {}, false};
    case Axiom::A3: return {{"s"}, {}, false};
    case Axiom::A4: return {{"s"}, {}, false};
    default: return {{"-"}, {}, false};  // unusable marker
  }
}

}  // namespace

std::optional<Equation> instantiate(const AxiomInstance& in) {
  Keys need = in.process_sort ? keys_of(in.scheme) : keys_of_sumform(in.scheme);
  if (!in.process_sort && need.sf.size() == 1 && need.sf[0] == "-")
    return std::nullopt;  // scheme has no sumform reading
  if (in.sf.size() != need.sf.size() || in.proc.size() != need.proc.size() ||
      in.alpha.has_value() != need.alpha)
    return std::nullopt;
  for (const auto& k : need.sf)
    if (!in.sf.count(k)) return std::nullopt;
  for (const auto& k : need.proc)
    if (!in.proc.count(k)) return std::nullopt;

  auto S = [&](const char* k) { return in.sf.at(k); };
  auto P = [&](const char* k) { return in.proc.at(k); };
  auto act = [&] { return SumForm::act(*in.alpha); };
  auto tau = [] { return SumForm::act(ActionTau::tau()); };

  SortedTerm lhs(Process::nil()), rhs(Process::nil());
  if (!in.process_sort) {
    SumForm l = SumForm::zero(), r = SumForm::zero();
    switch (in.scheme) {
      case Axiom::A1:
        l = SumForm::plus(S("s"), S("t"));
        r = SumForm::plus(S("t"), S("s"));
        break;
      case Axiom::A2:
        l = SumForm::plus(SumForm::plus(S("s"), S("t")), S("u"));
        r = SumForm::plus(S("s"), SumForm::plus(S("t"), S("u")));
        break;
      case Axiom::A3:
        l = SumForm::plus(S("s"), S("s"));
        r = S("s");
        break;
      case Axiom::A4:
        l = SumForm::plus(S("s"), SumForm::zero());
        r = S("s");
        break;
      default:
        return std::nullopt;
    }
    lhs = SortedTerm(l);
    rhs = SortedTerm(r);
  } else {
    Process l = Process::nil(), r = Process::nil();
    switch (in.scheme) {
      case Axiom::A1:
        l = Process::plus(P("x"), P("y"));
        r = Process::plus(P("y"), P("x"));
        break;
      case Axiom::A2:
        l = Process::plus(Process::plus(P("x"), P("y")), P("z"));
        r = Process::plus(P("x"), Process::plus(P("y"), P("z")));
        break;
      case Axiom::A3:
        l = Process::plus(P("x"), P("x"));
        r = P("x");
        break;
      case Axiom::A4:
        l = Process::plus(P("x"), Process::nil());
        r = P("x");
        break;
      case Axiom::A5:
        l = Process::prefix(SumForm::plus(S("s"), S("t")), P("x"));
        r = Process::plus(Process::prefix(S("s"), P("x")),
                          Process::prefix(S("t"), P("x")));
        break;
      case Axiom::A6:
        l = Process::prefix(SumForm::zero(), P("x"));
        r = Process::nil();
        break;
      case Axiom::FA1:
        l = Process::star(SumForm::zero(), P("x"));
        r = P("x");
        break;
      case Axiom::FA2: {
        SumForm st = SumForm::plus(S("s"), S("t"));
        l = Process::star(
            S("s"), Process::plus(Process::prefix(S("t"), Process::star(st, P("x"))),
                                  P("x")));
        r = Process::star(st, P("x"));
        break;
      }
      case Axiom::FT1: {
        Process sx = Process::star(S("s"), P("x"));
        l = Process::star(SumForm::plus(S("s"), tau()), P("x"));
        r = Process::plus(Process::prefix(tau(), sx), sx);
        break;
      }
      case Axiom::FT2: {
        Process sxy = Process::star(S("s"), Process::plus(P("x"), P("y")));
        l = Process::prefix(
            act(), Process::star(S("s"), Process::plus(Process::prefix(tau(), sxy),
                                                       P("x"))));
        r = Process::prefix(act(), sxy);
        break;
      }
      case Axiom::T3: {
        Process xty = Process::plus(P("x"), Process::prefix(tau(), P("y")));
        l = Process::prefix(act(), xty);
        r = Process::plus(Process::prefix(act(), xty),
                          Process::prefix(act(), P("y")));
        break;
      }
      case Axiom::FT3: {
        Process xty = Process::plus(P("x"), Process::prefix(tau(), P("y")));
        l = Process::star(S("s"), xty);
        r = Process::star(S("s"),
                          Process::plus(xty, Process::prefix(S("s"), P("y"))));
        break;
      }
      case Axiom::T1:
        l = Process::prefix(act(), Process::prefix(tau(), P("x")));
        r = Process::prefix(act(), P("x"));
        break;
      case Axiom::FFIR:
        l = Process::star(SumForm::plus(S("s"), tau()), P("x"));
        r = Process::prefix(tau(), Process::star(S("s"), P("x")));
        break;
    }
    lhs = SortedTerm(l);
    rhs = SortedTerm(r);
  }
  if (!in.l2r) std::swap(lhs, rhs);
  return Equation(lhs, rhs);
}

}  // namespace flatstar
