#include "flatstar/proof.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace flatstar {

const Equation& Proof::claim() const {
  if (steps.empty()) throw std::logic_error("claim of an empty proof");
  return steps.back().conclusion;
}

// ── checking ────────────────────────────────────────────────────────────

CheckResult check_proof(const Proof& p, Relation k) {
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& st = p.steps[i];
    auto fail = [&](const std::string& msg) {
      return CheckResult{ProofStatus::invalid,
                         "step " + std::to_string(i) + ": " + msg};
    };
    auto ref_ok = [&](int r) { return r >= 0 && r < int(i); };
    switch (st.kind) {
      case StepKind::Axiom: {
        if (!axiom_in_system(st.inst.scheme, k))
          return fail(axiom_name(st.inst.scheme) + " is not an axiom of the " +
                      relation_name(k) + " system");
        if (st.inst.process_sort != st.conclusion.is_process())
          return fail("instance sort differs from the conclusion's sort");
        auto eq = instantiate(st.inst);
        if (!eq) return fail("assignment does not fit the scheme");
        if (*eq != st.conclusion)
          return fail("conclusion is not the stated instance of " +
                      axiom_name(st.inst.scheme));
        break;
      }
      case StepKind::Refl:
        if (st.conclusion.lhs != st.conclusion.rhs)
          return fail("refl with distinct sides");
        break;
      case StepKind::Sym: {
        if (!ref_ok(st.a)) return fail("reference out of range");
        const Equation& pr = p.steps[st.a].conclusion;
        if (pr.lhs != st.conclusion.rhs || pr.rhs != st.conclusion.lhs)
          return fail("conclusion is not the premise reversed");
        break;
      }
      case StepKind::Trans: {
        if (!ref_ok(st.a) || !ref_ok(st.b))
          return fail("reference out of range");
        const Equation& ea = p.steps[st.a].conclusion;
        const Equation& eb = p.steps[st.b].conclusion;
        if (ea.rhs != eb.lhs) return fail("premises do not chain");
        if (ea.lhs != st.conclusion.lhs || eb.rhs != st.conclusion.rhs)
          return fail("conclusion differs from the chained premises");
        break;
      }
      case StepKind::Ctx: {
        if (!ref_ok(st.a)) return fail("reference out of range");
        const Equation& sub = p.steps[st.a].conclusion;
        auto at = subterm_at(st.conclusion.lhs, st.path);
        if (!at) return fail("path does not address a subterm of the lhs");
        if (*at != sub.lhs)
          return fail("subterm at the path differs from the premise's lhs");
        auto rep = replace_at(st.conclusion.lhs, st.path, sub.rhs);
        if (!rep) return fail("premise does not fit the slot at the path");
        if (*rep != st.conclusion.rhs)
          return fail("rhs is not the lhs rewritten at the path");
        break;
      }
      case StepKind::Subst: {
        if (!ref_ok(st.a)) return fail("reference out of range");
        const Equation& pr = p.steps[st.a].conclusion;
        if (!pr.is_process() || !st.conclusion.is_process())
          return fail("substitution needs process equations");
        if (substitute(pr.lhs.process(), st.subst) !=
                st.conclusion.lhs.process() ||
            substitute(pr.rhs.process(), st.subst) !=
                st.conclusion.rhs.process())
          return fail("conclusion is not the substituted premise");
        break;
      }
    }
  }
  if (p.steps.empty())
    return {ProofStatus::invalid, "the proof has no steps"};
  return {ProofStatus::valid, ""};
}

CheckResult check_proof(const Proof& p, Relation k, const Equation& claim) {
  CheckResult r = check_proof(p, k);
  if (!r.ok()) return r;
  if (p.claim() != claim)
    return {ProofStatus::invalid, "the proof concludes a different equation"};
  return r;
}

// ── rendering ───────────────────────────────────────────────────────────

namespace {

std::string path_text(const Path& p) {
  if (p.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

std::string equation_text(const Equation& e) {
  return (e.is_process() ? "|- " : "|-sf ") + format(e.lhs) + " = " +
         format(e.rhs);
}

const char* kind_name(StepKind k) {
  switch (k) {
    case StepKind::Axiom: return "axiom";
    case StepKind::Refl: return "refl";
    case StepKind::Sym: return "sym";
    case StepKind::Trans: return "trans";
    case StepKind::Ctx: return "ctx";
    case StepKind::Subst: return "subst";
  }
  return "?";
}

}  // namespace

std::string to_text(const Proof& p) {
  std::string out;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& st = p.steps[i];
    out += std::to_string(i);
    out += ' ';
    out += kind_name(st.kind);
    switch (st.kind) {
      case StepKind::Axiom: {
        out += ' ' + axiom_name(st.inst.scheme);
        out += st.inst.l2r ? " L2R" : " R2L";
        for (const auto& [k, v] : st.inst.sf)
          out += ' ' + k + ":=" + format_sumform(v);
        for (const auto& [k, v] : st.inst.proc)
          out += ' ' + k + ":=" + format_process(v);
        if (st.inst.alpha) out += " alpha:=" + st.inst.alpha->name();
        break;
      }
      case StepKind::Refl:
        break;
      case StepKind::Sym:
        out += ' ' + std::to_string(st.a);
        break;
      case StepKind::Trans:
        out += ' ' + std::to_string(st.a) + ' ' + std::to_string(st.b);
        break;
      case StepKind::Ctx:
        out += ' ' + std::to_string(st.a) + ' ' + path_text(st.path);
        break;
      case StepKind::Subst:
        out += ' ' + std::to_string(st.a);
        for (const auto& [k, v] : st.subst)
          out += ' ' + k + ":=" + format_process(v);
        break;
    }
    out += ' ' + equation_text(st.conclusion) + '\n';
  }
  out += "claim " + equation_text(p.claim()) + '\n';
  return out;
}

// ── parsing ─────────────────────────────────────────────────────────────

namespace {

struct LineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

int parse_int(const std::string& t) {
  std::size_t used = 0;
  int v;
  try {
    v = std::stoi(t, &used);
  } catch (const std::exception&) {
    throw LineError("expected a number, got '" + t + "'");
  }
  if (used != t.size() || v < 0)
    throw LineError("expected a number, got '" + t + "'");
  return v;
}

// the "<lhs> = <rhs>" tail after a turnstile token
Equation parse_equation(const std::vector<std::string>& t, std::size_t ti) {
  if (t.size() != ti + 4 || t[ti + 2] != "=")
    throw LineError("expected '<lhs> = <rhs>' after the turnstile");
  bool proc = t[ti] == "|-";
  try {
    if (proc)
      return Equation(SortedTerm(parse_process(t[ti + 1])),
                      SortedTerm(parse_process(t[ti + 3])));
    return Equation(SortedTerm(parse_sumform(t[ti + 1])),
                    SortedTerm(parse_sumform(t[ti + 3])));
  } catch (const ParseError& e) {
    throw LineError(std::string("bad term: ") + e.what());
  }
}

Path parse_path(const std::string& t) {
  if (t == "-") return {};
  Path out;
  std::size_t at = 0;
  while (at <= t.size()) {
    std::size_t dot = t.find('.', at);
    std::string part = t.substr(at, dot == std::string::npos ? dot : dot - at);
    out.push_back(parse_int(part));
    if (dot == std::string::npos) break;
    at = dot + 1;
  }
  return out;
}

std::pair<std::string, std::string> split_assign(const std::string& t) {
  std::size_t at = t.find(":=");
  if (at == std::string::npos || at == 0 || at + 2 >= t.size())
    throw LineError("expected '<name>:=<term>', got '" + t + "'");
  return {t.substr(0, at), t.substr(at + 2)};
}

ProofStep parse_step(const std::vector<std::string>& t, std::size_t ti) {
  ProofStep st;
  st.conclusion = parse_equation(t, ti);
  const std::string& kind = t[1];
  std::vector<std::string> args(t.begin() + 2, t.begin() + ti);
  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw LineError("'" + kind + "' takes " + std::to_string(n) +
                      " arguments");
  };
  if (kind == "axiom") {
    st.kind = StepKind::Axiom;
    if (args.size() < 2) throw LineError("'axiom' needs a scheme and an orientation");
    auto ax = axiom_from_name(args[0]);
    if (!ax) throw LineError("unknown scheme '" + args[0] + "'");
    st.inst.scheme = *ax;
    if (args[1] != "L2R" && args[1] != "R2L")
      throw LineError("orientation must be L2R or R2L");
    st.inst.l2r = args[1] == "L2R";
    st.inst.process_sort = st.conclusion.is_process();
    for (std::size_t i = 2; i < args.size(); ++i) {
      auto [key, val] = split_assign(args[i]);
      try {
        if (key == "s" || key == "t" || key == "u") {
          if (!st.inst.sf.emplace(key, parse_sumform(val)).second)
            throw LineError("duplicate assignment for '" + key + "'");
        } else if (key == "x" || key == "y" || key == "z") {
          if (!st.inst.proc.emplace(key, parse_process(val)).second)
            throw LineError("duplicate assignment for '" + key + "'");
        } else if (key == "alpha") {
          if (st.inst.alpha) throw LineError("duplicate assignment for 'alpha'");
          SumForm a = parse_sumform(val);
          if (a.kind() != SumForm::Kind::Act)
            throw LineError("'alpha' must be a single action");
          st.inst.alpha = a.action();
        } else {
          throw LineError("unknown metavariable '" + key + "'");
        }
      } catch (const ParseError& e) {
        throw LineError(std::string("bad term: ") + e.what());
      }
    }
  } else if (kind == "refl") {
    st.kind = StepKind::Refl;
    want(0);
  } else if (kind == "sym") {
    st.kind = StepKind::Sym;
    want(1);
    st.a = parse_int(args[0]);
  } else if (kind == "trans") {
    st.kind = StepKind::Trans;
    want(2);
    st.a = parse_int(args[0]);
    st.b = parse_int(args[1]);
  } else if (kind == "ctx") {
    st.kind = StepKind::Ctx;
    want(2);
    st.a = parse_int(args[0]);
    st.path = parse_path(args[1]);
  } else if (kind == "subst") {
    st.kind = StepKind::Subst;
    if (args.empty()) throw LineError("'subst' needs a reference");
    st.a = parse_int(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) {
      auto [key, val] = split_assign(args[i]);
      if (key.empty() || !std::isupper(static_cast<unsigned char>(key[0])))
        throw LineError("substituted names must be variables, got '" + key +
                        "'");
      try {
        if (!st.subst.emplace(key, parse_process(val)).second)
          throw LineError("duplicate assignment for '" + key + "'");
      } catch (const ParseError& e) {
        throw LineError(std::string("bad term: ") + e.what());
      }
    }
  } else {
    throw LineError("unknown step kind '" + kind + "'");
  }
  return st;
}

}  // namespace

ParsedProof parse_proof(const std::string& text) {
  ParsedProof out{{}, std::nullopt, {ProofStatus::valid, ""}};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto malformed = [&](const std::string& msg) {
    out.parse = {ProofStatus::malformed,
                 "line " + std::to_string(lineno) + ": " + msg};
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> t = tokens_of(line);
    if (t.empty() || t[0][0] == '#') continue;
    if (out.claim) return malformed("content after the claim line");
    try {
      if (t[0] == "claim") {
        if (t.size() < 2 || (t[1] != "|-" && t[1] != "|-sf"))
          throw LineError("claim line needs a turnstile");
        out.claim = parse_equation(t, 1);
        continue;
      }
      if (t.size() < 2) throw LineError("incomplete step");
      if (parse_int(t[0]) != int(out.proof.steps.size()))
        throw LineError("step ids must count up from 0");
      std::size_t ti = 0;
      for (std::size_t i = 2; i < t.size(); ++i)
        if (t[i] == "|-" || t[i] == "|-sf") {
          ti = i;
          break;
        }
      if (ti == 0) throw LineError("missing turnstile");
      out.proof.steps.push_back(parse_step(t, ti));
    } catch (const LineError& e) {
      return malformed(e.what());
    }
  }
  ++lineno;
  if (!out.claim) return malformed("missing claim line");
  if (out.proof.steps.empty()) return malformed("the proof has no steps");
  return out;
}

CheckResult verify_text(const std::string& text, Relation k) {
  ParsedProof p = parse_proof(text);
  if (!p.parse.ok()) return p.parse;
  CheckResult r = check_proof(p.proof, k);
  if (!r.ok()) return r;
  if (*p.claim != p.proof.claim())
    return {ProofStatus::invalid, "claim line differs from the last step"};
  return r;
}

CheckResult verify_text(const std::string& text, Relation k,
                        const Equation& claim) {
  CheckResult r = verify_text(text, k);
  if (!r.ok()) return r;
  ParsedProof p = parse_proof(text);
  if (*p.claim != claim)
    return {ProofStatus::invalid, "the proof concludes a different equation"};
  return r;
}

}  // namespace flatstar
