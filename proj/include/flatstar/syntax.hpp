#pragma once
// ===== syntax.hpp — two-sorted terms for basic CCS with flat iteration =====
//
// Sorts:
//   sumform   S ::= 0 | alpha | S + S     (alpha a visible action or tau)
//   process   P ::= X | 0 | S.P | P + P | S*P
//
// '+' binds weaker than '.' and '*'.  Lexically, actions are lowercase
// identifiers ("tau" is reserved for the silent action; a leading apostrophe
// marks a co-name), variables start with an uppercase letter.
//
// Terms are immutable trees over shared nodes; equality is structural and
// every node caches its hash and size, so maps keyed by terms stay cheap.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flatstar {

// ── actions and labels ──────────────────────────────────────────────────

// A visible action or the silent action tau.
class ActionTau {
 public:
  ActionTau() : name_("tau") {}
  static ActionTau tau() { return ActionTau(); }
  static ActionTau visible(std::string name);

  bool is_tau() const { return name_ == "tau"; }
  // The action name; "tau" for the silent action.
  const std::string& name() const { return name_; }

  bool operator==(const ActionTau& o) const { return name_ == o.name_; }
  bool operator!=(const ActionTau& o) const { return name_ != o.name_; }
  // Visible actions sort by name, tau sorts last.
  bool operator<(const ActionTau& o) const;

 private:
  std::string name_;
};

int compare(const ActionTau& a, const ActionTau& b);

// A transition label: a visible action, tau, or a process variable.
class Label {
 public:
  enum class Kind { Tau, Visible, Variable };

  static Label tau() { return Label(Kind::Tau, "tau"); }
  static Label visible(std::string name);
  static Label variable(std::string name);
  static Label from_action(const ActionTau& a);

  Kind kind() const { return kind_; }
  bool is_tau() const { return kind_ == Kind::Tau; }
  bool is_action() const { return kind_ != Kind::Variable; }
  // Underlying name: action name, "tau", or the variable.
  const std::string& text() const { return text_; }
  // The action carried by an action label.  Pre: is_action().
  ActionTau action() const;
  // Rendering used in .aut files: "a", "tau", "var:X".
  std::string display() const;

  bool operator==(const Label& o) const {
    return kind_ == o.kind_ && text_ == o.text_;
  }
  bool operator!=(const Label& o) const { return !(*this == o); }
  bool operator<(const Label& o) const;

 private:
  Label(Kind k, std::string t) : kind_(k), text_(std::move(t)) {}
  Kind kind_;
  std::string text_;
};

// ── sumforms ────────────────────────────────────────────────────────────

class SumForm {
 public:
  enum class Kind : std::uint8_t { Zero, Act, Plus };

  SumForm();  // the empty sumform 0
  static SumForm zero() { return SumForm(); }
  static SumForm act(ActionTau a);
  static SumForm plus(SumForm l, SumForm r);

  Kind kind() const;
  const ActionTau& action() const;  // pre: kind() == Act
  const SumForm& left() const;      // pre: kind() == Plus
  const SumForm& right() const;     // pre: kind() == Plus

  int size() const;  // node count
  std::size_t hash() const;
  bool operator==(const SumForm& o) const;
  bool operator!=(const SumForm& o) const { return !(*this == o); }

 private:
  struct Node;
  explicit SumForm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
  friend int compare(const SumForm&, const SumForm&);
};

int compare(const SumForm& a, const SumForm& b);
inline bool operator<(const SumForm& a, const SumForm& b) {
  return compare(a, b) < 0;
}

// ── processes ───────────────────────────────────────────────────────────

class Process {
 public:
  enum class Kind : std::uint8_t { Var, Nil, Prefix, Plus, Star };

  Process();  // the inert process 0
  static Process nil() { return Process(); }
  static Process var(std::string name);
  static Process prefix(SumForm s, Process p);
  static Process plus(Process l, Process r);
  static Process star(SumForm s, Process p);

  Kind kind() const;
  const std::string& var_name() const;  // pre: Var
  const SumForm& sum() const;           // pre: Prefix or Star
  const Process& body() const;          // pre: Prefix or Star
  const Process& left() const;          // pre: Plus
  const Process& right() const;         // pre: Plus

  std::size_t hash() const;
  bool operator==(const Process& o) const;
  bool operator!=(const Process& o) const { return !(*this == o); }

 private:
  struct Node;
  explicit Process(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
  friend int compare(const Process&, const Process&);
  friend int term_size(const Process&);
};

int compare(const Process& a, const Process& b);
inline bool operator<(const Process& a, const Process& b) {
  return compare(a, b) < 0;
}

struct ProcessHash {
  std::size_t operator()(const Process& p) const { return p.hash(); }
};

// Total node count, sumform nodes included: term_size(a.0) == 3.
int term_size(const Process& p);

// ── substitution and variable queries ───────────────────────────────────

using Substitution = std::map<std::string, Process>;

Process substitute(const Process& p, const Substitution& sigma);
std::set<std::string> free_vars(const Process& p);
bool is_closed(const Process& p);

// ── sumform queries ─────────────────────────────────────────────────────

// The set of actions a sumform can perform: init_actions(a + (tau+a)) = {a,tau}.
std::set<ActionTau> init_actions(const SumForm& s);

// s is below t in the sumform preorder iff every initial action of s is one
// of t.  Mutual <= is exactly sumform bisimilarity.
bool sumform_leq(const SumForm& s, const SumForm& t);

// ── paths and sorted terms ──────────────────────────────────────────────

// Positions address children by index: Prefix/Star expose {0: sumform,
// 1: body}, Plus (either sort) exposes {0: left, 1: right}.
using Path = std::vector<int>;

// A term of either sort, tagged.  Equations and proof positions range over
// both sorts, so generic traversal works on this view.
class SortedTerm {
 public:
  explicit SortedTerm(Process p) : is_proc_(true), proc_(std::move(p)) {}
  explicit SortedTerm(SumForm s) : is_proc_(false), sum_(std::move(s)) {}

  bool is_process() const { return is_proc_; }
  const Process& process() const;
  const SumForm& sumform() const;

  bool operator==(const SortedTerm& o) const;
  bool operator!=(const SortedTerm& o) const { return !(*this == o); }

 private:
  bool is_proc_;
  Process proc_;
  SumForm sum_;
};

std::optional<SortedTerm> subterm_at(const SortedTerm& root, const Path& at);
// Replace the subterm at `at`; fails (nullopt) on bad paths or sort clashes.
std::optional<SortedTerm> replace_at(const SortedTerm& root, const Path& at,
                                     const SortedTerm& replacement);

// ── concrete syntax ─────────────────────────────────────────────────────

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) +
                           ")"),
        position(position) {}
  std::size_t position;
};

// Grammar:
//   proc     := sum
//   sum      := prefixed ('+' prefixed)*
//   prefixed := sumform '.' prefixed | sumform '*' prefixed | atom
//   atom     := '0' | VAR | '(' proc ')'
//   sumform  := '0' | ACT | '(' sumform ('+' sumform)* ')'
// Whitespace is insignificant.  parse(format(p)) == p.
Process parse_process(std::string_view text);
SumForm parse_sumform(std::string_view text);

std::string format_process(const Process& p);
// Self-delimiting rendering: sums come out parenthesised, "(a+tau)".
std::string format_sumform(const SumForm& s);
std::string format(const SortedTerm& t);

}  // namespace flatstar
