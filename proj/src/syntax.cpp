#include "flatstar/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace flatstar {

namespace {

std::size_t hash_mix(std::size_t seed, std::size_t v) {
  // boost::hash_combine flavour; good enough for term maps.
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_str(const std::string& s) {
  return std::hash<std::string>{}(s);
}

}  // namespace

// ── ActionTau / Label ───────────────────────────────────────────────────

ActionTau ActionTau::visible(std::string name) {
  if (name.empty() || name == "tau")
    throw std::invalid_argument("invalid visible action name: '" + name + "'");
  ActionTau a;
  a.name_ = std::move(name);
  return a;
}

bool ActionTau::operator<(const ActionTau& o) const {
  return compare(*this, o) < 0;
}

int compare(const ActionTau& a, const ActionTau& b) {
  if (a.is_tau() != b.is_tau()) return a.is_tau() ? 1 : -1;  // tau sorts last
  return a.name().compare(b.name());
}

Label Label::visible(std::string name) {
  if (name.empty() || name == "tau")
    throw std::invalid_argument("invalid visible action name: '" + name + "'");
  return Label(Kind::Visible, std::move(name));
}

Label Label::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return Label(Kind::Variable, std::move(name));
}

Label Label::from_action(const ActionTau& a) {
  return a.is_tau() ? tau() : visible(a.name());
}

ActionTau Label::action() const {
  if (kind_ == Kind::Variable)
    throw std::logic_error("Label::action on a variable label");
  return kind_ == Kind::Tau ? ActionTau::tau() : ActionTau::visible(text_);
}

std::string Label::display() const {
  return kind_ == Kind::Variable ? "var:" + text_ : text_;
}

bool Label::operator<(const Label& o) const {
  // visibles (lex) before tau before variables (lex), matching ActionTau
  auto rank = [](Kind k) {
    return k == Kind::Visible ? 0 : k == Kind::Tau ? 1 : 2;
  };
  if (rank(kind_) != rank(o.kind_)) return rank(kind_) < rank(o.kind_);
  return text_ < o.text_;
}

// ── SumForm ─────────────────────────────────────────────────────────────

struct SumForm::Node {
  Kind kind = Kind::Zero;
  ActionTau act;
  std::optional<SumForm> l, r;
  int size = 1;
  std::size_t hash = 0;
};

SumForm::SumForm() {
  static const std::shared_ptr<const Node> zero = [] {
    auto n = std::make_shared<Node>();
    n->hash = hash_mix(0, 0);
    return n;
  }();
  n_ = zero;
}

SumForm SumForm::act(ActionTau a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Act;
  n->act = a;
  n->hash = hash_mix(1, hash_str(a.name()));
  return SumForm(std::move(n));
}

SumForm SumForm::plus(SumForm l, SumForm r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Plus;
  n->size = 1 + l.size() + r.size();
  n->hash = hash_mix(hash_mix(2, l.hash()), r.hash());
  n->l = std::move(l);
  n->r = std::move(r);
  return SumForm(std::move(n));
}

SumForm::Kind SumForm::kind() const { return n_->kind; }

const ActionTau& SumForm::action() const {
  if (n_->kind != Kind::Act) throw std::logic_error("SumForm::action");
  return n_->act;
}

const SumForm& SumForm::left() const {
  if (n_->kind != Kind::Plus) throw std::logic_error("SumForm::left");
  return *n_->l;
}

const SumForm& SumForm::right() const {
  if (n_->kind != Kind::Plus) throw std::logic_error("SumForm::right");
  return *n_->r;
}

int SumForm::size() const { return n_->size; }
std::size_t SumForm::hash() const { return n_->hash; }

bool SumForm::operator==(const SumForm& o) const {
  return compare(*this, o) == 0;
}

int compare(const SumForm& a, const SumForm& b) {
  if (a.n_ == b.n_) return 0;
  auto ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case SumForm::Kind::Zero:
      return 0;
    case SumForm::Kind::Act:
      return compare(a.action(), b.action());
    case SumForm::Kind::Plus: {
      int c = compare(a.left(), b.left());
      return c != 0 ? c : compare(a.right(), b.right());
    }
  }
  return 0;
}

// ── Process ─────────────────────────────────────────────────────────────

struct Process::Node {
  Kind kind = Kind::Nil;
  std::string var;
  std::optional<SumForm> s;
  std::optional<Process> l, r;  // Prefix/Star use l as the body
  int size = 1;                 // sumform nodes included
  std::size_t hash = 0;
};

Process::Process() {
  static const std::shared_ptr<const Node> nil = [] {
    auto n = std::make_shared<Node>();
    n->hash = hash_mix(10, 0);
    return n;
  }();
  n_ = nil;
}

Process Process::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->hash = hash_mix(11, hash_str(name));
  n->var = std::move(name);
  return Process(std::move(n));
}

Process Process::prefix(SumForm s, Process p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prefix;
  n->size = 1 + s.size() + p.n_->size;
  n->hash = hash_mix(hash_mix(12, s.hash()), p.hash());
  n->s = std::move(s);
  n->l = std::move(p);
  return Process(std::move(n));
}

Process Process::plus(Process l, Process r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Plus;
  n->size = 1 + l.n_->size + r.n_->size;
  n->hash = hash_mix(hash_mix(13, l.hash()), r.hash());
  n->l = std::move(l);
  n->r = std::move(r);
  return Process(std::move(n));
}

Process Process::star(SumForm s, Process p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Star;
  n->size = 1 + s.size() + p.n_->size;
  n->hash = hash_mix(hash_mix(14, s.hash()), p.hash());
  n->s = std::move(s);
  n->l = std::move(p);
  return Process(std::move(n));
}

Process::Kind Process::kind() const { return n_->kind; }

const std::string& Process::var_name() const {
  if (n_->kind != Kind::Var) throw std::logic_error("Process::var_name");
  return n_->var;
}

const SumForm& Process::sum() const {
  if (n_->kind != Kind::Prefix && n_->kind != Kind::Star)
    throw std::logic_error("Process::sum");
  return *n_->s;
}

const Process& Process::body() const {
  if (n_->kind != Kind::Prefix && n_->kind != Kind::Star)
    throw std::logic_error("Process::body");
  return *n_->l;
}

const Process& Process::left() const {
  if (n_->kind != Kind::Plus) throw std::logic_error("Process::left");
  return *n_->l;
}

const Process& Process::right() const {
  if (n_->kind != Kind::Plus) throw std::logic_error("Process::right");
  return *n_->r;
}

std::size_t Process::hash() const { return n_->hash; }

bool Process::operator==(const Process& o) const {
  return compare(*this, o) == 0;
}

int compare(const Process& a, const Process& b) {
  if (a.n_ == b.n_) return 0;
  auto ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Process::Kind::Nil:
      return 0;
    case Process::Kind::Var:
      return a.var_name().compare(b.var_name());
    case Process::Kind::Prefix:
    case Process::Kind::Star: {
      int c = compare(a.sum(), b.sum());
      return c != 0 ? c : compare(a.body(), b.body());
    }
    case Process::Kind::Plus: {
      int c = compare(a.left(), b.left());
      return c != 0 ? c : compare(a.right(), b.right());
    }
  }
  return 0;
}

int term_size(const Process& p) { return p.n_->size; }

// ── substitution / variables ────────────────────────────────────────────

Process substitute(const Process& p, const Substitution& sigma) {
  switch (p.kind()) {
    case Process::Kind::Var: {
      auto it = sigma.find(p.var_name());
      return it == sigma.end() ? p : it->second;
    }
    case Process::Kind::Nil:
      return p;
    case Process::Kind::Prefix:
      return Process::prefix(p.sum(), substitute(p.body(), sigma));
    case Process::Kind::Star:
      return Process::star(p.sum(), substitute(p.body(), sigma));
    case Process::Kind::Plus:
      return Process::plus(substitute(p.left(), sigma),
                           substitute(p.right(), sigma));
  }
  return p;
}

static void collect_vars(const Process& p, std::set<std::string>& out) {
  switch (p.kind()) {
    case Process::Kind::Var:
      out.insert(p.var_name());
      return;
    case Process::Kind::Nil:
      return;
    case Process::Kind::Prefix:
    case Process::Kind::Star:
      collect_vars(p.body(), out);
      return;
    case Process::Kind::Plus:
      collect_vars(p.left(), out);
      collect_vars(p.right(), out);
      return;
  }
}

std::set<std::string> free_vars(const Process& p) {
  std::set<std::string> out;
  collect_vars(p, out);
  return out;
}

bool is_closed(const Process& p) { return free_vars(p).empty(); }

// ── sumform queries ─────────────────────────────────────────────────────

static void collect_inits(const SumForm& s, std::set<ActionTau>& out) {
  switch (s.kind()) {
    case SumForm::Kind::Zero:
      return;
    case SumForm::Kind::Act:
      out.insert(s.action());
      return;
    case SumForm::Kind::Plus:
      collect_inits(s.left(), out);
      collect_inits(s.right(), out);
      return;
  }
}

std::set<ActionTau> init_actions(const SumForm& s) {
  std::set<ActionTau> out;
  collect_inits(s, out);
  return out;
}

bool sumform_leq(const SumForm& s, const SumForm& t) {
  auto is = init_actions(s), it = init_actions(t);
  return std::includes(it.begin(), it.end(), is.begin(), is.end());
}

// ── SortedTerm / paths ──────────────────────────────────────────────────

const Process& SortedTerm::process() const {
  if (!is_proc_) throw std::logic_error("SortedTerm::process on a sumform");
  return proc_;
}

const SumForm& SortedTerm::sumform() const {
  if (is_proc_) throw std::logic_error("SortedTerm::sumform on a process");
  return sum_;
}

bool SortedTerm::operator==(const SortedTerm& o) const {
  if (is_proc_ != o.is_proc_) return false;
  return is_proc_ ? proc_ == o.proc_ : sum_ == o.sum_;
}

static std::optional<SortedTerm> sum_child(const SumForm& s, int i) {
  if (s.kind() != SumForm::Kind::Plus || (i != 0 && i != 1)) return std::nullopt;
  return SortedTerm(i == 0 ? s.left() : s.right());
}

static std::optional<SortedTerm> proc_child(const Process& p, int i) {
  switch (p.kind()) {
    case Process::Kind::Prefix:
    case Process::Kind::Star:
      if (i == 0) return SortedTerm(p.sum());
      if (i == 1) return SortedTerm(p.body());
      return std::nullopt;
    case Process::Kind::Plus:
      if (i == 0) return SortedTerm(p.left());
      if (i == 1) return SortedTerm(p.right());
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::optional<SortedTerm> subterm_at(const SortedTerm& root, const Path& at) {
  SortedTerm cur = root;
  for (int i : at) {
    auto next = cur.is_process() ? proc_child(cur.process(), i)
                                 : sum_child(cur.sumform(), i);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

std::optional<SortedTerm> replace_at(const SortedTerm& root, const Path& at,
                                     const SortedTerm& replacement) {
  if (at.empty()) {
    if (root.is_process() != replacement.is_process()) return std::nullopt;
    return replacement;
  }
  int i = at.front();
  Path rest(at.begin() + 1, at.end());
  auto child = root.is_process() ? proc_child(root.process(), i)
                                 : sum_child(root.sumform(), i);
  if (!child) return std::nullopt;
  auto repl = replace_at(*child, rest, replacement);
  if (!repl) return std::nullopt;

  if (!root.is_process()) {
    const SumForm& s = root.sumform();
    if (repl->is_process()) return std::nullopt;
    return SortedTerm(i == 0 ? SumForm::plus(repl->sumform(), s.right())
                             : SumForm::plus(s.left(), repl->sumform()));
  }
  const Process& p = root.process();
  switch (p.kind()) {
    case Process::Kind::Prefix:
      if (i == 0)
        return repl->is_process()
                   ? std::nullopt
                   : std::optional<SortedTerm>(SortedTerm(
                         Process::prefix(repl->sumform(), p.body())));
      return repl->is_process()
                 ? std::optional<SortedTerm>(
                       SortedTerm(Process::prefix(p.sum(), repl->process())))
                 : std::nullopt;
    case Process::Kind::Star:
      if (i == 0)
        return repl->is_process()
                   ? std::nullopt
                   : std::optional<SortedTerm>(SortedTerm(
                         Process::star(repl->sumform(), p.body())));
      return repl->is_process()
                 ? std::optional<SortedTerm>(
                       SortedTerm(Process::star(p.sum(), repl->process())))
                 : std::nullopt;
    case Process::Kind::Plus:
      if (!repl->is_process()) return std::nullopt;
      return SortedTerm(i == 0 ? Process::plus(repl->process(), p.right())
                               : Process::plus(p.left(), repl->process()));
    default:
      return std::nullopt;
  }
}

// ── lexer ───────────────────────────────────────────────────────────────

namespace {

enum class Tok { Act, Var, Zero, Plus, Dot, Star, LPar, RPar, Pipe, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto isword = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '0': out.push_back({Tok::Zero, "0", start}); ++i; continue;
      case '+': out.push_back({Tok::Plus, "+", start}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
      case '*': out.push_back({Tok::Star, "*", start}); ++i; continue;
      case '(': out.push_back({Tok::LPar, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RPar, ")", start}); ++i; continue;
      case '|': out.push_back({Tok::Pipe, "|", start}); ++i; continue;
      default: break;
    }
    if (c == '\'') {
      ++i;
      if (i >= text.size() || !std::islower(static_cast<unsigned char>(text[i])))
        throw ParseError("expected an action name after co-name marker", start);
      std::size_t ws = i;
      while (i < text.size() && isword(text[i])) ++i;
      std::string name(text.substr(ws, i - ws));
      if (name == "tau")
        throw ParseError("the silent action has no co-name", start);
      out.push_back({Tok::Act, "'" + name, start});
      continue;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      while (i < text.size() && isword(text[i])) ++i;
      out.push_back({Tok::Act, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      while (i < text.size() && isword(text[i])) ++i;
      out.push_back({Tok::Var, std::string(text.substr(start, i - start)), start});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

// Recursive-descent parser with token-level backtracking for the one
// ambiguous spot: after '(' or '0' we may be reading either a sumform head
// (committed by a following '.' or '*') or a process atom.
class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Process parse_process_all() {
    Process p = parse_sum();
    expect_end();
    return p;
  }

  SumForm parse_sumform_all() {
    SumForm s = parse_sumform();
    expect_end();
    return s;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  const Token& take() { return toks_[at_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().pos);
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("trailing input after term");
  }

  Process parse_sum() {
    Process p = parse_prefixed();
    while (peek().kind == Tok::Plus) {
      take();
      p = Process::plus(p, parse_prefixed());
    }
    return p;
  }

  Process parse_prefixed() {
    // Try a sumform head; commit only if '.' or '*' follows.
    std::size_t save = at_;
    bool head_ok = false;
    SumForm head;
    try {
      head = parse_sumform();
      head_ok = peek().kind == Tok::Dot || peek().kind == Tok::Star;
    } catch (const ParseError&) {
      head_ok = false;
    }
    if (head_ok) {
      bool dot = take().kind == Tok::Dot;
      Process body = parse_prefixed();
      return dot ? Process::prefix(head, body) : Process::star(head, body);
    }
    at_ = save;
    return parse_atom();
  }

  Process parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Zero:
        take();
        return Process::nil();
      case Tok::Var:
        return Process::var(take().text);
      case Tok::LPar: {
        take();
        Process p = parse_sum();
        if (peek().kind != Tok::RPar) fail("expected ')'");
        take();
        return p;
      }
      case Tok::Act:
        fail("an action must be followed by '.' or '*'");
      default:
        fail("expected a process term");
    }
  }

  SumForm parse_sumform() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Zero:
        take();
        return SumForm::zero();
      case Tok::Act: {
        std::string name = take().text;
        return SumForm::act(name == "tau" ? ActionTau::tau()
                                          : ActionTau::visible(name));
      }
      case Tok::LPar: {
        take();
        SumForm s = parse_sumform();
        while (peek().kind == Tok::Plus) {
          take();
          s = SumForm::plus(s, parse_sumform());
        }
        if (peek().kind != Tok::RPar) fail("expected ')' in sumform");
        take();
        return s;
      }
      default:
        fail("expected a sumform");
    }
  }
};

}  // namespace

Process parse_process(std::string_view text) {
  return Parser(text).parse_process_all();
}

SumForm parse_sumform(std::string_view text) {
  return Parser(text).parse_sumform_all();
}

// ── printer ─────────────────────────────────────────────────────────────

namespace {

// Inside parens, left operands of '+' print flat so that reparsing the
// left-associated chain rebuilds the same tree.
void print_sum_flat(const SumForm& s, std::string& out);

void print_sum_atom(const SumForm& s, std::string& out) {
  switch (s.kind()) {
    case SumForm::Kind::Zero:
      out += '0';
      return;
    case SumForm::Kind::Act:
      out += s.action().name();
      return;
    case SumForm::Kind::Plus:
      out += '(';
      print_sum_flat(s, out);
      out += ')';
      return;
  }
}

void print_sum_flat(const SumForm& s, std::string& out) {
  if (s.kind() == SumForm::Kind::Plus) {
    print_sum_flat(s.left(), out);
    out += '+';
    print_sum_atom(s.right(), out);
  } else {
    print_sum_atom(s, out);
  }
}

void print_proc_sum(const Process& p, std::string& out);

void print_proc_prefixed(const Process& p, std::string& out) {
  switch (p.kind()) {
    case Process::Kind::Nil:
      out += '0';
      return;
    case Process::Kind::Var:
      out += p.var_name();
      return;
    case Process::Kind::Prefix:
    case Process::Kind::Star:
      print_sum_atom(p.sum(), out);
      out += p.kind() == Process::Kind::Prefix ? '.' : '*';
      print_proc_prefixed(p.body(), out);
      return;
    case Process::Kind::Plus:
      out += '(';
      print_proc_sum(p, out);
      out += ')';
      return;
  }
}

void print_proc_sum(const Process& p, std::string& out) {
  if (p.kind() == Process::Kind::Plus) {
    print_proc_sum(p.left(), out);
    out += '+';
    print_proc_prefixed(p.right(), out);
  } else {
    print_proc_prefixed(p, out);
  }
}

}  // namespace

std::string format_process(const Process& p) {
  std::string out;
  print_proc_sum(p, out);
  return out;
}

std::string format_sumform(const SumForm& s) {
  std::string out;
  print_sum_atom(s, out);
  return out;
}

std::string format(const SortedTerm& t) {
  return t.is_process() ? format_process(t.process())
                        : format_sumform(t.sumform());
}

}  // namespace flatstar
