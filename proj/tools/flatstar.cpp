// flatstar — command-line front end for the flat-iteration toolkit.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict,
// 2 usage, parse, or internal error. stdout carries the artifact
// (verdict line, certificate, term, or lts); stderr the diagnostics.
#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "flatstar/equivalence.hpp"
#include "flatstar/normalize.hpp"
#include "flatstar/parallel.hpp"
#include "flatstar/proof.hpp"
#include "flatstar/prover.hpp"
#include "flatstar/semantics.hpp"
#include "flatstar/syntax.hpp"

using namespace flatstar;

namespace {

using Clock = std::chrono::steady_clock;

void report_time(const char* cmd, Clock::time_point t0) {
  auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);
  std::cerr << "# " << cmd << ": " << ms.count() << " ms\n";
}

// a leading '@' names a file holding the term
std::string resolve_arg(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::string path = arg.substr(1);
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.pop_back();
  return text;
}

Process parse_arg(const std::string& arg) {
  return parse_process(resolve_arg(arg));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int cmd_check(const std::string& pa, const std::string& qa, Relation k,
              const std::string& mode) {
  Process p = parse_arg(pa), q = parse_arg(qa);
  Clock::time_point t0 = Clock::now();
  bool related =
      mode == "equivalence" ? bisimilar(p, q, k) : congruent(p, q, k);
  report_time("check", t0);
  std::cout << "check --rel " << relation_name(k) << " --mode " << mode << ' '
            << format_process(p) << ' ' << format_process(q) << " -> "
            << (related ? "related" : "not related") << '\n';
  return related ? 0 : 1;
}

int cmd_prove(const std::string& pa, const std::string& qa, Relation k,
              const std::string& out) {
  Process p = parse_arg(pa), q = parse_arg(qa);
  Clock::time_point t0 = Clock::now();
  ProveOutcome o = prove_congruent(p, q, k);
  report_time("prove", t0);
  if (!o.proved()) {
    std::cout << "prove --rel " << relation_name(k) << ' ' << format_process(p)
              << ' ' << format_process(q) << " -> not congruent\n";
    if (!o.witness.empty()) std::cerr << "witness: " << o.witness << '\n';
    return 1;
  }
  std::string text = to_text(*o.proof);
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  write_file(out, text);
  std::cout << "prove --rel " << relation_name(k) << ' ' << format_process(p)
            << ' ' << format_process(q) << " -> proved (" << out << ")\n";
  return 0;
}

int cmd_verify(const std::string& path, Relation k) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  CheckResult r = verify_text(ss.str(), k);
  std::cout << "verify --rel " << relation_name(k) << ' ' << path << " -> ";
  switch (r.status) {
    case ProofStatus::valid:
      std::cout << "valid\n";
      return 0;
    case ProofStatus::invalid:
      std::cout << "invalid: " << r.message << '\n';
      return 1;
    case ProofStatus::malformed:
      break;
  }
  std::cout << "malformed: " << r.message << '\n';
  return 2;
}

int cmd_lts(const std::string& term) {
  std::cout << to_aut(build_lts(parse_arg(term)));
  return 0;
}

int cmd_normalize(const std::string& term, const std::string& mode,
                  const std::string& strategy, std::uint64_t fuel,
                  const std::string& out) {
  Process p = parse_arg(term);
  if (!strategy.empty()) {
    RewriteMode rm = mode == "branching" ? RewriteMode::weak_family
                                         : RewriteMode::strong;
    RewriteStrategy st = strategy == "innermost" ? RewriteStrategy::innermost
                                                 : RewriteStrategy::outermost;
    std::cout << format_process(rewrite_R(p, rm, st, fuel)) << '\n';
    return 0;
  }
  NfMode m = mode == "branching" ? NfMode::branching : NfMode::strong;
  auto [nf, proof] = to_normal_form(p, m);
  if (!out.empty()) write_file(out, to_text(proof));
  std::cout << format_process(nf) << '\n';
  return 0;
}

int cmd_saturate(const std::string& term, Relation k, bool strong,
                 const std::string& out) {
  Process p = parse_arg(term);
  auto [s, proof] = strong ? strong_saturate(p, k) : saturate(p, k);
  if (!out.empty()) write_file(out, to_text(proof));
  std::cout << format_process(s) << '\n';
  return 0;
}

int cmd_phi(const std::string& term) {
  Process p = parse_arg(term);
  try {
    std::cout << format_process(phi(p)) << '\n';
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cmd_expand(const std::string& net) {
  std::cout << format_process(eliminate_parallel(parse_net(resolve_arg(net))))
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flat-iteration process calculus toolkit"};
  app.require_subcommand(1);

  const std::map<std::string, Relation> rel_values{
      {"strong", Relation::strong}, {"branching", Relation::branching},
      {"eta", Relation::eta},       {"delay", Relation::delay},
      {"weak", Relation::weak}};
  auto rel_option = [&](CLI::App* cmd, Relation& slot) {
    cmd->add_option("--rel", slot, "bisimulation flavour")
        ->required()
        ->transform(CLI::CheckedTransformer(rel_values));
  };

  std::string p_arg, q_arg, mode = "congruence";
  Relation rel = Relation::strong;
  CLI::App* check =
      app.add_subcommand("check", "decide equivalence or rooted congruence");
  check->add_option("p", p_arg, "left term (or @file)")->required();
  check->add_option("q", q_arg, "right term (or @file)")->required();
  rel_option(check, rel);
  check->add_option("--mode", mode, "relation variant")
      ->check(CLI::IsMember({"equivalence", "congruence"}));

  std::string prove_out;
  CLI::App* prove =
      app.add_subcommand("prove", "derive an equational certificate");
  prove->add_option("p", p_arg, "left term (or @file)")->required();
  prove->add_option("q", q_arg, "right term (or @file)")->required();
  rel_option(prove, rel);
  prove->add_option("--out", prove_out, "write the certificate here");

  std::string proof_path;
  CLI::App* verify =
      app.add_subcommand("verify", "check a certificate against a system");
  verify->add_option("file", proof_path, "certificate file")->required();
  rel_option(verify, rel);

  std::string term, lts_format = "aut";
  CLI::App* lts = app.add_subcommand("lts", "print the labelled transition system");
  lts->add_option("term", term, "process term (or @file)")->required();
  lts->add_option("--format", lts_format, "output format")
      ->check(CLI::IsMember({"aut"}));

  std::string nf_mode = "strong", strategy, nf_out;
  std::uint64_t fuel = 1ull << 62;
  CLI::App* normalize =
      app.add_subcommand("normalize", "compute the canonical normal form");
  normalize->add_option("term", term, "process term (or @file)")->required();
  normalize->add_option("--mode", nf_mode,
                        "strong keeps the plain laws; branching folds tau")
      ->check(CLI::IsMember({"strong", "branching"}));
  CLI::Option* strat_opt =
      normalize
          ->add_option("--strategy", strategy,
                       "plain rewriting instead of a certified normal form")
          ->check(CLI::IsMember({"innermost", "outermost"}));
  normalize->add_option("--fuel", fuel, "rewrite step budget")
      ->needs(strat_opt);
  normalize->add_option("--out", nf_out, "write the proof here")
      ->excludes(strat_opt);

  std::string sat_out;
  bool sat_strong = false;
  CLI::App* saturate = app.add_subcommand("saturate", "saturate a term");
  saturate->add_option("term", term, "process term (or @file)")->required();
  rel_option(saturate, rel);
  saturate->add_flag("--strong", sat_strong, "strengthen to two-step closure");
  saturate->add_option("--out", sat_out, "write the proof here");

  CLI::App* phi_cmd =
      app.add_subcommand("phi", "translate into prefix iteration");
  phi_cmd->add_option("term", term, "process term (or @file)")->required();

  std::string net_arg;
  CLI::App* expand =
      app.add_subcommand("expand", "eliminate parallel composition");
  expand->add_option("net", net_arg, "parallel composition of closed terms")
      ->required();

  int rc = 0;
  check->callback([&] { rc = cmd_check(p_arg, q_arg, rel, mode); });
  prove->callback([&] { rc = cmd_prove(p_arg, q_arg, rel, prove_out); });
  verify->callback([&] { rc = cmd_verify(proof_path, rel); });
  lts->callback([&] { rc = cmd_lts(term); });
  normalize->callback(
      [&] { rc = cmd_normalize(term, nf_mode, strategy, fuel, nf_out); });
  saturate->callback(
      [&] { rc = cmd_saturate(term, rel, sat_strong, sat_out); });
  phi_cmd->callback([&] { rc = cmd_phi(term); });
  expand->callback([&] { rc = cmd_expand(net_arg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
