#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "flatstar/equivalence.hpp"
#include "flatstar/normalize.hpp"
#include "flatstar/parallel.hpp"
#include "flatstar/syntax.hpp"

using namespace flatstar;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_with(const std::string& args, const char* redirect) {
  std::string cmd =
      std::string(FLATSTAR_CLI_PATH) + " " + args + " " + redirect;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  REQUIRE(WIFEXITED(st));
  return {WEXITSTATUS(st), out};
}

// stdout only; stderr carries timing and diagnostics
RunResult run(const std::string& args) { return run_with(args, "2>/dev/null"); }
RunResult run_merged(const std::string& args) { return run_with(args, "2>&1"); }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check verdicts and exit codes") {
  RunResult r = run("check tau.0 0 --rel weak --mode equivalence");
  CHECK(r.code == 0);
  CHECK(r.out == "check --rel weak --mode equivalence tau.0 0 -> related\n");

  r = run("check tau.0 0 --rel weak --mode congruence");
  CHECK(r.code == 1);
  CHECK(r.out == "check --rel weak --mode congruence tau.0 0 -> not related\n");

  // congruence is the default mode
  r = run("check '0*X' X --rel strong");
  CHECK(r.code == 0);
  CHECK(r.out == "check --rel strong --mode congruence 0*X X -> related\n");

  CHECK(run("check a.0 b.0 --rel weak").code == 1);
  CHECK(run("check 'a.0 (' 0 --rel weak").code == 2);
  CHECK(run("check a.0 b.0 --rel sideways").code == 2);
  CHECK(run("check a.0 --rel weak").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("terms load from @files") {
  {
    std::ofstream f("cli_term.txt");
    f << "tau.0\n";
  }
  RunResult r = run("check @cli_term.txt 0 --rel weak --mode equivalence");
  CHECK(r.code == 0);
  CHECK(r.out == "check --rel weak --mode equivalence tau.0 0 -> related\n");
  CHECK(run("check @cli_missing.txt 0 --rel weak").code == 2);
  std::remove("cli_term.txt");
}

TEST_CASE("prove writes certificates verify accepts") {
  std::remove("cli_proof.txt");
  RunResult r = run("prove '0*X' X --rel strong --out cli_proof.txt");
  CHECK(r.code == 0);
  CHECK(r.out == "prove --rel strong 0*X X -> proved (cli_proof.txt)\n");
  CHECK(slurp("cli_proof.txt").find("FA1") != std::string::npos);

  r = run("verify cli_proof.txt --rel strong");
  CHECK(r.code == 0);
  CHECK(r.out == "verify --rel strong cli_proof.txt -> valid\n");

  // without --out the certificate itself is the output
  r = run("prove '0*X' X --rel strong");
  CHECK(r.code == 0);
  CHECK(r.out.find("axiom FA1") != std::string::npos);
  CHECK(r.out.find("claim |- 0*X = X") != std::string::npos);

  // a branching certificate cites FT2 and fails under the strong system
  std::remove("cli_ft2.txt");
  r = run("prove 'a.(tau.(X+Y)+X)' 'a.(X+Y)' --rel branching --out cli_ft2.txt");
  CHECK(r.code == 0);
  CHECK(slurp("cli_ft2.txt").find("FT2") != std::string::npos);
  CHECK(run("verify cli_ft2.txt --rel branching").code == 0);
  r = run("verify cli_ft2.txt --rel strong");
  CHECK(r.code == 1);
  CHECK(r.out.find("invalid") != std::string::npos);

  // refusals leave no file behind
  std::remove("cli_none.txt");
  r = run_merged("prove tau.0 0 --rel weak --out cli_none.txt");
  CHECK(r.code == 1);
  CHECK(r.out.find("not congruent") != std::string::npos);
  CHECK(!std::ifstream("cli_none.txt").good());

  {
    std::ofstream f("cli_garbage.txt");
    f << "0 axiom\n";
  }
  CHECK(run("verify cli_garbage.txt --rel strong").code == 2);
  CHECK(run("verify cli_absent.txt --rel strong").code == 2);
  std::remove("cli_proof.txt");
  std::remove("cli_ft2.txt");
  std::remove("cli_garbage.txt");
}

TEST_CASE("lts renders aut text") {
  RunResult r = run("lts 'a*0'");
  CHECK(r.code == 0);
  CHECK(r.out == "des (0,1,1)\n(0,\"a\",0)\n");
  CHECK(run("lts 0").out == "des (0,0,1)\n");
  r = run("lts '0*X' --format aut");
  CHECK(r.code == 0);
  CHECK(r.out.find("var:X") != std::string::npos);
  CHECK(run("lts 'a*0' --format dot").code == 2);
}

TEST_CASE("normalize emits the normal form and its proof") {
  RunResult r = run("normalize X --mode strong");
  CHECK(r.code == 0);
  CHECK(r.out == "0*X\n");

  std::remove("cli_nf.txt");
  r = run("normalize tau.a.0 --mode branching --out cli_nf.txt");
  CHECK(r.code == 0);
  Process nf = parse_process(r.out.substr(0, r.out.size() - 1));
  CHECK(is_normal_form(nf, NfMode::branching));
  CHECK(run("verify cli_nf.txt --rel branching").code == 0);
  std::remove("cli_nf.txt");

  // --strategy switches to the plain rewrite system; --fuel bounds it
  CHECK(run("normalize 0.a.0 --strategy innermost").out == "0\n");
  CHECK(run("normalize '0.a.0+0.b.0' --strategy outermost").out == "0+0\n");
  CHECK(run("normalize '0.a.0+0.b.0' --strategy innermost --fuel 1").code == 2);
  CHECK(run("normalize 0.a.0 --strategy sideways").code == 2);
}

TEST_CASE("saturate emits saturated sums with proofs") {
  std::remove("cli_sat.txt");
  RunResult r = run("saturate a.tau.b.0 --rel weak --out cli_sat.txt");
  CHECK(r.code == 0);
  Process s = parse_process(r.out.substr(0, r.out.size() - 1));
  CHECK(is_saturated(s, Relation::weak));
  CHECK(run("verify cli_sat.txt --rel weak").code == 0);
  std::remove("cli_sat.txt");

  r = run("saturate tau.a.0 --rel delay --strong");
  CHECK(r.code == 0);
  CHECK(is_strongly_saturated(
      parse_process(r.out.substr(0, r.out.size() - 1)), Relation::delay));

  CHECK(run("saturate a.0 --rel strong").code == 2);
}

TEST_CASE("phi translates or refuses with the pinned message") {
  CHECK(run("phi 'a*0'").out == "a*0\n");
  CHECK(run("phi 'a*0'").code == 0);
  RunResult r = run_merged("phi '(a+b)*0'");
  CHECK(r.code == 1);
  CHECK(r.out.find("not a potential prefix-iteration expression") !=
        std::string::npos);
}

TEST_CASE("expand eliminates the merge") {
  RunResult r = run("expand 'a*0 | b*0'");
  CHECK(r.code == 0);
  CHECK(r.out == "(a+b)*0\n");
  Process e = parse_process(r.out.substr(0, r.out.size() - 1));
  CHECK(net_bisimilar(NetProcess::leaf(e), parse_net("a*0 | b*0"),
                      Relation::strong));

  r = run("expand \"a.0 | 'a.0\"");
  CHECK(r.code == 0);
  CHECK(net_bisimilar(
      NetProcess::leaf(parse_process(r.out.substr(0, r.out.size() - 1))),
      parse_net("a.0 | 'a.0"), Relation::strong));
  CHECK(run("expand 'a*0 |'").code == 2);
}

TEST_CASE("commands are deterministic") {
  for (const std::string& cmd : {
           std::string("prove 'a*(a*X)' 'a*X' --rel strong"),
           std::string("lts 'a.b.0+tau.0'"),
           std::string("expand \"a.0 | 'a.0\""),
           std::string("saturate 'a.tau.b.0' --rel eta"),
       }) {
    RunResult r1 = run(cmd), r2 = run(cmd);
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
  }
}
