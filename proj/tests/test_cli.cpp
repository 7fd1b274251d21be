#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "reosem/io.hpp"
#include "reosem/transform.hpp"

using namespace reosem;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr combined
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(REOSEM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  int status = pclose(pipe);
  return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(output)};
}

std::string fixture(const std::string& name) {
  return std::string(REOSEM_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Scratch directory for files the tool writes during the tests.
const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("reosem_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("compose writes both model files for a circuit") {
  std::string prefix = (scratch() / "lossyfifo").string();
  RunResult r = run("compose " + fixture("lossyfifo.circuit") + " --out-prefix " + prefix);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("wrote " + prefix + ".eps.reoml") != std::string::npos);
  CHECK(r.output.find("wrote " + prefix + ".ca.reoml") != std::string::npos);

  // Byte-for-byte what the library produces for the same circuit.
  ElaboratedCircuit circuit = elaborate(parse_circuit(slurp(fixture("lossyfifo.circuit"))));
  CHECK(slurp(prefix + ".eps.reoml") == serialize({circuit.universe, circuit.eps}));
  CHECK(slurp(prefix + ".ca.reoml") == serialize({circuit.universe, circuit.alpha}));
}

TEST_CASE("the two transforms invert each other through the tool") {
  std::string ca_out = (scratch() / "fifo_from_eps.ca.reoml").string();
  RunResult to_ca = run("to-ca " + fixture("fifo.eps.reoml") + " -o " + ca_out);
  CHECK(to_ca.exit_code == 0);
  CHECK(slurp(ca_out) == slurp(fixture("fifo.ca.reoml")));

  std::string eps_out = (scratch() / "fifo_from_ca.eps.reoml").string();
  RunResult to_col = run("to-col " + fixture("fifo.ca.reoml") + " -o " + eps_out);
  CHECK(to_col.exit_code == 0);
  CHECK(slurp(eps_out) == slurp(fixture("fifo.eps.reoml")));
}

TEST_CASE("to-ca prints to stdout without an output path") {
  RunResult r = run("to-ca " + fixture("fifo.eps.reoml"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == slurp(fixture("fifo.ca.reoml")));
}

TEST_CASE("the transforms refuse the wrong model kind") {
  RunResult r = run("to-ca " + fixture("fifo.ca.reoml"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("coloring model is needed") != std::string::npos);

  RunResult r2 = run("to-col " + fixture("fifo.eps.reoml"));
  CHECK(r2.exit_code == 2);
}

TEST_CASE("bisim reports the witness for equivalent models") {
  RunResult r = run("bisim " + fixture("fifo.ca.reoml") + " " + fixture("fifo.eps.reoml"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("bisimilar\n") == 0);
  CHECK(r.output.find("FIFO-E(f) ~ FIFO-E(f)") != std::string::npos);
  CHECK(r.output.find("FIFO-F(f) ~ FIFO-F(f)") != std::string::npos);

  RunResult syntactic = run("bisim --mode syntactic " + fixture("fifo.ca.reoml") + " " +
                            fixture("fifo.eps.reoml"));
  CHECK(syntactic.exit_code == 0);
}

TEST_CASE("bisim names the culprit for distinguishable models") {
  RunResult r = run("bisim " + fixture("sync.ca.reoml") + " " + fixture("lossysync.eps.reoml"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("not bisimilar") == 0);
  CHECK(r.output.find("culprit: (Sync(s), LSync(l))") != std::string::npos);
  CHECK(r.output.find("reason: ") != std::string::npos);
}

TEST_CASE("bisim requires matching universes") {
  RunResult r = run("bisim " + fixture("fifo2.ca.reoml") + " " + fixture("fifo.eps.reoml"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("different universes") != std::string::npos);
}

TEST_CASE("check accepts sound files and reports determinism") {
  RunResult eps = run("check " + fixture("fifo.eps.reoml"));
  CHECK(eps.exit_code == 0);
  CHECK(eps.output == "ok\n");

  RunResult ca = run("check " + fixture("fifo.ca.reoml"));
  CHECK(ca.exit_code == 0);
  CHECK(ca.output == "deterministic: yes\nok\n");
}

TEST_CASE("check flags overlapping transitions") {
  RunResult r = run("check " + fixture("nondet.ca.reoml"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("nondeterministic pair") != std::string::npos);
  CHECK(r.output.find("deterministic: no") != std::string::npos);
  CHECK(r.output.find("invalid") != std::string::npos);
}

TEST_CASE("check rejects files whose model breaks an invariant") {
  RunResult r = run("check " + fixture("tampered.eps.reoml"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("domain condition") != std::string::npos);
}

TEST_CASE("to-col refuses automata that do not fit a next function") {
  RunResult r = run("to-col " + fixture("nondet.ca.reoml"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("render emits a digraph and can simplify labels") {
  RunResult r = run("render " + fixture("fifo.ca.reoml"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("digraph") != std::string::npos);
  CHECK(r.output.find("FIFO-E(f)") != std::string::npos);

  std::string prefix = (scratch() / "lossyfifo").string();
  run("compose " + fixture("lossyfifo.circuit") + " --out-prefix " + prefix);
  RunResult plain = run("render " + prefix + ".ca.reoml");
  RunResult tidy = run("render --simplify " + prefix + ".ca.reoml");
  CHECK(plain.output.find("true & true") != std::string::npos);
  CHECK(tidy.output.find("true & true") == std::string::npos);
}

TEST_CASE("trace replays a steps file") {
  RunResult r = run("trace " + fixture("fifo.eps.reoml") + " --steps " + fixture("fifo.steps"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == slurp(fixture("fifo.trace")));
}

TEST_CASE("trace rejects steps the model does not admit") {
  std::string bad_steps = (scratch() / "bad.steps").string();
  std::ofstream(bad_steps) << "{B}\n";
  RunResult r = run("trace " + fixture("fifo.eps.reoml") + " --steps " + bad_steps);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("no admitted coloring with flow set {B}") != std::string::npos);
}

TEST_CASE("usage and parse problems exit with 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate x").exit_code == 2);
  CHECK(run("to-ca /nonexistent/path.reoml").exit_code == 2);

  std::string bad_circuit = (scratch() / "bad.circuit").string();
  std::ofstream(bad_circuit) << "universe {\"foo\"}\ncircuit = ghost\n";
  RunResult r = run("compose " + bad_circuit);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("line 2") != std::string::npos);
  CHECK(r.output.find("undeclared instance") != std::string::npos);

  CHECK(run("--help").exit_code == 0);
  CHECK(run("bisim --help").exit_code == 0);
}

TEST_CASE("an exhausted assignment budget exits with 3") {
  // Determinism of the two-item buffer needs two assignments per overlap.
  RunResult r = run("--max-assignments 1 check " + fixture("fifo2.ca.reoml"));
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("budget") != std::string::npos);
}
