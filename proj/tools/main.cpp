#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "reosem/bisim.hpp"
#include "reosem/io.hpp"
#include "reosem/transform.hpp"

namespace {

// Exit codes: 0 success (and "bisimilar"), 1 negative verdict or validation
// failure, 2 usage or parse errors, 3 assignment budget exceeded.
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw reosem::ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw reosem::ParseError("cannot write file: " + path);
  out << content;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

reosem::ModelFile load_model(const std::string& path) {
  return reosem::deserialize(read_file(path));
}

const reosem::EpsilonConnector& as_epsilon(const reosem::ModelFile& m,
                                           const std::string& path) {
  if (const auto* eps = std::get_if<reosem::EpsilonConnector>(&m.model)) return *eps;
  throw reosem::ParseError(path + " holds an automaton; a coloring model is needed");
}

const reosem::AlphaConnector& as_alpha(const reosem::ModelFile& m,
                                       const std::string& path) {
  if (const auto* alpha = std::get_if<reosem::AlphaConnector>(&m.model)) return *alpha;
  throw reosem::ParseError(path + " holds a coloring model; an automaton is needed");
}

std::string default_prefix(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

struct Options {
  std::uint64_t max_assignments = reosem::kDefaultMaxAssignments;

  std::string compose_spec;
  std::string compose_prefix;

  std::string toca_input;
  std::string toca_output;

  std::string tocol_input;
  std::string tocol_output;

  std::string bisim_ca;
  std::string bisim_eps;
  std::string bisim_mode = "semantic";

  std::string check_input;

  std::string render_input;
  std::string render_output;
  bool render_simplify = false;

  std::string trace_input;
  std::string trace_steps;
  std::string trace_output;
};

int run_compose(const Options& opt) {
  reosem::CircuitSpec spec = reosem::parse_circuit(read_file(opt.compose_spec));
  reosem::ElaboratedCircuit circuit = reosem::elaborate(spec);
  std::string prefix =
      opt.compose_prefix.empty() ? default_prefix(opt.compose_spec) : opt.compose_prefix;
  std::string eps_path = prefix + ".eps.reoml";
  std::string ca_path = prefix + ".ca.reoml";
  write_file(eps_path, reosem::serialize({circuit.universe, circuit.eps}));
  write_file(ca_path, reosem::serialize({circuit.universe, circuit.alpha}));
  std::cout << "wrote " << eps_path << "\n" << "wrote " << ca_path << "\n";
  return 0;
}

int run_to_ca(const Options& opt) {
  reosem::ModelFile m = load_model(opt.toca_input);
  const reosem::EpsilonConnector& eps = as_epsilon(m, opt.toca_input);
  emit(opt.toca_output, reosem::serialize({m.universe, reosem::l_transform(eps)}));
  return 0;
}

int run_to_col(const Options& opt) {
  reosem::ModelFile m = load_model(opt.tocol_input);
  const reosem::AlphaConnector& alpha = as_alpha(m, opt.tocol_input);
  emit(opt.tocol_output, reosem::serialize({m.universe, reosem::inv_l_transform(alpha)}));
  return 0;
}

int run_bisim(const Options& opt) {
  reosem::ModelFile ca_file = load_model(opt.bisim_ca);
  reosem::ModelFile eps_file = load_model(opt.bisim_eps);
  const reosem::AlphaConnector& alpha = as_alpha(ca_file, opt.bisim_ca);
  const reosem::EpsilonConnector& eps = as_epsilon(eps_file, opt.bisim_eps);
  if (!(ca_file.universe == eps_file.universe))
    throw reosem::ValidationError("the two model files declare different universes");
  reosem::MatchMode mode = opt.bisim_mode == "syntactic" ? reosem::MatchMode::Syntactic
                                                         : reosem::MatchMode::Semantic;
  reosem::BisimVerdict verdict =
      reosem::check_bisim(alpha, eps, mode, ca_file.universe, opt.max_assignments);
  if (verdict.bisimilar) {
    std::cout << "bisimilar\n";
    for (const auto& [q, i] : verdict.witness.pairs)
      std::cout << q.display() << " ~ " << i.display() << "\n";
    return 0;
  }
  std::cout << "not bisimilar\n";
  std::cout << "culprit: (" << verdict.culprit->first.display() << ", "
            << verdict.culprit->second.display() << ")\n";
  std::cout << "reason: " << verdict.reason << "\n";
  return kExitFailure;
}

int run_check(const Options& opt) {
  reosem::ModelFile m = load_model(opt.check_input);
  if (const auto* eps = std::get_if<reosem::EpsilonConnector>(&m.model)) {
    // Deserialization already validated; report explicitly anyway.
    reosem::ValidationReport report = reosem::validate_epsilon(*eps);
    for (const std::string& v : report.violations) std::cout << v << "\n";
    std::cout << (report.ok() ? "ok" : "invalid") << "\n";
    return report.ok() ? 0 : kExitFailure;
  }
  const auto& alpha = std::get<reosem::AlphaConnector>(m.model);
  reosem::CaValidationReport report =
      reosem::validate_ca(alpha, m.universe, opt.max_assignments);
  for (const std::string& v : report.violations) std::cout << v << "\n";
  std::cout << "deterministic: " << (report.deterministic ? "yes" : "no") << "\n";
  std::cout << (report.ok() ? "ok" : "invalid") << "\n";
  return report.ok() ? 0 : kExitFailure;
}

int run_render(const Options& opt) {
  reosem::ModelFile m = load_model(opt.render_input);
  emit(opt.render_output, reosem::export_dot(m, opt.render_simplify));
  return 0;
}

int run_trace(const Options& opt) {
  reosem::ModelFile m = load_model(opt.trace_input);
  const reosem::EpsilonConnector& eps = as_epsilon(m, opt.trace_input);
  auto chosen = reosem::resolve_steps(eps, m.universe, read_file(opt.trace_steps));
  emit(opt.trace_output, reosem::format_trace(reosem::export_trace(eps, chosen)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"connector semantics toolbox: coloring models, constraint automata,"
               " transformations and bisimilarity"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--max-assignments", opt.max_assignments,
                 "budget for exhaustive assignment enumeration");

  auto* compose = app.add_subcommand("compose", "elaborate a circuit file into model files");
  compose->add_option("spec", opt.compose_spec, "circuit description file")->required();
  compose->add_option("--out-prefix", opt.compose_prefix,
                      "prefix for the .eps.reoml/.ca.reoml outputs");

  auto* toca = app.add_subcommand("to-ca", "turn a coloring model into an automaton");
  toca->add_option("model", opt.toca_input, "coloring model file")->required();
  toca->add_option("-o,--out", opt.toca_output, "output path (default stdout)");

  auto* tocol = app.add_subcommand("to-col", "turn an automaton into a coloring model");
  tocol->add_option("model", opt.tocol_input, "automaton model file")->required();
  tocol->add_option("-o,--out", opt.tocol_output, "output path (default stdout)");

  auto* bisim = app.add_subcommand("bisim", "compare an automaton against a coloring model");
  bisim->add_option("automaton", opt.bisim_ca, "automaton model file")->required();
  bisim->add_option("model", opt.bisim_eps, "coloring model file")->required();
  bisim->add_option("--mode", opt.bisim_mode, "constraint comparison mode")
      ->check(CLI::IsMember({"syntactic", "semantic"}));

  auto* check = app.add_subcommand("check", "validate a model file");
  check->add_option("model", opt.check_input, "model file")->required();

  auto* render = app.add_subcommand("render", "emit a Graphviz digraph");
  render->add_option("model", opt.render_input, "model file")->required();
  render->add_flag("--simplify", opt.render_simplify, "clean up labels for display");
  render->add_option("-o,--out", opt.render_output, "output path (default stdout)");

  auto* trace = app.add_subcommand("trace", "replay chosen steps through a coloring model");
  trace->add_option("model", opt.trace_input, "coloring model file")->required();
  trace->add_option("--steps", opt.trace_steps, "steps file")->required();
  trace->add_option("-o,--out", opt.trace_output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (compose->parsed()) return run_compose(opt);
    if (toca->parsed()) return run_to_ca(opt);
    if (tocol->parsed()) return run_to_col(opt);
    if (bisim->parsed()) return run_bisim(opt);
    if (check->parsed()) return run_check(opt);
    if (render->parsed()) return run_render(opt);
    if (trace->parsed()) return run_trace(opt);
  } catch (const reosem::ParseError& e) {
    if (e.line() > 0) {
      std::cerr << "error at line " << e.line() << ", column " << e.column() << ": "
                << e.what() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kExitUsage;
  } catch (const reosem::ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const reosem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
