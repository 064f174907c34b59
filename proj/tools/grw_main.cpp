// Command-line front end: matching, rewriting, normalization, pipelines,
// termination analysis and weight synthesis over the text formats.

#include <cstdlib>
#include <iostream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "grw/engine.hpp"
#include "grw/error.hpp"
#include "grw/io.hpp"
#include "grw/termination.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // incompatible / loops / no weight / fuel
constexpr int kExitUsage = 2;

bool use_color() {
  if (!isatty(fileno(stdout))) return false;
  const char* env = std::getenv("GRW_COLOR");
  return env == nullptr || std::string(env) != "0";
}

grw::StepObserver make_tracer(bool enabled) {
  if (!enabled) return {};
  return [](const std::string& rule, const grw::Matching& mu,
            const grw::Graph& result) {
    std::cout << "trace: " << rule << " [" << mu.render() << "] key="
              << result.key_digest() << "\n";
  };
}

void print_witness_step(const grw::DerivationSpace& space,
                        const grw::GRS& grs, const grw::WitnessStep& step) {
  std::cout << "  " << space.states[step.from].key_digest() << " --"
            << grs.rules[step.rule_index].name() << " [" << step.match_summary
            << "]--> " << space.states[step.to].key_digest() << "\n";
}

int run_match(const std::string& pattern_path, const std::string& graph_path) {
  grw::GRS grs = grw::load_grs(pattern_path);
  grw::Graph g = grw::load_graph(graph_path, grs.alphabets);
  for (const grw::Rule& rule : grs.rules)
    for (const grw::Matching& mu : grw::find_matchings(rule.pattern(), g))
      std::cout << rule.name() << ": " << mu.render() << "\n";
  return kExitOk;
}

int run_rewrite(const std::string& rules_path, const std::string& graph_path,
                bool print_graphs) {
  grw::GRS grs = grw::load_grs(rules_path);
  grw::Graph g = grw::load_graph(graph_path, grs.alphabets);
  for (const grw::RewriteStep& step : grw::step_all(grs, g)) {
    std::cout << grs.rules[step.rule_index].name() << " ["
              << step.matching.render() << "] key=" << step.result.key_digest()
              << "\n";
    if (print_graphs) std::cout << grw::render_graph(step.result);
  }
  return kExitOk;
}

int run_normalize(const std::string& rules_path, const std::string& graph_path,
                  std::size_t fuel, bool trace) {
  grw::GRS grs = grw::load_grs(rules_path);
  grw::Graph g = grw::load_graph(graph_path, grs.alphabets);
  grw::NormalizeResult r =
      grw::normalize(grs, std::move(g), fuel, make_tracer(trace));
  std::cout << "steps: " << r.steps << "\n";
  if (r.fuel_exhausted) std::cout << "status: fuel-exhausted\n";
  std::cout << grw::render_graph(r.graph);
  return r.fuel_exhausted ? kExitNegative : kExitOk;
}

int run_pipeline_cmd(const std::string& pipeline_path,
                     const std::string& graph_path, std::size_t fuel,
                     bool trace) {
  grw::Pipeline pipeline = grw::load_pipeline(pipeline_path);
  if (pipeline.modules.empty()) {
    grw::Graph g = grw::parse_graph(grw::read_file(graph_path));
    std::cout << grw::render_graph(g);
    return kExitOk;
  }
  grw::Graph g =
      grw::load_graph(graph_path, pipeline.modules.front().grs.alphabets);
  grw::PipelineResult r = grw::run_pipeline(pipeline, std::move(g), fuel,
                                            make_tracer(trace));
  for (const auto& [name, steps] : r.module_steps)
    std::cout << "module " << name << ": " << steps << " steps\n";
  if (r.exhausted_module)
    std::cout << "status: fuel-exhausted in module " << *r.exhausted_module
              << "\n";
  std::cout << grw::render_graph(r.graph);
  return r.exhausted_module ? kExitNegative : kExitOk;
}

int run_terminate(const std::string& mode, const std::string& rules_path,
                  const std::string& graph_path,
                  const std::string& weights_path, std::size_t limit) {
  grw::GRS grs = grw::load_grs(rules_path);
  if (mode == "reach") {
    if (graph_path.empty()) {
      std::cerr << "terminate --mode reach requires -g\n";
      return kExitUsage;
    }
    grw::Graph g = grw::load_graph(graph_path, grs.alphabets);
    grw::DerivationSpace space = grw::explore(grs, g, limit);
    grw::TerminationVerdict verdict = grw::decide_termination(space);
    std::cout << "states: " << verdict.states_explored << "\n";
    switch (verdict.kind) {
      case grw::TerminationVerdict::Kind::Terminates:
        std::cout << "verdict: terminates\nheight: " << verdict.height << "\n";
        return kExitOk;
      case grw::TerminationVerdict::Kind::Loops:
        std::cout << "verdict: loops\n";
        if (!verdict.entry_path.empty()) {
          std::cout << "entry:\n";
          for (const auto& step : verdict.entry_path)
            print_witness_step(space, grs, step);
        }
        std::cout << "cycle:\n";
        for (const auto& step : verdict.cycle)
          print_witness_step(space, grs, step);
        return kExitNegative;
      case grw::TerminationVerdict::Kind::LimitExceeded:
        std::cout << "verdict: limit-exceeded\n";
        return kExitNegative;
    }
    return kExitNegative;
  }
  if (weights_path.empty()) {
    std::cerr << "terminate --mode " << mode << " requires --weights\n";
    return kExitUsage;
  }
  grw::WeightsFile wf = grw::load_weights(weights_path, grs.alphabets);
  grw::CompatibilityReport report;
  if (mode == "weights") {
    report = grw::check_compatible(grs, wf.w);
  } else if (mode == "lex") {
    report = grw::check_lexicographic(
        grs, grw::LexicographicWeight{wf.w, wf.pis});
  } else {
    std::cerr << "unknown mode '" << mode << "'\n";
    return kExitUsage;
  }
  std::cout << report.render(use_color());
  return report.compatible() ? kExitOk : kExitNegative;
}

int run_synthesize(const std::string& rules_path) {
  grw::GRS grs = grw::load_grs(rules_path);
  if (grs.alphabets->edge_count() > 20)
    std::cerr << "warning: " << grs.alphabets->edge_count()
              << " edge labels; synthesis enumerates 2^|edge labels| sign "
                 "patterns\n";
  std::optional<grw::EdgeWeight> w = grw::synthesize_weight(grs);
  if (!w) {
    std::cout << "NO-WEIGHT\n";
    return kExitNegative;
  }
  std::string rendered = grw::render_edge_weight(*w);
  if (rendered.empty()) rendered = "# all labels weigh 0\n";
  std::cout << rendered;
  return kExitOk;
}

int run_height(const std::string& rules_path, const std::string& graph_path,
               std::size_t limit) {
  grw::GRS grs = grw::load_grs(rules_path);
  grw::Graph g = grw::load_graph(graph_path, grs.alphabets);
  grw::TerminationVerdict verdict =
      grw::decide_termination_from(grs, g, limit);
  switch (verdict.kind) {
    case grw::TerminationVerdict::Kind::Terminates:
      std::cout << verdict.height << "\n";
      return kExitOk;
    case grw::TerminationVerdict::Kind::Loops:
      std::cout << "not-terminating\n";
      return kExitNegative;
    case grw::TerminationVerdict::Kind::LimitExceeded:
      std::cout << "limit-exceeded\n";
      return kExitNegative;
  }
  return kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph rewriting workbench"};
  app.require_subcommand(1);

  std::string pattern_path;
  std::string rules_path;
  std::string graph_path;
  std::string pipeline_path;
  std::string weights_path;
  std::string mode = "reach";
  std::size_t fuel = 1000;
  std::size_t limit = grw::kDefaultStateLimit;
  bool trace = false;
  bool print_graphs = false;

  CLI::App* match = app.add_subcommand("match", "print all matchings");
  match->add_option("-p,--pattern", pattern_path, "pattern/GRS file")
      ->required();
  match->add_option("-g,--graph", graph_path, "graph file")->required();

  CLI::App* rewrite =
      app.add_subcommand("rewrite", "print every one-step redex");
  rewrite->add_option("-r,--rules", rules_path, "GRS file")->required();
  rewrite->add_option("-g,--graph", graph_path, "graph file")->required();
  rewrite->add_flag("--print-graphs", print_graphs,
                    "render each resulting graph");

  CLI::App* norm = app.add_subcommand(
      "normalize", "rewrite to normal form with the deterministic strategy");
  norm->add_option("-r,--rules", rules_path, "GRS file")->required();
  norm->add_option("-g,--graph", graph_path, "graph file")->required();
  norm->add_option("--fuel", fuel, "maximum number of steps");
  norm->add_flag("--trace", trace, "stream each step");

  CLI::App* pipe = app.add_subcommand("pipeline", "pipeline commands");
  pipe->require_subcommand(1);
  CLI::App* pipe_run = pipe->add_subcommand("run", "run a module pipeline");
  pipe_run->add_option("-p,--pipeline", pipeline_path, "pipeline file")
      ->required();
  pipe_run->add_option("-g,--graph", graph_path, "graph file")->required();
  pipe_run->add_option("--fuel", fuel, "maximum steps per module");
  pipe_run->add_flag("--trace", trace, "stream each step");

  CLI::App* term =
      app.add_subcommand("terminate", "termination analysis");
  term->add_option("-r,--rules", rules_path, "GRS file")->required();
  term->add_option("-g,--graph", graph_path, "graph file (reach mode)");
  term->add_option("--mode", mode, "reach | weights | lex");
  term->add_option("--limit", limit, "state limit (reach mode)");
  term->add_option("--weights", weights_path, "weights file");

  CLI::App* synth =
      app.add_subcommand("synthesize", "search for a compatible edge weight");
  synth->add_option("-r,--rules", rules_path, "GRS file")->required();

  CLI::App* height = app.add_subcommand("height", "exact derivation height");
  height->add_option("-r,--rules", rules_path, "GRS file")->required();
  height->add_option("-g,--graph", graph_path, "graph file")->required();
  height->add_option("--limit", limit, "state limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (match->parsed()) return run_match(pattern_path, graph_path);
    if (rewrite->parsed())
      return run_rewrite(rules_path, graph_path, print_graphs);
    if (norm->parsed())
      return run_normalize(rules_path, graph_path, fuel, trace);
    if (pipe->parsed() && pipe_run->parsed())
      return run_pipeline_cmd(pipeline_path, graph_path, fuel, trace);
    if (term->parsed())
      return run_terminate(mode, rules_path, graph_path, weights_path, limit);
    if (synth->parsed()) return run_synthesize(rules_path);
    if (height->parsed()) return run_height(rules_path, graph_path, limit);
  } catch (const grw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
