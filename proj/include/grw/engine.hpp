#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grw/rule.hpp"

namespace grw {

/// A finite ordered set of rules over shared alphabets. Rule order is the
/// declaration order and drives the deterministic strategy.
struct GRS {
  AlphabetsPtr alphabets;
  std::vector<Rule> rules;

  const Rule* find_rule(const std::string& name) const;
};

/// Validates every rule and the alphabet sharing. Throws on violations.
GRS make_grs(AlphabetsPtr alphabets, std::vector<Rule> rules);

/// Named modules applied in sequence, each run to normal form on the
/// previous module's output.
struct PipelineModule {
  std::string name;
  GRS grs;
  std::string source_path;  // as written in the pipeline file, may be empty
};

struct Pipeline {
  std::vector<PipelineModule> modules;
};

struct RewriteStep {
  std::size_t rule_index;
  Matching matching;
  Graph result;
};

/// Every (rule, matching) redex of g, rules in declaration order, matchings
/// in canonical order. Steps whose result equals g are real steps.
std::vector<RewriteStep> step_all(const GRS& grs, const Graph& g);

struct NormalizeResult {
  Graph graph;
  std::size_t steps = 0;
  bool fuel_exhausted = false;
};

using StepObserver = std::function<void(const std::string& rule_name,
                                        const Matching& matching,
                                        const Graph& result)>;

/// First-rule/first-matching strategy, at most `fuel` steps.
NormalizeResult normalize(const GRS& grs, Graph g, std::size_t fuel,
                          const StepObserver& observer = {});

struct PipelineResult {
  Graph graph;
  std::vector<std::pair<std::string, std::size_t>> module_steps;
  std::optional<std::string> exhausted_module;
};

PipelineResult run_pipeline(const Pipeline& pipeline, Graph g,
                            std::size_t fuel_per_module,
                            const StepObserver& observer = {});

struct Transition {
  std::uint32_t rule_index;
  std::string match_summary;  // Matching::render() of the redex
  std::uint32_t successor;    // index into DerivationSpace::states
};

inline constexpr std::size_t kDefaultStateLimit = 100000;

/// Reachable-state graph under exact-identity state keys. States are
/// discovered breadth-first; index 0 is the start graph.
struct DerivationSpace {
  std::vector<Graph> states;
  std::vector<std::string> keys;  // canonical keys, parallel to states
  std::unordered_map<std::string, std::uint32_t> index_of;
  std::vector<std::vector<Transition>> transitions;
  bool complete = true;
  std::size_t dropped_successors = 0;

  std::size_t states_explored() const { return states.size(); }
};

DerivationSpace explore(const GRS& grs, const Graph& g,
                        std::size_t state_limit = kDefaultStateLimit);

struct WitnessStep {
  std::uint32_t from;
  std::uint32_t rule_index;
  std::string match_summary;
  std::uint32_t to;
};

struct TerminationVerdict {
  enum class Kind { Terminates, Loops, LimitExceeded };

  Kind kind;
  std::size_t height = 0;               // Terminates only
  std::vector<WitnessStep> entry_path;  // Loops only: start → cycle entry
  std::vector<WitnessStep> cycle;       // Loops only: first == last state
  std::size_t states_explored = 0;
};

/// Loops iff a cycle (including self-loops) is reachable in the explored
/// space; Terminates with the exact derivation height when the space is
/// complete and acyclic; LimitExceeded otherwise.
TerminationVerdict decide_termination(const DerivationSpace& space);
TerminationVerdict decide_termination_from(
    const GRS& grs, const Graph& g,
    std::size_t state_limit = kDefaultStateLimit);

/// Longest-path length from the start state of a complete acyclic space.
/// Throws NotTerminating / LimitExceeded.
std::size_t derivation_height_of(const GRS& grs, const Graph& g,
                                 std::size_t state_limit = kDefaultStateLimit);

}  // namespace grw
