#include "grw/engine.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "grw/error.hpp"

namespace grw {

const Rule* GRS::find_rule(const std::string& name) const {
  for (const Rule& r : rules)
    if (r.name() == name) return &r;
  return nullptr;
}

GRS make_grs(AlphabetsPtr alphabets, std::vector<Rule> rules) {
  if (!alphabets) fail(ErrorKind::Internal, "null alphabets");
  std::set<std::string> names;
  for (const Rule& r : rules) {
    if (!(*r.pattern().basic().alphabets() == *alphabets))
      fail(ErrorKind::AlphabetMismatch,
           "rule '" + r.name() + "' uses different alphabets");
    if (!names.insert(r.name()).second)
      fail(ErrorKind::BadRule, "duplicate rule name '" + r.name() + "'");
    validate_rule(r);
  }
  return GRS{std::move(alphabets), std::move(rules)};
}

std::vector<RewriteStep> step_all(const GRS& grs, const Graph& g) {
  if (!(*g.alphabets() == *grs.alphabets))
    fail(ErrorKind::AlphabetMismatch, "graph uses different alphabets");
  std::vector<RewriteStep> steps;
  for (std::size_t i = 0; i < grs.rules.size(); ++i) {
    const Rule& rule = grs.rules[i];
    for (Matching& mu : find_matchings(rule.pattern(), g)) {
      Graph result = apply_commands(g, mu, rule.commands());
      steps.push_back(RewriteStep{i, std::move(mu), std::move(result)});
    }
  }
  return steps;
}

namespace {

// First redex under the deterministic strategy: first rule in declaration
// order with a matching, first matching in canonical order.
std::optional<RewriteStep> first_step(const GRS& grs, const Graph& g) {
  for (std::size_t i = 0; i < grs.rules.size(); ++i) {
    const Rule& rule = grs.rules[i];
    std::vector<Matching> ms = find_matchings(rule.pattern(), g);
    if (ms.empty()) continue;
    Graph result = apply_commands(g, ms.front(), rule.commands());
    return RewriteStep{i, std::move(ms.front()), std::move(result)};
  }
  return std::nullopt;
}

}  // namespace

NormalizeResult normalize(const GRS& grs, Graph g, std::size_t fuel,
                          const StepObserver& observer) {
  NormalizeResult out{std::move(g), 0, false};
  for (;;) {
    std::optional<RewriteStep> step = first_step(grs, out.graph);
    if (!step) return out;
    if (out.steps == fuel) {
      out.fuel_exhausted = true;
      return out;
    }
    if (observer)
      observer(grs.rules[step->rule_index].name(), step->matching,
               step->result);
    out.graph = std::move(step->result);
    ++out.steps;
  }
}

PipelineResult run_pipeline(const Pipeline& pipeline, Graph g,
                            std::size_t fuel_per_module,
                            const StepObserver& observer) {
  PipelineResult out{std::move(g), {}, std::nullopt};
  for (const PipelineModule& module : pipeline.modules) {
    NormalizeResult r =
        normalize(module.grs, std::move(out.graph), fuel_per_module, observer);
    out.graph = std::move(r.graph);
    out.module_steps.emplace_back(module.name, r.steps);
    if (r.fuel_exhausted) {
      out.exhausted_module = module.name;
      return out;
    }
  }
  return out;
}

DerivationSpace explore(const GRS& grs, const Graph& g,
                        std::size_t state_limit) {
  if (state_limit < 1) fail(ErrorKind::LimitExceeded, "state_limit must be ≥ 1");
  DerivationSpace space;
  space.states.push_back(g);
  space.keys.push_back(g.canonical_key());
  space.index_of.emplace(space.keys[0], 0);
  space.transitions.emplace_back();

  std::deque<std::uint32_t> frontier{0};
  while (!frontier.empty()) {
    const std::uint32_t current = frontier.front();
    frontier.pop_front();
    // Copy: states may reallocate while successors are appended.
    const Graph source = space.states[current];
    for (RewriteStep& step : step_all(grs, source)) {
      std::string key = step.result.canonical_key();
      auto it = space.index_of.find(key);
      std::uint32_t successor;
      if (it != space.index_of.end()) {
        successor = it->second;
      } else if (space.states.size() < state_limit) {
        successor = static_cast<std::uint32_t>(space.states.size());
        space.states.push_back(std::move(step.result));
        space.keys.push_back(key);
        space.index_of.emplace(std::move(key), successor);
        space.transitions.emplace_back();
        frontier.push_back(successor);
      } else {
        space.complete = false;
        ++space.dropped_successors;
        continue;
      }
      space.transitions[current].push_back(Transition{
          static_cast<std::uint32_t>(step.rule_index),
          step.matching.render(), successor});
    }
  }
  return space;
}

namespace {

// Iterative DFS over the explored transitions; returns the first cycle
// found together with the path from the start state to its entry.
struct CycleSearch {
  const DerivationSpace& space;
  enum class Color { White, Gray, Black };
  std::vector<Color> color;
  std::vector<WitnessStep> stack;  // edges on the current DFS path

  explicit CycleSearch(const DerivationSpace& space)
      : space(space), color(space.states.size(), Color::White) {}

  struct Frame {
    std::uint32_t state;
    std::size_t next_edge = 0;
  };

  // Returns true when a cycle was found; entry/cycle are filled.
  bool run(std::vector<WitnessStep>& entry, std::vector<WitnessStep>& cycle) {
    std::vector<Frame> frames;
    frames.push_back({0});
    color[0] = Color::Gray;
    while (!frames.empty()) {
      Frame& frame = frames.back();
      const auto& edges = space.transitions[frame.state];
      if (frame.next_edge == edges.size()) {
        color[frame.state] = Color::Black;
        frames.pop_back();
        if (!stack.empty()) stack.pop_back();
        continue;
      }
      const Transition& t = edges[frame.next_edge++];
      WitnessStep step{frame.state, t.rule_index, t.match_summary, t.successor};
      if (color[t.successor] == Color::Gray) {
        stack.push_back(step);
        // Split the path at the first visit of the cycle entry.
        std::size_t split = 0;
        while (split < stack.size() && stack[split].from != t.successor)
          ++split;
        entry.assign(stack.begin(), stack.begin() + split);
        cycle.assign(stack.begin() + split, stack.end());
        return true;
      }
      if (color[t.successor] == Color::White) {
        color[t.successor] = Color::Gray;
        stack.push_back(step);
        frames.push_back({t.successor});
      }
    }
    return false;
  }
};

}  // namespace

TerminationVerdict decide_termination(const DerivationSpace& space) {
  TerminationVerdict verdict;
  verdict.states_explored = space.states_explored();

  std::vector<WitnessStep> entry;
  std::vector<WitnessStep> cycle;
  if (CycleSearch(space).run(entry, cycle)) {
    verdict.kind = TerminationVerdict::Kind::Loops;
    verdict.entry_path = std::move(entry);
    verdict.cycle = std::move(cycle);
    return verdict;
  }
  if (!space.complete) {
    verdict.kind = TerminationVerdict::Kind::LimitExceeded;
    return verdict;
  }

  // Longest path from the start of the (acyclic, complete) space; reverse
  // topological order via iterative post-order.
  std::vector<std::int64_t> height(space.states.size(), -1);
  std::vector<std::pair<std::uint32_t, std::size_t>> frames{{0, 0}};
  while (!frames.empty()) {
    auto& [state, next] = frames.back();
    const auto& edges = space.transitions[state];
    if (next == edges.size()) {
      std::int64_t best = 0;
      for (const Transition& t : edges)
        best = std::max(best, 1 + height[t.successor]);
      height[state] = best;
      frames.pop_back();
      continue;
    }
    const Transition& t = edges[next++];
    if (height[t.successor] < 0) frames.push_back({t.successor, 0});
  }
  verdict.kind = TerminationVerdict::Kind::Terminates;
  verdict.height = static_cast<std::size_t>(height[0]);
  return verdict;
}

TerminationVerdict decide_termination_from(const GRS& grs, const Graph& g,
                                           std::size_t state_limit) {
  return decide_termination(explore(grs, g, state_limit));
}

std::size_t derivation_height_of(const GRS& grs, const Graph& g,
                                 std::size_t state_limit) {
  TerminationVerdict verdict = decide_termination_from(grs, g, state_limit);
  switch (verdict.kind) {
    case TerminationVerdict::Kind::Terminates:
      return verdict.height;
    case TerminationVerdict::Kind::Loops:
      fail(ErrorKind::NotTerminating, "system loops from this graph");
    case TerminationVerdict::Kind::LimitExceeded:
      fail(ErrorKind::LimitExceeded,
           "state limit reached after " +
               std::to_string(verdict.states_explored) + " states");
  }
  fail(ErrorKind::Internal, "unreachable");
}

}  // namespace grw
