#pragma once

// Deterministic random fixtures for the property suites, plus a brute-force
// matcher oracle that re-implements the matching definition directly.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "grw/engine.hpp"
#include "grw/pattern.hpp"
#include "grw/termination.hpp"

namespace grw_test {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline grw::AlphabetsPtr random_alphabets(Rng& rng) {
  static const std::vector<std::string> edge_pool{"A", "B", "C"};
  static const std::vector<std::string> node_pool{"x", "y"};
  std::vector<std::string> edges(edge_pool.begin(),
                                 edge_pool.begin() + rand_int(rng, 1, 3));
  std::vector<std::string> nodes(node_pool.begin(),
                                 node_pool.begin() + rand_int(rng, 1, 2));
  return grw::make_alphabets(std::move(edges), std::move(nodes));
}

inline grw::Graph random_graph(Rng& rng, const grw::AlphabetsPtr& alph,
                               int max_nodes) {
  const int n = rand_int(rng, 0, max_nodes);
  std::vector<std::pair<grw::NodeId, std::string>> nodes;
  for (int i = 0; i < n; ++i)
    nodes.emplace_back(
        "n" + std::to_string(i),
        alph->node_labels()[rand_int(rng, 0, alph->node_count() - 1)]);
  std::vector<std::tuple<grw::NodeId, std::string, grw::NodeId>> edges;
  const double density = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (const std::string& e : alph->edge_labels())
        if (chance(rng, density))
          edges.emplace_back(nodes[s].first, e, nodes[t].first);
  return grw::Graph::make(nodes, edges, alph);
}

// Patterns are sampled from the host half of the time so that matchings
// actually exist; negative conditions are sprinkled on afterwards.
inline grw::Pattern random_pattern(Rng& rng, const grw::AlphabetsPtr& alph,
                                   const grw::Graph& host, int max_nodes) {
  std::vector<std::pair<grw::NodeId, std::string>> nodes;
  std::vector<std::tuple<grw::NodeId, std::string, grw::NodeId>> edges;
  const int want = rand_int(rng, 0, max_nodes);

  if (!host.nodes().empty() && chance(rng, 0.5)) {
    // Project a random induced piece of the host.
    std::vector<grw::NodeId> host_ids;
    for (const auto& [id, label] : host.nodes()) host_ids.push_back(id);
    std::shuffle(host_ids.begin(), host_ids.end(), rng);
    const int k = std::min<int>(want, host_ids.size());
    std::vector<grw::NodeId> chosen(host_ids.begin(), host_ids.begin() + k);
    for (int i = 0; i < k; ++i)
      nodes.emplace_back(
          "q" + std::to_string(i),
          host.alphabets()->node_label(host.label_of(chosen[i])));
    auto index_of = [&](const grw::NodeId& id) -> int {
      for (int i = 0; i < k; ++i)
        if (chosen[i] == id) return i;
      return -1;
    };
    for (const auto& e : host.edges()) {
      int s = index_of(e.src);
      int t = index_of(e.tgt);
      if (s < 0 || t < 0) continue;
      if (chance(rng, 0.8))
        edges.emplace_back("q" + std::to_string(s),
                           host.alphabets()->edge_label(e.label),
                           "q" + std::to_string(t));
    }
  } else {
    for (int i = 0; i < want; ++i)
      nodes.emplace_back(
          "q" + std::to_string(i),
          alph->node_labels()[rand_int(rng, 0, alph->node_count() - 1)]);
    for (int s = 0; s < want; ++s)
      for (int t = 0; t < want; ++t)
        for (const std::string& e : alph->edge_labels())
          if (chance(rng, 0.2))
            edges.emplace_back(nodes[s].first, e, nodes[t].first);
  }

  grw::Graph basic = grw::Graph::make(nodes, edges, alph);
  std::vector<grw::Edge> forbidden;
  std::vector<grw::NodeLabelCond> fin;
  std::vector<grw::NodeLabelCond> fout;
  const int extras = rand_int(rng, 0, 2);
  for (int i = 0; i < extras && !nodes.empty(); ++i) {
    const grw::NodeId a = nodes[rand_int(rng, 0, nodes.size() - 1)].first;
    const grw::NodeId b = nodes[rand_int(rng, 0, nodes.size() - 1)].first;
    const grw::LabelIx e = rand_int(rng, 0, alph->edge_count() - 1);
    switch (rand_int(rng, 0, 2)) {
      case 0:
        if (!basic.has_edge(a, e, b)) forbidden.push_back(grw::Edge{a, e, b});
        break;
      case 1:
        fin.push_back(grw::NodeLabelCond{a, e});
        break;
      default:
        fout.push_back(grw::NodeLabelCond{a, e});
        break;
    }
  }
  return grw::Pattern(std::move(basic), std::move(forbidden), std::move(fin),
                      std::move(fout));
}

// Literal re-statement of the matching definition, independent of the
// engine's backtracking search.
inline bool oracle_is_matching(
    const grw::Pattern& p, const grw::Graph& g,
    const std::vector<std::pair<grw::NodeId, grw::NodeId>>& assignment) {
  auto lookup = [&](const grw::NodeId& pattern_node) -> const grw::NodeId* {
    for (const auto& [pn, gn] : assignment)
      if (pn == pattern_node) return &gn;
    return nullptr;
  };
  // Injective.
  for (std::size_t i = 0; i < assignment.size(); ++i)
    for (std::size_t j = i + 1; j < assignment.size(); ++j)
      if (assignment[i].second == assignment[j].second) return false;
  // Label-preserving.
  for (const auto& [pn, gn] : assignment)
    if (g.label_of(gn) != p.basic().label_of(pn)) return false;
  // Edge-preserving.
  for (const auto& e : p.basic().edges()) {
    bool found = false;
    for (const auto& h : g.edges())
      if (h.src == *lookup(e.src) && h.label == e.label &&
          h.tgt == *lookup(e.tgt))
        found = true;
    if (!found) return false;
  }
  // Forbidden edges.
  for (const auto& e : p.forbidden_edges())
    for (const auto& h : g.edges())
      if (h.src == *lookup(e.src) && h.label == e.label &&
          h.tgt == *lookup(e.tgt))
        return false;
  // Forbidden in/out, quantified over nodes outside the image.
  auto in_image = [&](const grw::NodeId& gn) {
    for (const auto& [pn, mapped] : assignment)
      if (mapped == gn) return true;
    return false;
  };
  for (const auto& c : p.forbidden_in())
    for (const auto& h : g.edges())
      if (h.label == c.label && h.tgt == *lookup(c.node) && !in_image(h.src))
        return false;
  for (const auto& c : p.forbidden_out())
    for (const auto& h : g.edges())
      if (h.label == c.label && h.src == *lookup(c.node) && !in_image(h.tgt))
        return false;
  return true;
}

// All injective assignments, filtered by the definition above.
inline std::vector<grw::Matching> brute_force_matchings(const grw::Pattern& p,
                                                        const grw::Graph& g) {
  std::vector<grw::NodeId> pattern_nodes;
  for (const auto& [id, label] : p.basic().nodes())
    pattern_nodes.push_back(id);
  std::vector<grw::NodeId> graph_nodes;
  for (const auto& [id, label] : g.nodes()) graph_nodes.push_back(id);

  std::vector<grw::Matching> found;
  std::vector<std::pair<grw::NodeId, grw::NodeId>> current;
  std::vector<bool> used(graph_nodes.size(), false);

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == pattern_nodes.size()) {
      if (oracle_is_matching(p, g, current)) {
        grw::Matching mu{current};
        std::sort(mu.assignment.begin(), mu.assignment.end());
        found.push_back(std::move(mu));
      }
      return;
    }
    for (std::size_t i = 0; i < graph_nodes.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      current.emplace_back(pattern_nodes[depth], graph_nodes[i]);
      self(self, depth + 1);
      current.pop_back();
      used[i] = false;
    }
  };
  recurse(recurse, 0);
  std::sort(found.begin(), found.end());
  return found;
}

// Random consistent command sequence over the pattern. When `uniform` is
// set, adds are recorded for the forbidden-edge set and deletes stick to
// pattern edges, making the resulting rule uniform.
inline grw::Rule random_rule(Rng& rng, const grw::AlphabetsPtr& alph,
                             grw::Pattern pattern, const std::string& name,
                             bool uniform, bool allow_del_node) {
  std::vector<grw::NodeId> alive;
  for (const auto& [id, label] : pattern.basic().nodes()) alive.push_back(id);

  std::vector<grw::Command> commands;
  std::vector<grw::Edge> extra_forbidden = pattern.forbidden_edges();
  const int count = rand_int(rng, 0, 4);
  for (int i = 0; i < count && !alive.empty(); ++i) {
    const grw::NodeId a = alive[rand_int(rng, 0, alive.size() - 1)];
    const grw::NodeId b = alive[rand_int(rng, 0, alive.size() - 1)];
    const grw::LabelIx e = rand_int(rng, 0, alph->edge_count() - 1);
    switch (rand_int(rng, 0, allow_del_node ? 4 : 3)) {
      case 0: {  // add_edge
        grw::Edge added{a, e, b};
        if (pattern.basic().has_edge(added)) {
          if (uniform) break;  // could never be declared forbidden
          commands.push_back(grw::Command::add_edge(a, e, b));
          break;
        }
        if (uniform) extra_forbidden.push_back(added);
        commands.push_back(grw::Command::add_edge(a, e, b));
        break;
      }
      case 1: {  // del_edge
        if (uniform) {
          auto edges = pattern.basic().edges();
          std::vector<grw::Edge> alive_edges;
          for (const auto& pe : edges)
            if (std::find(alive.begin(), alive.end(), pe.src) != alive.end() &&
                std::find(alive.begin(), alive.end(), pe.tgt) != alive.end())
              alive_edges.push_back(pe);
          if (alive_edges.empty()) break;
          const grw::Edge& pick =
              alive_edges[rand_int(rng, 0, alive_edges.size() - 1)];
          commands.push_back(
              grw::Command::del_edge(pick.src, pick.label, pick.tgt));
        } else {
          commands.push_back(grw::Command::del_edge(a, e, b));
        }
        break;
      }
      case 2:  // label
        commands.push_back(grw::Command::relabel(
            a, rand_int(rng, 0, alph->node_count() - 1)));
        break;
      case 3: {  // shift
        if (alive.size() < 2) break;
        grw::NodeId other = b;
        if (other == a) {
          for (const auto& candidate : alive)
            if (candidate != a) {
              other = candidate;
              break;
            }
        }
        commands.push_back(grw::Command::shift(a, other));
        break;
      }
      default:  // del_node
        commands.push_back(grw::Command::del_node(a));
        alive.erase(std::find(alive.begin(), alive.end(), a));
        break;
    }
  }

  grw::Pattern final_pattern(pattern.basic(), std::move(extra_forbidden),
                             pattern.forbidden_in(), pattern.forbidden_out());
  return grw::Rule(name, std::move(final_pattern), std::move(commands));
}

inline grw::GRS random_grs(Rng& rng, const grw::AlphabetsPtr& alph,
                           bool uniform_bias) {
  const int rule_count = rand_int(rng, 1, 3);
  std::vector<grw::Rule> rules;
  for (int i = 0; i < rule_count; ++i) {
    grw::Graph host = random_graph(rng, alph, 3);
    grw::Pattern pattern = random_pattern(rng, alph, host, 3);
    if (pattern.basic().node_count() == 0)
      pattern = grw::Pattern::basic_only(grw::Graph::make(
          {{"q0", alph->node_labels()[0]}}, {}, alph));
    rules.push_back(random_rule(rng, alph, std::move(pattern),
                                "r" + std::to_string(i), uniform_bias,
                                !uniform_bias || chance(rng, 0.3)));
  }
  return grw::make_grs(alph, std::move(rules));
}

inline grw::EdgeWeight random_weight(Rng& rng, const grw::AlphabetsPtr& alph,
                                     int bound) {
  std::vector<std::int64_t> values;
  for (std::size_t i = 0; i < alph->edge_count(); ++i)
    values.push_back(rand_int(rng, -bound, bound));
  return grw::EdgeWeight(alph, std::move(values));
}

}  // namespace grw_test
