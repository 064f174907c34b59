#include "grw/pattern.hpp"

#include <algorithm>
#include <set>

#include "grw/error.hpp"

namespace grw {

Pattern::Pattern(Graph basic, std::vector<Edge> forbidden_edges,
                 std::vector<NodeLabelCond> forbidden_in,
                 std::vector<NodeLabelCond> forbidden_out)
    : basic_(std::move(basic)),
      forbidden_edges_(std::move(forbidden_edges)),
      forbidden_in_(std::move(forbidden_in)),
      forbidden_out_(std::move(forbidden_out)) {
  std::sort(forbidden_edges_.begin(), forbidden_edges_.end());
  forbidden_edges_.erase(
      std::unique(forbidden_edges_.begin(), forbidden_edges_.end()),
      forbidden_edges_.end());
  std::sort(forbidden_in_.begin(), forbidden_in_.end());
  forbidden_in_.erase(std::unique(forbidden_in_.begin(), forbidden_in_.end()),
                      forbidden_in_.end());
  std::sort(forbidden_out_.begin(), forbidden_out_.end());
  forbidden_out_.erase(
      std::unique(forbidden_out_.begin(), forbidden_out_.end()),
      forbidden_out_.end());
}

Pattern Pattern::basic_only(Graph basic) {
  return Pattern(std::move(basic), {}, {}, {});
}

bool Pattern::has_forbidden_in(const NodeId& n, LabelIx e) const {
  return std::binary_search(forbidden_in_.begin(), forbidden_in_.end(),
                            NodeLabelCond{n, e});
}

bool Pattern::has_forbidden_out(const NodeId& n, LabelIx e) const {
  return std::binary_search(forbidden_out_.begin(), forbidden_out_.end(),
                            NodeLabelCond{n, e});
}

std::vector<PatternIssue> check_pattern(const Pattern& p) {
  std::vector<PatternIssue> issues;
  const Graph& b = p.basic();
  const auto& alph = *b.alphabets();

  for (const auto& e : p.forbidden_edges()) {
    if (b.has_edge(e))
      issues.push_back({PatternIssue::Kind::ForbiddenOverlapsPattern,
                        "forbidden edge " + e.src + " " +
                            alph.edge_label(e.label) + " " + e.tgt +
                            " is a pattern edge"});
    if (!b.has_node(e.src) || !b.has_node(e.tgt))
      issues.push_back({PatternIssue::Kind::DanglingNegativeCondition,
                        "forbidden edge references unknown node " +
                            (b.has_node(e.src) ? e.tgt : e.src)});
  }
  for (const auto& c : p.forbidden_in())
    if (!b.has_node(c.node))
      issues.push_back({PatternIssue::Kind::DanglingNegativeCondition,
                        "forbidden in-edge references unknown node " + c.node});
  for (const auto& c : p.forbidden_out())
    if (!b.has_node(c.node))
      issues.push_back(
          {PatternIssue::Kind::DanglingNegativeCondition,
           "forbidden out-edge references unknown node " + c.node});
  return issues;
}

const NodeId* Matching::find(const NodeId& pattern_node) const {
  auto it = std::lower_bound(
      assignment.begin(), assignment.end(), pattern_node,
      [](const auto& entry, const NodeId& key) { return entry.first < key; });
  if (it == assignment.end() || it->first != pattern_node) return nullptr;
  return &it->second;
}

std::vector<NodeId> Matching::image() const {
  std::vector<NodeId> out;
  out.reserve(assignment.size());
  for (const auto& [p, g] : assignment) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Matching::render() const {
  std::string out;
  for (const auto& [p, g] : assignment) {
    if (!out.empty()) out += ' ';
    out += p;
    out += "->";
    out += g;
  }
  return out;
}

std::vector<Edge> mapped_pattern_edges(const Pattern& p, const Matching& mu) {
  std::vector<Edge> out;
  out.reserve(p.basic().edge_count());
  for (const auto& e : p.basic().edges()) {
    const NodeId* s = mu.find(e.src);
    const NodeId* t = mu.find(e.tgt);
    if (!s || !t)
      fail(ErrorKind::Internal, "matching does not cover pattern edge");
    out.push_back(Edge{*s, e.label, *t});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Negative conditions quantify over the completed image, so they run after
// the assignment is total.
bool negatives_hold(const Pattern& p, const Graph& g, const Matching& mu) {
  for (const auto& e : p.forbidden_edges()) {
    const NodeId* s = mu.find(e.src);
    const NodeId* t = mu.find(e.tgt);
    if (s && t && g.has_edge(*s, e.label, *t)) return false;
  }
  if (p.forbidden_in().empty() && p.forbidden_out().empty()) return true;

  const std::vector<NodeId> image = mu.image();
  auto in_image = [&](const NodeId& n) {
    return std::binary_search(image.begin(), image.end(), n);
  };
  // Only nodes outside the image can violate in/out conditions.
  for (const auto& e : g.edges()) {
    if (in_image(e.src) && in_image(e.tgt)) continue;
    for (const auto& c : p.forbidden_in()) {
      if (e.label != c.label) continue;
      const NodeId* n = mu.find(c.node);
      if (n && e.tgt == *n && !in_image(e.src)) return false;
    }
    for (const auto& c : p.forbidden_out()) {
      if (e.label != c.label) continue;
      const NodeId* n = mu.find(c.node);
      if (n && e.src == *n && !in_image(e.tgt)) return false;
    }
  }
  return true;
}

struct SearchState {
  const Pattern& pattern;
  const Graph& graph;
  std::vector<NodeId> order;  // pattern nodes, most-constrained first
  std::vector<std::pair<NodeId, NodeId>> partial;  // pattern → graph
  std::set<NodeId> used;
  std::vector<Matching> found;

  const NodeId* assigned(const NodeId& p) const {
    for (const auto& [pn, gn] : partial)
      if (pn == p) return &gn;
    return nullptr;
  }

  bool compatible(const NodeId& pattern_node, const NodeId& candidate) const {
    if (graph.label_of(candidate) != pattern.basic().label_of(pattern_node))
      return false;
    if (used.count(candidate)) return false;
    // Pattern edges between the new node and already-assigned ones must be
    // present in the host.
    for (const auto& e : pattern.basic().edges()) {
      if (e.src == pattern_node) {
        const NodeId* t =
            e.tgt == pattern_node ? &candidate : assigned(e.tgt);
        if (t && !graph.has_edge(candidate, e.label, *t)) return false;
      } else if (e.tgt == pattern_node) {
        const NodeId* s = assigned(e.src);
        if (s && !graph.has_edge(*s, e.label, candidate)) return false;
      }
    }
    return true;
  }

  void search(std::size_t depth) {
    if (depth == order.size()) {
      Matching mu{partial};
      std::sort(mu.assignment.begin(), mu.assignment.end());
      if (negatives_hold(pattern, graph, mu)) found.push_back(std::move(mu));
      return;
    }
    const NodeId& pattern_node = order[depth];
    for (const auto& [gid, glabel] : graph.nodes()) {
      (void)glabel;
      if (!compatible(pattern_node, gid)) continue;
      partial.emplace_back(pattern_node, gid);
      used.insert(gid);
      search(depth + 1);
      used.erase(gid);
      partial.pop_back();
    }
  }
};

}  // namespace

std::vector<Matching> find_matchings(const Pattern& p, const Graph& g) {
  if (!(*p.basic().alphabets() == *g.alphabets()))
    fail(ErrorKind::AlphabetMismatch,
         "pattern and graph use different alphabets");

  SearchState state{p, g, {}, {}, {}, {}};

  // Static order: descending degree in the basic pattern, ties by id.
  std::vector<std::pair<int, NodeId>> ranked;
  for (const auto& [id, label] : p.basic().nodes()) {
    (void)label;
    int degree = 0;
    for (const auto& e : p.basic().edges())
      degree += (e.src == id) + (e.tgt == id);
    ranked.emplace_back(-degree, id);
  }
  std::sort(ranked.begin(), ranked.end());
  for (const auto& [neg_degree, id] : ranked) state.order.push_back(id);

  state.partial.reserve(state.order.size());
  state.search(0);
  std::sort(state.found.begin(), state.found.end());
  return std::move(state.found);
}

bool is_matching(const Pattern& p, const Graph& g, const Matching& candidate) {
  const Graph& b = p.basic();
  Matching mu = candidate;
  std::sort(mu.assignment.begin(), mu.assignment.end());
  if (mu.assignment.size() != b.node_count()) return false;
  std::set<NodeId> image;
  for (std::size_t i = 0; i < mu.assignment.size(); ++i) {
    const auto& [pn, gn] = mu.assignment[i];
    if (pn != b.nodes()[i].first) return false;  // totality, no duplicates
    if (!g.has_node(gn)) return false;
    if (g.label_of(gn) != b.label_of(pn)) return false;
    if (!image.insert(gn).second) return false;  // injectivity
  }
  for (const auto& e : b.edges()) {
    const NodeId* s = mu.find(e.src);
    const NodeId* t = mu.find(e.tgt);
    if (!s || !t || !g.has_edge(*s, e.label, *t)) return false;
  }
  return negatives_hold(p, g, mu);
}

}  // namespace grw
