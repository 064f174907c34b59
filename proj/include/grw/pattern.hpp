#pragma once

#include <string>
#include <vector>

#include "grw/graph.hpp"

namespace grw {

/// A node-and-edge-label pair used by the non-local negative conditions:
/// forbidden in-edges and forbidden out-edges between the image and the
/// rest of the host graph.
struct NodeLabelCond {
  NodeId node;
  LabelIx label;

  auto operator<=>(const NodeLabelCond&) const = default;
};

/// Left-hand side of a rule: a basic pattern graph plus negative
/// conditions. Forbidden edges live inside the pattern; forbidden in/out
/// conditions constrain edges to nodes outside the image.
class Pattern {
 public:
  Pattern(Graph basic, std::vector<Edge> forbidden_edges,
          std::vector<NodeLabelCond> forbidden_in,
          std::vector<NodeLabelCond> forbidden_out);

  static Pattern basic_only(Graph basic);

  const Graph& basic() const { return basic_; }
  const std::vector<Edge>& forbidden_edges() const { return forbidden_edges_; }
  const std::vector<NodeLabelCond>& forbidden_in() const {
    return forbidden_in_;
  }
  const std::vector<NodeLabelCond>& forbidden_out() const {
    return forbidden_out_;
  }

  bool has_forbidden_in(const NodeId& n, LabelIx e) const;
  bool has_forbidden_out(const NodeId& n, LabelIx e) const;

 private:
  Graph basic_;
  std::vector<Edge> forbidden_edges_;
  std::vector<NodeLabelCond> forbidden_in_;
  std::vector<NodeLabelCond> forbidden_out_;
};

struct PatternIssue {
  enum class Kind { ForbiddenOverlapsPattern, DanglingNegativeCondition };
  Kind kind;
  std::string detail;
};

/// Report-style validation: empty result means the pattern is well formed.
std::vector<PatternIssue> check_pattern(const Pattern& p);

/// An injective, label- and edge-preserving assignment of pattern nodes to
/// host nodes, stored sorted by pattern node id.
struct Matching {
  std::vector<std::pair<NodeId, NodeId>> assignment;

  const NodeId* find(const NodeId& pattern_node) const;
  /// Image of the pattern node set, sorted, duplicates impossible.
  std::vector<NodeId> image() const;
  /// Canonical one-line rendering: "b0->g0 b1->g1".
  std::string render() const;

  bool operator==(const Matching&) const = default;
  auto operator<=>(const Matching&) const = default;
};

/// All matchings of p into g satisfying the negative conditions, in
/// canonical order of assignments. Throws AlphabetMismatch when p and g
/// were built over different alphabets.
std::vector<Matching> find_matchings(const Pattern& p, const Graph& g);

/// Definitional check: true iff candidate is injective, label- and
/// edge-preserving, and satisfies the three negative conditions.
bool is_matching(const Pattern& p, const Graph& g, const Matching& candidate);

/// μ(E_P): the image of the pattern's edges under the matching.
std::vector<Edge> mapped_pattern_edges(const Pattern& p, const Matching& mu);

}  // namespace grw
