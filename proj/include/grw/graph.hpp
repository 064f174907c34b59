#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grw/alphabets.hpp"

namespace grw {

/// Node identifiers are opaque ordered tokens. Rewriting preserves them
/// verbatim: deletion removes ids, nothing ever renames or invents one.
using NodeId = std::string;

struct Edge {
  NodeId src;
  LabelIx label;
  NodeId tgt;

  auto operator<=>(const Edge&) const = default;
};

/// A directed edge- and node-labeled graph over fixed alphabets. Edges form
/// a set: at most one e-labeled edge between an ordered node pair. Values
/// are immutable; the with_/without_ operations build new graphs.
class Graph {
 public:
  /// Validating constructor. Duplicate edge triples collapse to one.
  static Graph make(
      const std::vector<std::pair<NodeId, std::string>>& nodes,
      const std::vector<std::tuple<NodeId, std::string, NodeId>>& edges,
      AlphabetsPtr alphabets);

  static Graph empty(AlphabetsPtr alphabets);

  const AlphabetsPtr& alphabets() const { return alphabets_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Nodes sorted by id; edges sorted by (src, label, tgt).
  std::span<const std::pair<NodeId, LabelIx>> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }

  bool has_node(const NodeId& id) const;
  /// Throws NodeNotInGraph.
  LabelIx label_of(const NodeId& id) const;
  const std::string& label_name_of(const NodeId& id) const;
  bool has_edge(const Edge& e) const;
  bool has_edge(const NodeId& src, LabelIx label, const NodeId& tgt) const;

  Graph with_node_label(const NodeId& id, LabelIx label) const;
  Graph without_node(const NodeId& id) const;
  /// One-pass edit: removals applied first, then additions (set union).
  Graph with_edge_changes(const std::vector<Edge>& removals,
                          const std::vector<Edge>& additions) const;

  /// Exact-identity state key: equal iff the node-id→label maps and the
  /// edge sets are identical. Sound as a state key because rewriting never
  /// renames nodes.
  std::string canonical_key() const;
  /// 16-hex-digit FNV-1a digest of canonical_key, for traces.
  std::string key_digest() const;

  bool operator==(const Graph& other) const;

 private:
  Graph(AlphabetsPtr alphabets, std::vector<std::pair<NodeId, LabelIx>> nodes,
        std::vector<Edge> edges);

  AlphabetsPtr alphabets_;
  std::vector<std::pair<NodeId, LabelIx>> nodes_;  // sorted by id
  std::vector<Edge> edges_;                        // sorted
};

/// Node partition induced by a pattern image: the image itself, the crown
/// (non-image nodes adjacent to the image) and the context (the rest).
struct NodeDecomposition {
  std::vector<NodeId> image;
  std::vector<NodeId> crown;
  std::vector<NodeId> context;
};

/// Edge partition: images of pattern edges, crown edges (image↔crown),
/// context edges (no image endpoint) and glued edges (intra-image edges
/// that are not pattern-edge images).
struct EdgeDecomposition {
  std::vector<Edge> pattern_edges;
  std::vector<Edge> crown_edges;
  std::vector<Edge> context_edges;
  std::vector<Edge> glued_edges;
};

/// Splits g's nodes and edges relative to an image set. pattern_edges is
/// the matched image of the pattern's edge set; when omitted every
/// intra-image edge lands in glued_edges.
std::pair<NodeDecomposition, EdgeDecomposition> decompose(
    const Graph& g, const std::vector<NodeId>& image,
    const std::vector<Edge>& pattern_edges = {});

}  // namespace grw
