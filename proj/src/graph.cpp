#include "grw/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>

#include "grw/error.hpp"

namespace grw {

Graph::Graph(AlphabetsPtr alphabets,
             std::vector<std::pair<NodeId, LabelIx>> nodes,
             std::vector<Edge> edges)
    : alphabets_(std::move(alphabets)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)) {}

Graph Graph::empty(AlphabetsPtr alphabets) {
  return Graph(std::move(alphabets), {}, {});
}

Graph Graph::make(
    const std::vector<std::pair<NodeId, std::string>>& nodes,
    const std::vector<std::tuple<NodeId, std::string, NodeId>>& edges,
    AlphabetsPtr alphabets) {
  if (!alphabets) fail(ErrorKind::Internal, "null alphabets");

  std::vector<std::pair<NodeId, LabelIx>> node_list;
  node_list.reserve(nodes.size());
  for (const auto& [id, label] : nodes) {
    if (!valid_token(id))
      fail(ErrorKind::BadIdentifier, "bad node id '" + id + "'");
    node_list.emplace_back(id, alphabets->require_node(label));
  }
  std::sort(node_list.begin(), node_list.end());
  for (std::size_t i = 1; i < node_list.size(); ++i) {
    if (node_list[i - 1].first == node_list[i].first)
      fail(ErrorKind::DuplicateNodeId,
           "duplicate node id '" + node_list[i].first + "'");
  }

  auto declared = [&](const NodeId& id) {
    auto it = std::lower_bound(
        node_list.begin(), node_list.end(), id,
        [](const auto& entry, const NodeId& key) { return entry.first < key; });
    return it != node_list.end() && it->first == id;
  };

  std::vector<Edge> edge_list;
  edge_list.reserve(edges.size());
  for (const auto& [src, label, tgt] : edges) {
    if (!declared(src))
      fail(ErrorKind::DanglingEdge, "edge endpoint '" + src + "' not declared");
    if (!declared(tgt))
      fail(ErrorKind::DanglingEdge, "edge endpoint '" + tgt + "' not declared");
    edge_list.push_back(Edge{src, alphabets->require_edge(label), tgt});
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()),
                  edge_list.end());

  return Graph(std::move(alphabets), std::move(node_list),
               std::move(edge_list));
}

bool Graph::has_node(const NodeId& id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const auto& entry, const NodeId& key) { return entry.first < key; });
  return it != nodes_.end() && it->first == id;
}

LabelIx Graph::label_of(const NodeId& id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const auto& entry, const NodeId& key) { return entry.first < key; });
  if (it == nodes_.end() || it->first != id)
    fail(ErrorKind::NodeNotInGraph, "node '" + id + "' not in graph");
  return it->second;
}

const std::string& Graph::label_name_of(const NodeId& id) const {
  return alphabets_->node_label(label_of(id));
}

bool Graph::has_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

bool Graph::has_edge(const NodeId& src, LabelIx label, const NodeId& tgt) const {
  return has_edge(Edge{src, label, tgt});
}

Graph Graph::with_node_label(const NodeId& id, LabelIx label) const {
  auto nodes = nodes_;
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), id,
      [](const auto& entry, const NodeId& key) { return entry.first < key; });
  if (it == nodes.end() || it->first != id)
    fail(ErrorKind::NodeNotInGraph, "node '" + id + "' not in graph");
  it->second = label;
  return Graph(alphabets_, std::move(nodes), edges_);
}

Graph Graph::without_node(const NodeId& id) const {
  if (!has_node(id))
    fail(ErrorKind::NodeNotInGraph, "node '" + id + "' not in graph");
  std::vector<std::pair<NodeId, LabelIx>> nodes;
  nodes.reserve(nodes_.size() - 1);
  for (const auto& n : nodes_)
    if (n.first != id) nodes.push_back(n);
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& e : edges_)
    if (e.src != id && e.tgt != id) edges.push_back(e);
  return Graph(alphabets_, std::move(nodes), std::move(edges));
}

Graph Graph::with_edge_changes(const std::vector<Edge>& removals,
                               const std::vector<Edge>& additions) const {
  std::set<Edge> edges(edges_.begin(), edges_.end());
  for (const auto& e : removals) edges.erase(e);
  for (const auto& e : additions) {
    if (!has_node(e.src) || !has_node(e.tgt))
      fail(ErrorKind::DanglingEdge,
           "edge endpoint missing for added edge " + e.src + "→" + e.tgt);
    edges.insert(e);
  }
  return Graph(alphabets_, nodes_,
               std::vector<Edge>(edges.begin(), edges.end()));
}

std::string Graph::canonical_key() const {
  std::string key;
  key.reserve(nodes_.size() * 8 + edges_.size() * 12 + 4);
  for (const auto& [id, label] : nodes_) {
    key += id;
    key += ' ';
    key += alphabets_->node_label(label);
    key += '\n';
  }
  key += '|';
  for (const auto& e : edges_) {
    key += e.src;
    key += ' ';
    key += alphabets_->edge_label(e.label);
    key += ' ';
    key += e.tgt;
    key += '\n';
  }
  return key;
}

std::string Graph::key_digest() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical_key()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 16);
}

bool Graph::operator==(const Graph& other) const {
  if (nodes_.size() != other.nodes_.size() ||
      edges_.size() != other.edges_.size())
    return false;
  // Compare through label names so graphs over distinct but equal alphabets
  // still compare equal.
  if (alphabets_ == other.alphabets_ || *alphabets_ == *other.alphabets_)
    return nodes_ == other.nodes_ && edges_ == other.edges_;
  return canonical_key() == other.canonical_key();
}

std::pair<NodeDecomposition, EdgeDecomposition> decompose(
    const Graph& g, const std::vector<NodeId>& image,
    const std::vector<Edge>& pattern_edges) {
  std::set<NodeId> image_set;
  for (const auto& id : image) {
    if (!g.has_node(id))
      fail(ErrorKind::NodeNotInGraph, "image node '" + id + "' not in graph");
    image_set.insert(id);
  }
  std::set<Edge> pattern_set;
  for (const auto& e : pattern_edges) {
    if (!g.has_edge(e) || !image_set.count(e.src) || !image_set.count(e.tgt))
      fail(ErrorKind::Internal,
           "pattern edge not an intra-image edge of the graph");
    pattern_set.insert(e);
  }

  // Crown: non-image nodes adjacent to the image.
  std::set<NodeId> crown;
  for (const auto& e : g.edges()) {
    const bool s_in = image_set.count(e.src) != 0;
    const bool t_in = image_set.count(e.tgt) != 0;
    if (s_in && !t_in) crown.insert(e.tgt);
    if (!s_in && t_in) crown.insert(e.src);
  }

  NodeDecomposition nd;
  nd.image.assign(image_set.begin(), image_set.end());
  nd.crown.assign(crown.begin(), crown.end());
  for (const auto& [id, label] : g.nodes()) {
    (void)label;
    if (!image_set.count(id) && !crown.count(id)) nd.context.push_back(id);
  }

  EdgeDecomposition ed;
  for (const auto& e : g.edges()) {
    const bool s_in = image_set.count(e.src) != 0;
    const bool t_in = image_set.count(e.tgt) != 0;
    if (s_in && t_in) {
      if (pattern_set.count(e))
        ed.pattern_edges.push_back(e);
      else
        ed.glued_edges.push_back(e);
    } else if (s_in || t_in) {
      ed.crown_edges.push_back(e);
    } else {
      ed.context_edges.push_back(e);
    }
  }
  return {std::move(nd), std::move(ed)};
}

}  // namespace grw
