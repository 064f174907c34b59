#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace grw {

using LabelIx = std::uint32_t;

/// The two fixed label signatures a session works over. The declaration
/// order is total and never changes once graphs refer to it; every canonical
/// iteration in the engine (matcher output, traces, reports) follows it.
class Alphabets {
 public:
  Alphabets(std::vector<std::string> edge_labels,
            std::vector<std::string> node_labels);

  std::size_t edge_count() const { return edge_labels_.size(); }
  std::size_t node_count() const { return node_labels_.size(); }

  const std::string& edge_label(LabelIx i) const { return edge_labels_.at(i); }
  const std::string& node_label(LabelIx i) const { return node_labels_.at(i); }

  std::optional<LabelIx> edge_index(std::string_view name) const;
  std::optional<LabelIx> node_index(std::string_view name) const;

  /// Like edge_index/node_index but throws UnknownLabel.
  LabelIx require_edge(std::string_view name) const;
  LabelIx require_node(std::string_view name) const;

  const std::vector<std::string>& edge_labels() const { return edge_labels_; }
  const std::vector<std::string>& node_labels() const { return node_labels_; }

  bool operator==(const Alphabets& other) const {
    return edge_labels_ == other.edge_labels_ &&
           node_labels_ == other.node_labels_;
  }

 private:
  std::vector<std::string> edge_labels_;
  std::vector<std::string> node_labels_;
  std::unordered_map<std::string, LabelIx> edge_index_;
  std::unordered_map<std::string, LabelIx> node_index_;
};

using AlphabetsPtr = std::shared_ptr<const Alphabets>;

AlphabetsPtr make_alphabets(std::vector<std::string> edge_labels,
                            std::vector<std::string> node_labels);

/// Identifiers and labels are single text tokens: non-empty, printable
/// ASCII, no whitespace and no '#'. Keeps the line formats unambiguous and
/// canonical keys injective.
bool valid_token(std::string_view token);

}  // namespace grw
