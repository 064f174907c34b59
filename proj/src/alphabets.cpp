#include "grw/alphabets.hpp"

#include <cctype>

#include "grw/error.hpp"

namespace grw {

bool valid_token(std::string_view token) {
  if (token.empty()) return false;
  for (unsigned char c : token) {
    if (!std::isgraph(c) || c == '#') return false;
  }
  return true;
}

namespace {

std::unordered_map<std::string, LabelIx> index_labels(
    const std::vector<std::string>& labels, const char* what) {
  if (labels.empty()) fail(ErrorKind::UnknownLabel, std::string(what) + " alphabet is empty");
  std::unordered_map<std::string, LabelIx> index;
  index.reserve(labels.size());
  for (LabelIx i = 0; i < labels.size(); ++i) {
    if (!valid_token(labels[i]))
      fail(ErrorKind::BadIdentifier,
           std::string("bad ") + what + " label '" + labels[i] + "'");
    if (!index.emplace(labels[i], i).second)
      fail(ErrorKind::DuplicateNodeId,
           std::string("duplicate ") + what + " label '" + labels[i] + "'");
  }
  return index;
}

}  // namespace

Alphabets::Alphabets(std::vector<std::string> edge_labels,
                     std::vector<std::string> node_labels)
    : edge_labels_(std::move(edge_labels)),
      node_labels_(std::move(node_labels)),
      edge_index_(index_labels(edge_labels_, "edge")),
      node_index_(index_labels(node_labels_, "node")) {}

std::optional<LabelIx> Alphabets::edge_index(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<LabelIx> Alphabets::node_index(std::string_view name) const {
  auto it = node_index_.find(std::string(name));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

LabelIx Alphabets::require_edge(std::string_view name) const {
  if (auto i = edge_index(name)) return *i;
  fail(ErrorKind::UnknownLabel,
       "unknown edge label '" + std::string(name) + "'");
}

LabelIx Alphabets::require_node(std::string_view name) const {
  if (auto i = node_index(name)) return *i;
  fail(ErrorKind::UnknownLabel,
       "unknown node label '" + std::string(name) + "'");
}

AlphabetsPtr make_alphabets(std::vector<std::string> edge_labels,
                            std::vector<std::string> node_labels) {
  return std::make_shared<const Alphabets>(std::move(edge_labels),
                                           std::move(node_labels));
}

}  // namespace grw
