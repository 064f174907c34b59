#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grw/pattern.hpp"

namespace grw {

/// The five command kinds. `a` and `b` name pattern nodes; `label` is a
/// node label for Label and an edge label for DelEdge/AddEdge.
struct Command {
  enum class Op { Label, DelEdge, AddEdge, DelNode, Shift };

  Op op;
  NodeId a;
  NodeId b;         // DelEdge/AddEdge target, Shift target
  LabelIx label{0};  // unused for DelNode/Shift

  static Command relabel(NodeId node, LabelIx node_label);
  static Command del_edge(NodeId src, LabelIx edge_label, NodeId tgt);
  static Command add_edge(NodeId src, LabelIx edge_label, NodeId tgt);
  static Command del_node(NodeId node);
  static Command shift(NodeId from, NodeId to);

  bool operator==(const Command&) const = default;
};

std::string render_command(const Command& c, const Alphabets& alphabets);

class Rule {
 public:
  Rule(std::string name, Pattern pattern, std::vector<Command> commands);

  const std::string& name() const { return name_; }
  const Pattern& pattern() const { return pattern_; }
  const std::vector<Command>& commands() const { return commands_; }

  bool node_preserving() const;

 private:
  std::string name_;
  Pattern pattern_;
  std::vector<Command> commands_;
};

struct ConsistencyReport {
  bool ok = true;
  std::size_t first_bad_index = 0;
  std::string detail;
};

/// A sequence is consistent when no command mentions a node after a
/// del_node on it.
ConsistencyReport check_consistency(const std::vector<Command>& commands);
ConsistencyReport check_consistency(const Rule& r);

/// Keeps, per edge triple, only the last add_edge/del_edge and, per node,
/// only the last label command. Shifts and node deletions always survive;
/// relative order is preserved.
std::vector<Command> effective_commands(const std::vector<Command>& commands);

/// A rule without node deletion is uniform when every effective added edge
/// is declared forbidden and every effective deleted edge is a pattern
/// edge. Throws HasDelNode otherwise, uniformity being undefined there.
bool is_uniform(const Rule& r);

/// Total endpoint-redirection map summarizing the shift commands.
struct ShiftMap {
  std::map<NodeId, NodeId> mapping;

  const NodeId& apply(const NodeId& n) const;
  /// Preimage of n, sorted.
  std::vector<NodeId> merge_class(const NodeId& n) const;
  /// Range Φ(N_P), sorted without duplicates.
  std::vector<NodeId> range() const;
};

ShiftMap shift_map(const std::vector<Command>& commands,
                   const std::vector<NodeId>& pattern_nodes);
ShiftMap shift_map(const Rule& r);

/// Applies the command sequence to g at the matching, materializing the
/// intermediate graph after each command. Throws InconsistentSequence on
/// inconsistent input; NodeVanished cannot occur on consistent sequences
/// and is reported as an internal error.
Graph apply_commands(const Graph& g, const Matching& mu,
                     const std::vector<Command>& commands);

/// Structural validation used by parsers and GRS construction: command
/// node ids must be pattern nodes, shift endpoints distinct, sequence
/// consistent, pattern free of issues. Throws BadRule / InconsistentSequence.
void validate_rule(const Rule& r);

}  // namespace grw
