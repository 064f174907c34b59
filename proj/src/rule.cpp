#include "grw/rule.hpp"

#include <algorithm>
#include <set>

#include "grw/error.hpp"

namespace grw {

Command Command::relabel(NodeId node, LabelIx node_label) {
  return Command{Op::Label, std::move(node), {}, node_label};
}
Command Command::del_edge(NodeId src, LabelIx edge_label, NodeId tgt) {
  return Command{Op::DelEdge, std::move(src), std::move(tgt), edge_label};
}
Command Command::add_edge(NodeId src, LabelIx edge_label, NodeId tgt) {
  return Command{Op::AddEdge, std::move(src), std::move(tgt), edge_label};
}
Command Command::del_node(NodeId node) {
  return Command{Op::DelNode, std::move(node), {}, 0};
}
Command Command::shift(NodeId from, NodeId to) {
  return Command{Op::Shift, std::move(from), std::move(to), 0};
}

std::string render_command(const Command& c, const Alphabets& alphabets) {
  switch (c.op) {
    case Command::Op::Label:
      return "label " + c.a + " " + alphabets.node_label(c.label);
    case Command::Op::DelEdge:
      return "del_edge " + c.a + " " + alphabets.edge_label(c.label) + " " +
             c.b;
    case Command::Op::AddEdge:
      return "add_edge " + c.a + " " + alphabets.edge_label(c.label) + " " +
             c.b;
    case Command::Op::DelNode:
      return "del_node " + c.a;
    case Command::Op::Shift:
      return "shift " + c.a + " " + c.b;
  }
  return {};
}

Rule::Rule(std::string name, Pattern pattern, std::vector<Command> commands)
    : name_(std::move(name)),
      pattern_(std::move(pattern)),
      commands_(std::move(commands)) {}

bool Rule::node_preserving() const {
  return std::none_of(commands_.begin(), commands_.end(), [](const Command& c) {
    return c.op == Command::Op::DelNode;
  });
}

namespace {

bool mentions(const Command& c, const NodeId& node) {
  switch (c.op) {
    case Command::Op::Label:
    case Command::Op::DelNode:
      return c.a == node;
    case Command::Op::DelEdge:
    case Command::Op::AddEdge:
    case Command::Op::Shift:
      return c.a == node || c.b == node;
  }
  return false;
}

}  // namespace

ConsistencyReport check_consistency(const std::vector<Command>& commands) {
  std::set<NodeId> deleted;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const Command& c = commands[i];
    for (const auto& node : deleted) {
      if (mentions(c, node))
        return {false, i, "command mentions deleted node '" + node + "'"};
    }
    if (c.op == Command::Op::DelNode) deleted.insert(c.a);
  }
  return {};
}

ConsistencyReport check_consistency(const Rule& r) {
  return check_consistency(r.commands());
}

std::vector<Command> effective_commands(const std::vector<Command>& commands) {
  std::vector<bool> keep(commands.size(), true);
  std::set<std::tuple<NodeId, LabelIx, NodeId>> seen_edges;
  std::set<NodeId> seen_labels;
  for (std::size_t i = commands.size(); i-- > 0;) {
    const Command& c = commands[i];
    if (c.op == Command::Op::AddEdge || c.op == Command::Op::DelEdge) {
      if (!seen_edges.insert({c.a, c.label, c.b}).second) keep[i] = false;
    } else if (c.op == Command::Op::Label) {
      if (!seen_labels.insert(c.a).second) keep[i] = false;
    }
  }
  std::vector<Command> out;
  out.reserve(commands.size());
  for (std::size_t i = 0; i < commands.size(); ++i)
    if (keep[i]) out.push_back(commands[i]);
  return out;
}

bool is_uniform(const Rule& r) {
  if (!r.node_preserving())
    fail(ErrorKind::HasDelNode,
         "uniformity is undefined for rules with del_node");
  const Graph& basic = r.pattern().basic();
  const auto& forbidden = r.pattern().forbidden_edges();
  for (const Command& c : effective_commands(r.commands())) {
    if (c.op == Command::Op::AddEdge) {
      if (!std::binary_search(forbidden.begin(), forbidden.end(),
                              Edge{c.a, c.label, c.b}))
        return false;
    } else if (c.op == Command::Op::DelEdge) {
      if (!basic.has_edge(c.a, c.label, c.b)) return false;
    }
  }
  return true;
}

const NodeId& ShiftMap::apply(const NodeId& n) const {
  auto it = mapping.find(n);
  if (it == mapping.end())
    fail(ErrorKind::Internal, "shift map queried outside pattern nodes");
  return it->second;
}

std::vector<NodeId> ShiftMap::merge_class(const NodeId& n) const {
  std::vector<NodeId> out;
  for (const auto& [from, to] : mapping)
    if (to == n) out.push_back(from);
  return out;
}

std::vector<NodeId> ShiftMap::range() const {
  std::set<NodeId> out;
  for (const auto& [from, to] : mapping) out.insert(to);
  return {out.begin(), out.end()};
}

ShiftMap shift_map(const std::vector<Command>& commands,
                   const std::vector<NodeId>& pattern_nodes) {
  ShiftMap phi;
  for (const auto& n : pattern_nodes) phi.mapping[n] = n;
  for (const Command& c : commands) {
    if (c.op != Command::Op::Shift) continue;
    // Φ_{c⃗,shift(m,n)} = 𝟙[m↦n] ∘ Φ_c⃗
    for (auto& [from, to] : phi.mapping)
      if (to == c.a) to = c.b;
  }
  return phi;
}

ShiftMap shift_map(const Rule& r) {
  std::vector<NodeId> nodes;
  for (const auto& [id, label] : r.pattern().basic().nodes()) {
    (void)label;
    nodes.push_back(id);
  }
  return shift_map(r.commands(), nodes);
}

namespace {

Graph apply_one(const Graph& g, const Matching& mu, const Command& c) {
  auto resolve = [&](const NodeId& pattern_node) -> const NodeId& {
    const NodeId* mapped = mu.find(pattern_node);
    if (!mapped)
      fail(ErrorKind::Internal,
           "command references node outside the matching: " + pattern_node);
    if (!g.has_node(*mapped))
      fail(ErrorKind::Internal, "node vanished: " + *mapped);
    return *mapped;
  };

  switch (c.op) {
    case Command::Op::Label:
      return g.with_node_label(resolve(c.a), c.label);
    case Command::Op::DelEdge:
      return g.with_edge_changes({Edge{resolve(c.a), c.label, resolve(c.b)}},
                                 {});
    case Command::Op::AddEdge:
      return g.with_edge_changes(
          {}, {Edge{resolve(c.a), c.label, resolve(c.b)}});
    case Command::Op::DelNode:
      return g.without_node(resolve(c.a));
    case Command::Op::Shift: {
      const NodeId& from = resolve(c.a);
      const NodeId& to = resolve(c.b);
      // Surviving image in the current graph; neighbors outside it are
      // exactly the crown.
      std::set<NodeId> image;
      for (const auto& [pn, gn] : mu.assignment)
        if (g.has_node(gn)) image.insert(gn);
      std::vector<Edge> removals;
      std::vector<Edge> additions;
      for (const auto& e : g.edges()) {
        if (e.src == from && !image.count(e.tgt)) {
          removals.push_back(e);
          additions.push_back(Edge{to, e.label, e.tgt});
        } else if (e.tgt == from && !image.count(e.src)) {
          removals.push_back(e);
          additions.push_back(Edge{e.src, e.label, to});
        }
      }
      return g.with_edge_changes(removals, additions);
    }
  }
  fail(ErrorKind::Internal, "unknown command");
}

}  // namespace

Graph apply_commands(const Graph& g, const Matching& mu,
                     const std::vector<Command>& commands) {
  ConsistencyReport consistency = check_consistency(commands);
  if (!consistency.ok)
    fail(ErrorKind::InconsistentSequence,
         "inconsistent command sequence at index " +
             std::to_string(consistency.first_bad_index) + ": " +
             consistency.detail);
  Graph current = g;
  for (const Command& c : commands) current = apply_one(current, mu, c);
  return current;
}

void validate_rule(const Rule& r) {
  const Graph& basic = r.pattern().basic();
  auto issues = check_pattern(r.pattern());
  if (!issues.empty())
    fail(ErrorKind::BadRule,
         "rule '" + r.name() + "': " + issues.front().detail);

  auto require_pattern_node = [&](const NodeId& n) {
    if (!basic.has_node(n))
      fail(ErrorKind::BadRule, "rule '" + r.name() +
                                   "': command references unknown node '" +
                                   n + "'");
  };
  for (const Command& c : r.commands()) {
    switch (c.op) {
      case Command::Op::Label:
      case Command::Op::DelNode:
        require_pattern_node(c.a);
        break;
      case Command::Op::DelEdge:
      case Command::Op::AddEdge:
        require_pattern_node(c.a);
        require_pattern_node(c.b);
        break;
      case Command::Op::Shift:
        require_pattern_node(c.a);
        require_pattern_node(c.b);
        if (c.a == c.b)
          fail(ErrorKind::BadRule,
               "rule '" + r.name() + "': shift with identical endpoints");
        break;
    }
  }
  ConsistencyReport consistency = check_consistency(r);
  if (!consistency.ok)
    fail(ErrorKind::InconsistentSequence,
         "rule '" + r.name() + "': " + consistency.detail + " (command " +
             std::to_string(consistency.first_bad_index) + ")");
}

}  // namespace grw
