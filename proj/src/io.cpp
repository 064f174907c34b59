#include "grw/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "grw/error.hpp"

namespace grw {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    std::size_t comment = line.find('#');
    if (comment != std::string_view::npos) line = line.substr(0, comment);

    Line out{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      out.tokens.push_back(
          {std::string(line.substr(start, i - start)), start + 1});
    }
    if (!out.tokens.empty()) lines.push_back(std::move(out));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

[[noreturn]] void syntax_error(const Line& line, std::size_t column,
                               const std::string& message) {
  std::ostringstream os;
  os << "line " << line.number << ", column " << column << ": " << message;
  fail(ErrorKind::Syntax, os.str());
}

void expect_arity(const Line& line, std::size_t count) {
  if (line.tokens.size() != count)
    syntax_error(line, line.tokens.front().column,
                 "expected " + std::to_string(count) + " tokens, got " +
                     std::to_string(line.tokens.size()));
}

std::int64_t parse_int(const Line& line, const Token& token) {
  errno = 0;
  char* end = nullptr;
  long long value = std::strtoll(token.text.c_str(), &end, 10);
  if (errno != 0 || end == token.text.c_str() || *end != '\0')
    syntax_error(line, token.column, "expected an integer, got '" +
                                         token.text + "'");
  return value;
}

// Rethrows validation errors with the line position attached.
template <typename F>
auto at_line(const Line& line, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Syntax) throw;
    std::ostringstream os;
    os << "line " << line.number << ": " << e.what();
    throw Error(e.kind(), os.str());
  }
}

struct GraphAccumulator {
  std::vector<std::pair<NodeId, std::string>> nodes;
  std::vector<std::tuple<NodeId, std::string, NodeId>> edges;

  bool consume(const Line& line) {
    const std::string& head = line.tokens.front().text;
    if (head == "node") {
      expect_arity(line, 3);
      nodes.emplace_back(line.tokens[1].text, line.tokens[2].text);
      return true;
    }
    if (head == "edge") {
      expect_arity(line, 4);
      edges.emplace_back(line.tokens[1].text, line.tokens[2].text,
                         line.tokens[3].text);
      return true;
    }
    return false;
  }
};

}  // namespace

Graph parse_graph(std::string_view text, AlphabetsPtr alphabets) {
  GraphAccumulator acc;
  for (const Line& line : tokenize(text)) {
    if (!acc.consume(line))
      syntax_error(line, line.tokens.front().column,
                   "expected 'node' or 'edge', got '" +
                       line.tokens.front().text + "'");
  }
  return Graph::make(acc.nodes, acc.edges, std::move(alphabets));
}

Graph parse_graph(std::string_view text) {
  GraphAccumulator acc;
  for (const Line& line : tokenize(text)) {
    if (!acc.consume(line))
      syntax_error(line, line.tokens.front().column,
                   "expected 'node' or 'edge', got '" +
                       line.tokens.front().text + "'");
  }
  std::set<std::string> node_labels;
  std::set<std::string> edge_labels;
  for (const auto& [id, label] : acc.nodes) node_labels.insert(label);
  for (const auto& [src, label, tgt] : acc.edges) edge_labels.insert(label);
  // A graph needs alphabets to live over; an empty file gets a placeholder.
  if (node_labels.empty()) node_labels.insert("_");
  if (edge_labels.empty()) edge_labels.insert("_");
  AlphabetsPtr alphabets = make_alphabets(
      {edge_labels.begin(), edge_labels.end()},
      {node_labels.begin(), node_labels.end()});
  return Graph::make(acc.nodes, acc.edges, std::move(alphabets));
}

std::string render_graph(const Graph& g) {
  std::ostringstream out;
  const Alphabets& alph = *g.alphabets();
  for (const auto& [id, label] : g.nodes())
    out << "node " << id << " " << alph.node_label(label) << "\n";
  for (const Edge& e : g.edges())
    out << "edge " << e.src << " " << alph.edge_label(e.label) << " " << e.tgt
        << "\n";
  return out.str();
}

namespace {

struct RuleAccumulator {
  std::string name;
  GraphAccumulator basic;
  std::vector<std::tuple<NodeId, std::string, NodeId>> forbidden_edges;
  std::vector<std::pair<NodeId, std::string>> forbidden_in;
  std::vector<std::pair<NodeId, std::string>> forbidden_out;
  std::vector<Line> command_lines;

  Rule build(const AlphabetsPtr& alphabets) const {
    Graph basic_graph = Graph::make(basic.nodes, basic.edges, alphabets);
    std::vector<Edge> fe;
    for (const auto& [src, label, tgt] : forbidden_edges)
      fe.push_back(Edge{src, alphabets->require_edge(label), tgt});
    std::vector<NodeLabelCond> fi;
    for (const auto& [node, label] : forbidden_in)
      fi.push_back(NodeLabelCond{node, alphabets->require_edge(label)});
    std::vector<NodeLabelCond> fo;
    for (const auto& [node, label] : forbidden_out)
      fo.push_back(NodeLabelCond{node, alphabets->require_edge(label)});
    Pattern pattern(std::move(basic_graph), std::move(fe), std::move(fi),
                    std::move(fo));

    std::vector<Command> commands;
    for (const Line& line : command_lines) {
      const std::string& head = line.tokens.front().text;
      at_line(line, [&] {
        if (head == "label") {
          expect_arity(line, 3);
          commands.push_back(Command::relabel(
              line.tokens[1].text,
              alphabets->require_node(line.tokens[2].text)));
        } else if (head == "del_edge") {
          expect_arity(line, 4);
          commands.push_back(Command::del_edge(
              line.tokens[1].text,
              alphabets->require_edge(line.tokens[2].text),
              line.tokens[3].text));
        } else if (head == "add_edge") {
          expect_arity(line, 4);
          commands.push_back(Command::add_edge(
              line.tokens[1].text,
              alphabets->require_edge(line.tokens[2].text),
              line.tokens[3].text));
        } else if (head == "del_node") {
          expect_arity(line, 2);
          commands.push_back(Command::del_node(line.tokens[1].text));
        } else if (head == "shift") {
          expect_arity(line, 3);
          commands.push_back(
              Command::shift(line.tokens[1].text, line.tokens[2].text));
        } else {
          syntax_error(line, line.tokens.front().column,
                       "unknown command '" + head + "'");
        }
      });
    }
    return Rule(name, std::move(pattern), std::move(commands));
  }
};

}  // namespace

GRS parse_grs(std::string_view text) {
  std::vector<std::string> edge_labels;
  std::vector<std::string> node_labels;
  std::vector<RuleAccumulator> rules;
  RuleAccumulator* current = nullptr;
  enum class Section { None, Match, Commands } section = Section::None;

  for (const Line& line : tokenize(text)) {
    const std::string& head = line.tokens.front().text;
    if (!current) {
      if (head == "edge_labels") {
        for (std::size_t i = 1; i < line.tokens.size(); ++i)
          edge_labels.push_back(line.tokens[i].text);
      } else if (head == "node_labels") {
        for (std::size_t i = 1; i < line.tokens.size(); ++i)
          node_labels.push_back(line.tokens[i].text);
      } else if (head == "rule") {
        expect_arity(line, 2);
        rules.emplace_back();
        rules.back().name = line.tokens[1].text;
        current = &rules.back();
        section = Section::None;
      } else {
        syntax_error(line, line.tokens.front().column,
                     "expected 'edge_labels', 'node_labels' or 'rule', got '" +
                         head + "'");
      }
      continue;
    }
    if (head == "end") {
      expect_arity(line, 1);
      current = nullptr;
      continue;
    }
    if (head == "match") {
      expect_arity(line, 1);
      section = Section::Match;
      continue;
    }
    if (head == "commands") {
      expect_arity(line, 1);
      section = Section::Commands;
      continue;
    }
    if (head == "without") {
      if (line.tokens.size() < 2)
        syntax_error(line, line.tokens.front().column,
                     "incomplete 'without' condition");
      const std::string& kind = line.tokens[1].text;
      if (kind == "edge") {
        expect_arity(line, 5);
        current->forbidden_edges.emplace_back(
            line.tokens[2].text, line.tokens[3].text, line.tokens[4].text);
      } else if (kind == "in") {
        expect_arity(line, 4);
        current->forbidden_in.emplace_back(line.tokens[2].text,
                                           line.tokens[3].text);
      } else if (kind == "out") {
        expect_arity(line, 4);
        current->forbidden_out.emplace_back(line.tokens[2].text,
                                            line.tokens[3].text);
      } else {
        syntax_error(line, line.tokens[1].column,
                     "expected 'edge', 'in' or 'out' after 'without'");
      }
      continue;
    }
    if (section == Section::Match) {
      if (!current->basic.consume(line))
        syntax_error(line, line.tokens.front().column,
                     "expected 'node' or 'edge' in match section");
      continue;
    }
    if (section == Section::Commands) {
      current->command_lines.push_back(line);
      continue;
    }
    syntax_error(line, line.tokens.front().column,
                 "expected 'match', 'without', 'commands' or 'end'");
  }
  if (current)
    fail(ErrorKind::Syntax, "unterminated rule '" + current->name + "'");
  if (edge_labels.empty())
    fail(ErrorKind::Syntax, "missing 'edge_labels' declaration");
  if (node_labels.empty())
    fail(ErrorKind::Syntax, "missing 'node_labels' declaration");

  AlphabetsPtr alphabets =
      make_alphabets(std::move(edge_labels), std::move(node_labels));
  std::vector<Rule> built;
  built.reserve(rules.size());
  for (const RuleAccumulator& acc : rules) built.push_back(acc.build(alphabets));
  return make_grs(std::move(alphabets), std::move(built));
}

std::string render_grs(const GRS& grs) {
  std::ostringstream out;
  const Alphabets& alph = *grs.alphabets;
  out << "edge_labels";
  for (const std::string& l : alph.edge_labels()) out << " " << l;
  out << "\nnode_labels";
  for (const std::string& l : alph.node_labels()) out << " " << l;
  out << "\n";
  for (const Rule& r : grs.rules) {
    out << "\nrule " << r.name() << "\n  match\n";
    std::istringstream basic(render_graph(r.pattern().basic()));
    std::string line;
    while (std::getline(basic, line)) out << "    " << line << "\n";
    for (const Edge& e : r.pattern().forbidden_edges())
      out << "  without edge " << e.src << " " << alph.edge_label(e.label)
          << " " << e.tgt << "\n";
    for (const NodeLabelCond& c : r.pattern().forbidden_in())
      out << "  without in " << c.node << " " << alph.edge_label(c.label)
          << "\n";
    for (const NodeLabelCond& c : r.pattern().forbidden_out())
      out << "  without out " << c.node << " " << alph.edge_label(c.label)
          << "\n";
    if (!r.commands().empty()) {
      out << "  commands\n";
      for (const Command& c : r.commands())
        out << "    " << render_command(c, alph) << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

Pipeline parse_pipeline(std::string_view text, const std::string& base_dir) {
  Pipeline pipeline;
  for (const Line& line : tokenize(text)) {
    const std::string& head = line.tokens.front().text;
    if (head != "module")
      syntax_error(line, line.tokens.front().column,
                   "expected 'module', got '" + head + "'");
    expect_arity(line, 3);
    const std::string& path = line.tokens[2].text;
    std::string resolved = path;
    if (!path.empty() && path.front() != '/' && !base_dir.empty())
      resolved = base_dir + "/" + path;
    GRS grs = at_line(line, [&] { return load_grs(resolved); });
    pipeline.modules.push_back(
        PipelineModule{line.tokens[1].text, std::move(grs), path});
  }
  for (std::size_t i = 1; i < pipeline.modules.size(); ++i) {
    if (!(*pipeline.modules[i].grs.alphabets ==
          *pipeline.modules[0].grs.alphabets))
      fail(ErrorKind::AlphabetMismatch,
           "module '" + pipeline.modules[i].name +
               "' declares different alphabets than '" +
               pipeline.modules[0].name + "'");
  }
  return pipeline;
}

std::string render_pipeline(const Pipeline& p) {
  std::ostringstream out;
  for (const PipelineModule& m : p.modules)
    out << "module " << m.name << " " << m.source_path << "\n";
  return out.str();
}

WeightsFile parse_weights(std::string_view text, AlphabetsPtr alphabets) {
  std::vector<std::int64_t> w(alphabets->edge_count(), 0);
  std::vector<std::int64_t> eta(alphabets->node_count(), 0);
  std::vector<ContextualWeight> pis;
  ContextualWeight* current_pi = nullptr;

  for (const Line& line : tokenize(text)) {
    const std::string& head = line.tokens.front().text;
    at_line(line, [&] {
      if (current_pi) {
        if (head == "end") {
          expect_arity(line, 1);
          current_pi = nullptr;
        } else if (head == "ctx") {
          expect_arity(line, 5);
          current_pi->set_omega(
              alphabets->require_node(line.tokens[1].text),
              alphabets->require_edge(line.tokens[2].text),
              alphabets->require_node(line.tokens[3].text),
              parse_int(line, line.tokens[4]));
        } else if (head == "node") {
          expect_arity(line, 3);
          // η entries of this π.
          std::vector<std::int64_t> values = current_pi->eta().values();
          values[alphabets->require_node(line.tokens[1].text)] =
              parse_int(line, line.tokens[2]);
          *current_pi = ContextualWeight(
              alphabets, current_pi->a(), current_pi->omega_flat(),
              current_pi->b(), NodeWeight(alphabets, std::move(values)));
        } else {
          syntax_error(line, line.tokens.front().column,
                       "expected 'ctx', 'node' or 'end' inside a pi block");
        }
        return;
      }
      if (head == "edge") {
        expect_arity(line, 3);
        w[alphabets->require_edge(line.tokens[1].text)] =
            parse_int(line, line.tokens[2]);
      } else if (head == "node") {
        expect_arity(line, 3);
        eta[alphabets->require_node(line.tokens[1].text)] =
            parse_int(line, line.tokens[2]);
      } else if (head == "pi") {
        expect_arity(line, 3);
        const std::int64_t a = parse_int(line, line.tokens[1]);
        const std::int64_t b = parse_int(line, line.tokens[2]);
        if (a < 0 || b < 0)
          syntax_error(line, line.tokens[1].column,
                       "pi coefficients must be non-negative");
        ContextualWeight pi = ContextualWeight::zero(alphabets);
        pis.push_back(ContextualWeight(alphabets, a, pi.omega_flat(), b,
                                       pi.eta()));
        current_pi = &pis.back();
      } else {
        syntax_error(line, line.tokens.front().column,
                     "expected 'edge', 'node' or 'pi', got '" + head + "'");
      }
    });
  }
  if (current_pi) fail(ErrorKind::Syntax, "unterminated pi block");
  return WeightsFile{EdgeWeight(alphabets, std::move(w)),
                     NodeWeight(alphabets, std::move(eta)), std::move(pis)};
}

std::string render_edge_weight(const EdgeWeight& w) {
  std::ostringstream out;
  const Alphabets& alph = *w.alphabets();
  for (LabelIx e = 0; e < w.values().size(); ++e)
    if (w.of(e) != 0) out << "edge " << alph.edge_label(e) << " " << w.of(e)
                          << "\n";
  return out.str();
}

std::string render_weights(const WeightsFile& wf) {
  std::ostringstream out;
  const Alphabets& alph = *wf.w.alphabets();
  out << render_edge_weight(wf.w);
  for (LabelIx n = 0; n < wf.eta.values().size(); ++n)
    if (wf.eta.of(n) != 0)
      out << "node " << alph.node_label(n) << " " << wf.eta.of(n) << "\n";
  for (const ContextualWeight& pi : wf.pis) {
    out << "pi " << pi.a() << " " << pi.b() << "\n";
    for (LabelIx s = 0; s < alph.node_count(); ++s)
      for (LabelIx e = 0; e < alph.edge_count(); ++e)
        for (LabelIx t = 0; t < alph.node_count(); ++t)
          if (pi.omega(s, e, t) != 0)
            out << "  ctx " << alph.node_label(s) << " " << alph.edge_label(e)
                << " " << alph.node_label(t) << " " << pi.omega(s, e, t)
                << "\n";
    for (LabelIx n = 0; n < alph.node_count(); ++n)
      if (pi.eta().of(n) != 0)
        out << "  node " << alph.node_label(n) << " " << pi.eta().of(n)
            << "\n";
    out << "end\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Syntax, "cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

template <typename F>
auto in_file(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

}  // namespace

Graph load_graph(const std::string& path, AlphabetsPtr alphabets) {
  return in_file(path,
                 [&] { return parse_graph(read_file(path), alphabets); });
}

GRS load_grs(const std::string& path) {
  return in_file(path, [&] { return parse_grs(read_file(path)); });
}

Pipeline load_pipeline(const std::string& path) {
  std::string base_dir;
  std::size_t slash = path.find_last_of('/');
  if (slash != std::string::npos) base_dir = path.substr(0, slash);
  return in_file(path,
                 [&] { return parse_pipeline(read_file(path), base_dir); });
}

WeightsFile load_weights(const std::string& path, AlphabetsPtr alphabets) {
  return in_file(path,
                 [&] { return parse_weights(read_file(path), alphabets); });
}

}  // namespace grw
