#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grw/engine.hpp"
#include "grw/termination.hpp"

namespace grw {

/// Line-oriented text formats. One declaration per line, '#' starts a
/// comment, tokens are whitespace-separated. See README for the grammar.

/// Graph files: `node <id> <label>` and `edge <src> <elabel> <tgt>` lines.
/// With alphabets, labels are validated against them; without, alphabets
/// are inferred from the labels used, in sorted order.
Graph parse_graph(std::string_view text, AlphabetsPtr alphabets);
Graph parse_graph(std::string_view text);

std::string render_graph(const Graph& g);

/// GRS files: `edge_labels …` and `node_labels …` declarations followed by
/// `rule <name> … end` blocks.
GRS parse_grs(std::string_view text);
std::string render_grs(const GRS& grs);

/// Pipeline files: `module <name> <grs-path>` lines; relative paths resolve
/// against base_dir. All modules must share identical alphabets.
Pipeline parse_pipeline(std::string_view text, const std::string& base_dir);
std::string render_pipeline(const Pipeline& p);

/// Weights files: `edge <label> <int>`, `node <label> <int>` and
/// `pi <a> <b> … end` blocks of `ctx <nl> <el> <nl> <int>` / `node <nl> <int>`
/// lines. Unmentioned labels weigh 0.
struct WeightsFile {
  EdgeWeight w;
  NodeWeight eta;
  std::vector<ContextualWeight> pis;
};

WeightsFile parse_weights(std::string_view text, AlphabetsPtr alphabets);
std::string render_weights(const WeightsFile& wf);
std::string render_edge_weight(const EdgeWeight& w);

std::string read_file(const std::string& path);

Graph load_graph(const std::string& path, AlphabetsPtr alphabets);
GRS load_grs(const std::string& path);
Pipeline load_pipeline(const std::string& path);
WeightsFile load_weights(const std::string& path, AlphabetsPtr alphabets);

}  // namespace grw
