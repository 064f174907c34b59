#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grw/engine.hpp"

namespace grw {

/// Total integer weighting of the edge alphabet. w(G) sums w over the edge
/// set; it may be negative, which is what lets non-simplifying rules carry
/// a decreasing measure.
class EdgeWeight {
 public:
  EdgeWeight(AlphabetsPtr alphabets, std::vector<std::int64_t> by_label);
  static EdgeWeight zero(AlphabetsPtr alphabets);

  const AlphabetsPtr& alphabets() const { return alphabets_; }
  std::int64_t of(LabelIx e) const { return by_label_.at(e); }
  const std::vector<std::int64_t>& values() const { return by_label_; }

 private:
  AlphabetsPtr alphabets_;
  std::vector<std::int64_t> by_label_;
};

class NodeWeight {
 public:
  NodeWeight(AlphabetsPtr alphabets, std::vector<std::int64_t> by_label);
  static NodeWeight zero(AlphabetsPtr alphabets);

  const AlphabetsPtr& alphabets() const { return alphabets_; }
  std::int64_t of(LabelIx n) const { return by_label_.at(n); }
  const std::vector<std::int64_t>& values() const { return by_label_; }

 private:
  AlphabetsPtr alphabets_;
  std::vector<std::int64_t> by_label_;
};

/// π = (a, ω, b, η): ω weighs an edge through its endpoint labels, so
/// relabeling a node can change π — the e-fragile case.
class ContextualWeight {
 public:
  ContextualWeight(AlphabetsPtr alphabets, std::int64_t a,
                   std::vector<std::int64_t> omega_flat, std::int64_t b,
                   NodeWeight eta);
  static ContextualWeight zero(AlphabetsPtr alphabets);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  const NodeWeight& eta() const { return eta_; }
  const AlphabetsPtr& alphabets() const { return alphabets_; }

  std::int64_t omega(LabelIx src_label, LabelIx edge_label,
                     LabelIx tgt_label) const;
  void set_omega(LabelIx src_label, LabelIx edge_label, LabelIx tgt_label,
                 std::int64_t value);
  const std::vector<std::int64_t>& omega_flat() const { return omega_; }

  /// True iff a≠0 and ω is non-constant on the e-slice.
  bool fragile(LabelIx e) const;

 private:
  AlphabetsPtr alphabets_;
  std::int64_t a_;
  std::vector<std::int64_t> omega_;  // [src][edge][tgt] row-major
  std::int64_t b_;
  NodeWeight eta_;
};

struct LexicographicWeight {
  EdgeWeight w0;
  std::vector<ContextualWeight> pis;
};

std::int64_t evaluate_w(const EdgeWeight& w, const Graph& g);
std::int64_t evaluate_eta(const NodeWeight& eta, const Graph& g);
std::int64_t evaluate_pi(const ContextualWeight& pi, const Graph& g);

/// Effect of a node-preserving rule on its own basic pattern: P' = P·₁c⃗
/// under the identity matching (no crown, so shifts are inert).
struct RuleDeltas {
  std::vector<std::int64_t> per_label;  // edge-count delta per edge label
  Graph before;                         // the basic pattern
  Graph after;                          // P'
  std::vector<std::pair<NodeId, LabelIx>> relabeled;  // node → new label
};

/// Throws HasDelNode for non-node-preserving rules.
RuleDeltas rule_deltas(const Rule& r);

/// Quantitative constants: K_w bounds |w| per edge, K_E = |Σ_E|·K_w bounds
/// the graph weight quadratically, C bounds the non-context edge count per
/// step, H is the longest command sequence, and A makes Ω = w + A·|G|²
/// strictly decreasing for compatible systems.
struct BoundConstants {
  std::int64_t K_w = 0;
  std::int64_t K_E = 0;
  std::int64_t K_eta = 0;
  std::int64_t C = 0;
  std::int64_t H = 0;
  std::int64_t A = 0;
};

BoundConstants bound_constants(const GRS& grs, const EdgeWeight& w,
                               const NodeWeight* eta = nullptr);

std::int64_t energy(const Graph& g, const EdgeWeight& w,
                    const BoundConstants& consts);

/// κ(G) = (|G|, w0(G), π_1(G), …, π_k(G)).
std::vector<std::int64_t> kappa(const Graph& g, const LexicographicWeight& lw);

enum class CompatClause { DelNode, SimpleWeight, LexDecrease, LexTie };

std::string clause_name(CompatClause clause);

struct RuleVerdict {
  std::string rule;
  bool compatible = false;
  CompatClause clause = CompatClause::SimpleWeight;  // valid when compatible
  std::string failed_condition;  // e.g. "2b", "2c", "2b.iii"
  std::string witness;           // human-readable detail
};

struct CompatibilityReport {
  std::vector<RuleVerdict> rules;

  bool compatible() const;
  std::string render(bool color = false) const;
};

/// Def-4.4 check: each rule either deletes a node, or is uniform (2a),
/// strictly decreases the pattern weight (2b) and guards shift merges for
/// negative labels (2c).
CompatibilityReport check_compatible(const GRS& grs, const EdgeWeight& w);

/// Lexicographic check: per rule, del_node, or uniform and node-preserving
/// with either a strict w0 drop plus merge guard (2a) or a w0 tie, a strict
/// lexicographic π drop, fragile-relabel guards and no shifts (2b).
CompatibilityReport check_lexicographic(const GRS& grs,
                                        const LexicographicWeight& lw);

/// Decides whether a compatible weight exists and returns one if so.
/// Enumerates negative-label sign patterns (condition 2c depends only on
/// those), then solves the per-pattern strict linear system exactly.
std::optional<EdgeWeight> synthesize_weight(const GRS& grs);

}  // namespace grw
