#include "grw/termination.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "grw/error.hpp"

namespace grw {

EdgeWeight::EdgeWeight(AlphabetsPtr alphabets,
                       std::vector<std::int64_t> by_label)
    : alphabets_(std::move(alphabets)), by_label_(std::move(by_label)) {
  if (by_label_.size() != alphabets_->edge_count())
    fail(ErrorKind::Internal, "edge weight is not total over the alphabet");
}

EdgeWeight EdgeWeight::zero(AlphabetsPtr alphabets) {
  std::vector<std::int64_t> zeros(alphabets->edge_count(), 0);
  return EdgeWeight(std::move(alphabets), std::move(zeros));
}

NodeWeight::NodeWeight(AlphabetsPtr alphabets,
                       std::vector<std::int64_t> by_label)
    : alphabets_(std::move(alphabets)), by_label_(std::move(by_label)) {
  if (by_label_.size() != alphabets_->node_count())
    fail(ErrorKind::Internal, "node weight is not total over the alphabet");
}

NodeWeight NodeWeight::zero(AlphabetsPtr alphabets) {
  std::vector<std::int64_t> zeros(alphabets->node_count(), 0);
  return NodeWeight(std::move(alphabets), std::move(zeros));
}

ContextualWeight::ContextualWeight(AlphabetsPtr alphabets, std::int64_t a,
                                   std::vector<std::int64_t> omega_flat,
                                   std::int64_t b, NodeWeight eta)
    : alphabets_(std::move(alphabets)),
      a_(a),
      omega_(std::move(omega_flat)),
      b_(b),
      eta_(std::move(eta)) {
  const std::size_t expected = alphabets_->node_count() *
                               alphabets_->edge_count() *
                               alphabets_->node_count();
  if (omega_.size() != expected)
    fail(ErrorKind::Internal, "contextual weight table has wrong size");
  if (a_ < 0 || b_ < 0)
    fail(ErrorKind::Internal, "contextual weight coefficients must be ≥ 0");
}

ContextualWeight ContextualWeight::zero(AlphabetsPtr alphabets) {
  std::vector<std::int64_t> omega(
      alphabets->node_count() * alphabets->edge_count() *
          alphabets->node_count(),
      0);
  NodeWeight eta = NodeWeight::zero(alphabets);
  return ContextualWeight(std::move(alphabets), 0, std::move(omega), 0,
                          std::move(eta));
}

std::int64_t ContextualWeight::omega(LabelIx src_label, LabelIx edge_label,
                                     LabelIx tgt_label) const {
  const std::size_t ne = alphabets_->edge_count();
  const std::size_t nn = alphabets_->node_count();
  return omega_.at((src_label * ne + edge_label) * nn + tgt_label);
}

void ContextualWeight::set_omega(LabelIx src_label, LabelIx edge_label,
                                 LabelIx tgt_label, std::int64_t value) {
  const std::size_t ne = alphabets_->edge_count();
  const std::size_t nn = alphabets_->node_count();
  omega_.at((src_label * ne + edge_label) * nn + tgt_label) = value;
}

bool ContextualWeight::fragile(LabelIx e) const {
  if (a_ == 0) return false;
  const std::size_t nn = alphabets_->node_count();
  std::int64_t first = omega(0, e, 0);
  for (LabelIx s = 0; s < nn; ++s)
    for (LabelIx t = 0; t < nn; ++t)
      if (omega(s, e, t) != first) return true;
  return false;
}

std::int64_t evaluate_w(const EdgeWeight& w, const Graph& g) {
  std::int64_t sum = 0;
  for (const Edge& e : g.edges()) sum += w.of(e.label);
  return sum;
}

std::int64_t evaluate_eta(const NodeWeight& eta, const Graph& g) {
  std::int64_t sum = 0;
  for (const auto& [id, label] : g.nodes()) {
    (void)id;
    sum += eta.of(label);
  }
  return sum;
}

std::int64_t evaluate_pi(const ContextualWeight& pi, const Graph& g) {
  std::int64_t omega_sum = 0;
  for (const Edge& e : g.edges())
    omega_sum += pi.omega(g.label_of(e.src), e.label, g.label_of(e.tgt));
  return pi.a() * omega_sum + pi.b() * evaluate_eta(pi.eta(), g);
}

RuleDeltas rule_deltas(const Rule& r) {
  if (!r.node_preserving())
    fail(ErrorKind::HasDelNode,
         "rule '" + r.name() + "' deletes nodes; pattern deltas undefined");
  const Graph& before = r.pattern().basic();
  Matching identity;
  for (const auto& [id, label] : before.nodes()) {
    (void)label;
    identity.assignment.emplace_back(id, id);
  }
  Graph after = apply_commands(before, identity, r.commands());

  const std::size_t ne = before.alphabets()->edge_count();
  std::vector<std::int64_t> delta(ne, 0);
  for (const Edge& e : after.edges()) ++delta[e.label];
  for (const Edge& e : before.edges()) --delta[e.label];

  std::vector<std::pair<NodeId, LabelIx>> relabeled;
  for (const auto& [id, label] : after.nodes())
    if (label != before.label_of(id)) relabeled.emplace_back(id, label);

  return RuleDeltas{std::move(delta), before, std::move(after),
                    std::move(relabeled)};
}

BoundConstants bound_constants(const GRS& grs, const EdgeWeight& w,
                               const NodeWeight* eta) {
  BoundConstants out;
  for (std::int64_t v : w.values()) out.K_w = std::max(out.K_w, std::abs(v));
  out.K_E = static_cast<std::int64_t>(w.alphabets()->edge_count()) * out.K_w;
  if (eta)
    for (std::int64_t v : eta->values())
      out.K_eta = std::max(out.K_eta, std::abs(v));
  const std::int64_t sigma_e =
      static_cast<std::int64_t>(grs.alphabets->edge_count());
  for (const Rule& r : grs.rules) {
    const std::int64_t p =
        static_cast<std::int64_t>(r.pattern().basic().node_count());
    out.C = std::max(out.C, 2 * p * p * sigma_e);
    out.H = std::max(out.H,
                     static_cast<std::int64_t>(r.commands().size()));
  }
  out.A = 2 * std::max<std::int64_t>(1, out.K_w) * out.C * (out.H + 1) + 1;
  return out;
}

std::int64_t energy(const Graph& g, const EdgeWeight& w,
                    const BoundConstants& consts) {
  const std::int64_t n = static_cast<std::int64_t>(g.node_count());
  return evaluate_w(w, g) + consts.A * n * n;
}

std::vector<std::int64_t> kappa(const Graph& g,
                                const LexicographicWeight& lw) {
  std::vector<std::int64_t> out;
  out.reserve(2 + lw.pis.size());
  out.push_back(static_cast<std::int64_t>(g.node_count()));
  out.push_back(evaluate_w(lw.w0, g));
  for (const ContextualWeight& pi : lw.pis) out.push_back(evaluate_pi(pi, g));
  return out;
}

std::string clause_name(CompatClause clause) {
  switch (clause) {
    case CompatClause::DelNode:
      return "1";
    case CompatClause::SimpleWeight:
      return "2a-2c";
    case CompatClause::LexDecrease:
      return "2a";
    case CompatClause::LexTie:
      return "2b";
  }
  return "?";
}

bool CompatibilityReport::compatible() const {
  return std::all_of(rules.begin(), rules.end(),
                     [](const RuleVerdict& v) { return v.compatible; });
}

std::string CompatibilityReport::render(bool color) const {
  const char* green = color ? "\x1b[32m" : "";
  const char* red = color ? "\x1b[31m" : "";
  const char* reset = color ? "\x1b[0m" : "";
  std::ostringstream out;
  for (const RuleVerdict& v : rules) {
    if (v.compatible) {
      out << "rule " << v.rule << ": " << green << "compatible" << reset
          << " (clause " << clause_name(v.clause) << ")\n";
    } else {
      out << "rule " << v.rule << ": " << red << "incompatible" << reset
          << " at " << v.failed_condition;
      if (!v.witness.empty()) out << ": " << v.witness;
      out << "\n";
    }
  }
  out << "overall: "
      << (compatible() ? std::string(green) + "compatible"
                       : std::string(red) + "incompatible")
      << reset << "\n";
  return out.str();
}

namespace {

// Condition (2.c) of the compatible-weight definition for one negative
// label: every merge class of Φ has at most one member whose in-edges for e
// are unguarded and at most one whose out-edges are.
bool merge_guard_ok(const Rule& r, LabelIx e, std::string* witness) {
  ShiftMap phi = shift_map(r);
  for (const NodeId& n : phi.range()) {
    const std::vector<NodeId> klass = phi.merge_class(n);
    int unguarded_in = 0;
    int unguarded_out = 0;
    for (const NodeId& m : klass) {
      if (!r.pattern().has_forbidden_in(m, e)) ++unguarded_in;
      if (!r.pattern().has_forbidden_out(m, e)) ++unguarded_out;
    }
    if (unguarded_in > 1 || unguarded_out > 1) {
      if (witness) {
        std::ostringstream os;
        os << "label " << r.pattern().basic().alphabets()->edge_label(e)
           << ": merge class of node " << n << " has "
           << std::max(unguarded_in, unguarded_out)
           << " members without a matching "
           << (unguarded_in > 1 ? "forbidden-in" : "forbidden-out")
           << " condition";
        *witness = os.str();
      }
      return false;
    }
  }
  return true;
}

std::int64_t weighted_delta(const RuleDeltas& deltas, const EdgeWeight& w) {
  std::int64_t sum = 0;
  for (LabelIx e = 0; e < deltas.per_label.size(); ++e)
    sum += deltas.per_label[e] * w.of(e);
  return sum;
}

}  // namespace

CompatibilityReport check_compatible(const GRS& grs, const EdgeWeight& w) {
  CompatibilityReport report;
  for (const Rule& r : grs.rules) {
    RuleVerdict verdict;
    verdict.rule = r.name();
    if (!r.node_preserving()) {
      verdict.compatible = true;
      verdict.clause = CompatClause::DelNode;
      report.rules.push_back(std::move(verdict));
      continue;
    }
    if (!is_uniform(r)) {
      verdict.failed_condition = "2a";
      verdict.witness = "rule is not uniform";
      report.rules.push_back(std::move(verdict));
      continue;
    }
    RuleDeltas deltas = rule_deltas(r);
    const std::int64_t dw = weighted_delta(deltas, w);
    if (dw >= 0) {
      verdict.failed_condition = "2b";
      std::ostringstream os;
      os << "w(P') - w(P) = " << dw << " (needs < 0)";
      verdict.witness = os.str();
      report.rules.push_back(std::move(verdict));
      continue;
    }
    bool ok = true;
    for (LabelIx e = 0; e < w.values().size() && ok; ++e) {
      if (w.of(e) >= 0) continue;
      std::string witness;
      if (!merge_guard_ok(r, e, &witness)) {
        verdict.failed_condition = "2c";
        verdict.witness = witness;
        ok = false;
      }
    }
    if (ok) {
      verdict.compatible = true;
      verdict.clause = CompatClause::SimpleWeight;
    }
    report.rules.push_back(std::move(verdict));
  }
  return report;
}

CompatibilityReport check_lexicographic(const GRS& grs,
                                        const LexicographicWeight& lw) {
  CompatibilityReport report;
  for (const Rule& r : grs.rules) {
    RuleVerdict verdict;
    verdict.rule = r.name();
    if (!r.node_preserving()) {
      verdict.compatible = true;
      verdict.clause = CompatClause::DelNode;
      report.rules.push_back(std::move(verdict));
      continue;
    }
    if (!is_uniform(r)) {
      verdict.failed_condition = "2.uniform";
      verdict.witness = "rule is not uniform";
      report.rules.push_back(std::move(verdict));
      continue;
    }
    RuleDeltas deltas = rule_deltas(r);
    const std::int64_t dw0 = weighted_delta(deltas, lw.w0);
    if (dw0 < 0) {
      // Branch (2.a): strict w0 drop plus the merge guard for negative w0
      // labels.
      bool ok = true;
      for (LabelIx e = 0; e < lw.w0.values().size() && ok; ++e) {
        if (lw.w0.of(e) >= 0) continue;
        std::string witness;
        if (!merge_guard_ok(r, e, &witness)) {
          verdict.failed_condition = "2a.ii";
          verdict.witness = witness;
          ok = false;
        }
      }
      if (ok) {
        verdict.compatible = true;
        verdict.clause = CompatClause::LexDecrease;
      }
      report.rules.push_back(std::move(verdict));
      continue;
    }
    if (dw0 > 0) {
      verdict.failed_condition = "2a.i";
      std::ostringstream os;
      os << "w0 increases by " << dw0 << " on the pattern";
      verdict.witness = os.str();
      report.rules.push_back(std::move(verdict));
      continue;
    }

    // Branch (2.b): w0 ties, so the π vector must strictly drop.
    std::vector<std::int64_t> before;
    std::vector<std::int64_t> after;
    for (const ContextualWeight& pi : lw.pis) {
      before.push_back(evaluate_pi(pi, deltas.before));
      after.push_back(evaluate_pi(pi, deltas.after));
    }
    if (!std::lexicographical_compare(after.begin(), after.end(),
                                      before.begin(), before.end())) {
      verdict.failed_condition = "2b.ii";
      verdict.witness = "π vector does not lexicographically decrease";
      report.rules.push_back(std::move(verdict));
      continue;
    }
    bool ok = true;
    for (const Command& c : r.commands()) {
      if (!ok || c.op != Command::Op::Label) continue;
      for (LabelIx e = 0; e < grs.alphabets->edge_count() && ok; ++e) {
        const bool fragile = std::any_of(
            lw.pis.begin(), lw.pis.end(),
            [&](const ContextualWeight& pi) { return pi.fragile(e); });
        if (!fragile) continue;
        if (!r.pattern().has_forbidden_in(c.a, e) &&
            !r.pattern().has_forbidden_out(c.a, e)) {
          verdict.failed_condition = "2b.iii";
          verdict.witness = "relabeled node " + c.a +
                            " lacks a forbidden in/out condition for "
                            "fragile label " +
                            grs.alphabets->edge_label(e);
          ok = false;
        }
      }
    }
    if (ok && std::any_of(r.commands().begin(), r.commands().end(),
                          [](const Command& c) {
                            return c.op == Command::Op::Shift;
                          })) {
      verdict.failed_condition = "2b.iv";
      verdict.witness = "shift command with a tied w0";
      ok = false;
    }
    if (ok) {
      verdict.compatible = true;
      verdict.clause = CompatClause::LexTie;
    }
    report.rules.push_back(std::move(verdict));
  }
  return report;
}

}  // namespace grw
