#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grw/error.hpp"
#include "grw/termination.hpp"

namespace grw {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

BigInt floor_div(const BigInt& p, const BigInt& q) {
  // q > 0; cpp_int division truncates toward zero.
  BigInt d = p / q;
  if (p % q != 0 && p < 0) --d;
  return d;
}

BigInt ceil_rational(const Rational& r) {
  return -floor_div(-numerator(r), denominator(r));
}

BigInt floor_rational(const Rational& r) {
  return floor_div(numerator(r), denominator(r));
}

// One inequality a·x ≤ b.
struct Row {
  std::vector<Rational> a;
  Rational b;
};

bool constant_and_violated(const Row& r) {
  return std::all_of(r.a.begin(), r.a.end(),
                     [](const Rational& c) { return c == 0; }) &&
         r.b < 0;
}

// Fourier–Motzkin elimination with back-substitution. Returns a rational
// point satisfying every row, or nullopt when the system is infeasible.
std::optional<std::vector<Rational>> solve_leq(std::vector<Row> rows,
                                               std::size_t nvars) {
  std::vector<std::vector<Row>> levels(nvars + 1);
  levels[nvars] = std::move(rows);
  for (std::size_t v = nvars; v-- > 0;) {
    std::vector<Row> lower;
    std::vector<Row> upper;
    std::vector<Row>& out = levels[v];
    for (Row& r : levels[v + 1]) {
      if (r.a[v] > 0)
        upper.push_back(r);
      else if (r.a[v] < 0)
        lower.push_back(r);
      else
        out.push_back(r);
    }
    for (const Row& lo : lower) {
      for (const Row& up : upper) {
        const Rational mlo = up.a[v];   // > 0
        const Rational mup = -lo.a[v];  // > 0
        Row combined;
        combined.a.resize(nvars);
        for (std::size_t j = 0; j < nvars; ++j)
          combined.a[j] = lo.a[j] * mlo + up.a[j] * mup;
        combined.b = lo.b * mlo + up.b * mup;
        out.push_back(std::move(combined));
      }
    }
    for (const Row& r : out)
      if (constant_and_violated(r)) return std::nullopt;
  }

  std::vector<Rational> x(nvars, 0);
  for (std::size_t v = 0; v < nvars; ++v) {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    for (const Row& r : levels[v + 1]) {
      if (r.a[v] == 0) continue;
      Rational rem = r.b;
      for (std::size_t j = 0; j < v; ++j) rem -= r.a[j] * x[j];
      Rational bound = rem / r.a[v];
      if (r.a[v] > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    // FM guarantees lo ≤ hi; prefer 0, else the nearest integer in range.
    Rational value = 0;
    if (lo && *lo > 0) {
      Rational candidate(ceil_rational(*lo));
      value = (!hi || candidate <= *hi) ? candidate : *lo;
    } else if (hi && *hi < 0) {
      Rational candidate(floor_rational(*hi));
      value = (!lo || candidate >= *lo) ? candidate : *hi;
    }
    x[v] = value;
  }
  return x;
}

std::vector<std::int64_t> scale_to_integers(const std::vector<Rational>& x) {
  BigInt lcm_den = 1;
  for (const Rational& r : x) lcm_den = lcm(lcm_den, denominator(r));
  std::vector<std::int64_t> out;
  out.reserve(x.size());
  for (const Rational& r : x) {
    BigInt scaled = numerator(r) * (lcm_den / denominator(r));
    if (scaled > std::numeric_limits<std::int64_t>::max() ||
        scaled < std::numeric_limits<std::int64_t>::min())
      fail(ErrorKind::Internal, "synthesized weight exceeds 64-bit range");
    out.push_back(static_cast<std::int64_t>(scaled));
  }
  return out;
}

}  // namespace

std::optional<EdgeWeight> synthesize_weight(const GRS& grs) {
  // Rules with del_node are compatible with any weight; the rest must be
  // uniform, or no weight can exist.
  std::vector<const Rule*> preserving;
  for (const Rule& r : grs.rules) {
    if (!r.node_preserving()) continue;
    if (!is_uniform(r)) return std::nullopt;
    preserving.push_back(&r);
  }

  const std::size_t m = grs.alphabets->edge_count();
  std::vector<RuleDeltas> deltas;
  deltas.reserve(preserving.size());
  for (const Rule* r : preserving) deltas.push_back(rule_deltas(*r));

  // The shift-merge guard depends only on which labels are negative, so the
  // search splits exactly over sign patterns.
  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask)
    masks.push_back(mask);
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  for (const std::uint64_t mask : masks) {
    bool guard_ok = true;
    for (LabelIx e = 0; e < m && guard_ok; ++e) {
      if (!(mask >> e & 1)) continue;
      for (const Rule* r : preserving) {
        ShiftMap phi = shift_map(*r);
        bool ok = true;
        for (const NodeId& n : phi.range()) {
          int unguarded_in = 0;
          int unguarded_out = 0;
          for (const NodeId& member : phi.merge_class(n)) {
            if (!r->pattern().has_forbidden_in(member, e)) ++unguarded_in;
            if (!r->pattern().has_forbidden_out(member, e)) ++unguarded_out;
          }
          if (unguarded_in > 1 || unguarded_out > 1) {
            ok = false;
            break;
          }
        }
        if (!ok) {
          guard_ok = false;
          break;
        }
      }
    }
    if (!guard_ok) continue;

    std::vector<Row> rows;
    for (const RuleDeltas& d : deltas) {
      Row r;
      r.a.assign(m, 0);
      for (LabelIx e = 0; e < m; ++e) r.a[e] = d.per_label[e];
      r.b = -1;  // strict decrease over integers
      rows.push_back(std::move(r));
    }
    for (LabelIx e = 0; e < m; ++e) {
      Row r;
      r.a.assign(m, 0);
      if (mask >> e & 1) {
        r.a[e] = 1;  // w(e) ≤ −1
        r.b = -1;
      } else {
        r.a[e] = -1;  // w(e) ≥ 0
        r.b = 0;
      }
      rows.push_back(std::move(r));
    }

    std::optional<std::vector<Rational>> solution = solve_leq(rows, m);
    if (!solution) continue;
    EdgeWeight w(grs.alphabets, scale_to_integers(*solution));
    if (!check_compatible(grs, w).compatible())
      fail(ErrorKind::Internal,
           "synthesized weight failed the compatibility check");
    return w;
  }
  return std::nullopt;
}

}  // namespace grw
