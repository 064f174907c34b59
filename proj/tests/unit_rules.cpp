#include <doctest.h>

#include "grw/error.hpp"
#include "grw/rule.hpp"
#include "support/fixtures.hpp"

using namespace grw;

namespace {

struct CounterExample {
  GRS grs = grw_test::fixture_grs("q1q2.grs");
  Graph g1 = grw_test::fixture_graph("g1.gr", grs.alphabets);
  Graph g2 = grw_test::fixture_graph("g2.gr", grs.alphabets);

  const Rule& q1() const { return grs.rules[0]; }
  const Rule& q2() const { return grs.rules[1]; }
};

AlphabetsPtr tiny() { return make_alphabets({"E", "F"}, {"n"}); }

}  // namespace

TEST_SUITE("rules") {

TEST_CASE("consistency flags the first command after a del_node") {
  AlphabetsPtr alph = tiny();
  LabelIx e = alph->require_edge("E");
  auto report = check_consistency(
      {Command::del_node("a"), Command::add_edge("a", e, "b")});
  CHECK_FALSE(report.ok);
  CHECK(report.first_bad_index == 1);

  CHECK(check_consistency(
            {Command::del_edge("a", e, "b"), Command::del_node("a")})
            .ok);
}

TEST_CASE("the clean rule is consistent") {
  GRS fig1 = grw_test::fixture_grs("fig1.grs");
  CHECK(check_consistency(*fig1.find_rule("clean")).ok);
}

TEST_CASE("effective_commands keeps the last edit per triple") {
  AlphabetsPtr alph = tiny();
  LabelIx e = alph->require_edge("E");
  auto eff = effective_commands(
      {Command::add_edge("a", e, "b"), Command::del_edge("a", e, "b")});
  REQUIRE(eff.size() == 1);
  CHECK(eff[0].op == Command::Op::DelEdge);

  CHECK(effective_commands({}).empty());

  auto shifts = effective_commands(
      {Command::shift("a", "b"), Command::shift("b", "a")});
  CHECK(shifts.size() == 2);

  LabelIx n = alph->require_node("n");
  auto labels = effective_commands(
      {Command::relabel("a", n), Command::relabel("a", n)});
  CHECK(labels.size() == 1);
}

TEST_CASE("uniformity of the fixture rules") {
  GRS fig1 = grw_test::fixture_grs("fig1.grs");
  CHECK(is_uniform(*fig1.find_rule("rec")));
  CHECK(is_uniform(*fig1.find_rule("init")));
  CHECK(is_uniform(*fig1.find_rule("stop")));
  CHECK(is_uniform(*fig1.find_rule("clean")));
}

TEST_CASE("adding an undeclared edge breaks uniformity") {
  AlphabetsPtr alph = tiny();
  LabelIx e = alph->require_edge("E");
  Graph basic = Graph::make({{"a", "n"}, {"b", "n"}}, {}, alph);
  Rule r("bad", Pattern::basic_only(basic), {Command::add_edge("a", e, "b")});
  CHECK_FALSE(is_uniform(r));
}

TEST_CASE("deleting an own pattern edge is uniform") {
  AlphabetsPtr alph = tiny();
  LabelIx e = alph->require_edge("E");
  Graph basic = Graph::make({{"a", "n"}, {"b", "n"}}, {{"a", "E", "b"}}, alph);
  Rule r("ok", Pattern::basic_only(basic), {Command::del_edge("a", e, "b")});
  CHECK(is_uniform(r));
}

TEST_CASE("uniformity is undefined with del_node") {
  AlphabetsPtr alph = tiny();
  Graph basic = Graph::make({{"a", "n"}}, {}, alph);
  Rule r("del", Pattern::basic_only(basic), {Command::del_node("a")});
  CHECK_THROWS_AS(is_uniform(r), Error);
}

TEST_CASE("shift map composition") {
  std::vector<NodeId> nodes{"a", "b", "c"};
  ShiftMap identity = shift_map({}, nodes);
  for (const auto& n : nodes) CHECK(identity.apply(n) == n);

  ShiftMap one = shift_map({Command::shift("0", "1")}, {"0", "1"});
  CHECK(one.apply("0") == "1");
  CHECK(one.apply("1") == "1");

  ShiftMap two = shift_map(
      {Command::shift("a", "b"), Command::shift("b", "c")}, nodes);
  CHECK(two.apply("a") == "c");
  CHECK(two.apply("b") == "c");
  CHECK(two.apply("c") == "c");
  CHECK(two.merge_class("c") == std::vector<NodeId>{"a", "b", "c"});
}

TEST_CASE("q1 rewrites G1 to G2, merging the C edges") {
  CounterExample fx;
  Matching mu{{{"0", "1"}, {"1", "2"}}};
  Graph result = apply_commands(fx.g1, mu, fx.q1().commands());
  CHECK(result == fx.g2);
  CHECK(result.edge_count() == 2);
}

TEST_CASE("q2 rewrites G2 back to G1") {
  CounterExample fx;
  Matching mu{{{"3", "1"}, {"4", "2"}, {"5", "0"}}};
  Graph result = apply_commands(fx.g2, mu, fx.q2().commands());
  CHECK(result == fx.g1);
}

TEST_CASE("empty command list is the identity") {
  CounterExample fx;
  Matching mu{{{"0", "1"}, {"1", "2"}}};
  CHECK(apply_commands(fx.g1, mu, {}) == fx.g1);
}

TEST_CASE("add_edge on an existing triple has no effect") {
  CounterExample fx;
  LabelIx a = fx.grs.alphabets->require_edge("A");
  Matching mu{{{"0", "1"}, {"1", "2"}}};
  Graph result = apply_commands(fx.g1, mu, {Command::add_edge("0", a, "1")});
  CHECK(result == fx.g1);
}

TEST_CASE("del_node removes incident crown edges") {
  CounterExample fx;
  Matching mu{{{"0", "1"}, {"1", "2"}}};
  Graph result = apply_commands(fx.g1, mu, {Command::del_node("0")});
  CHECK(result.node_count() == 2);
  // Graph node 1 takes its A, B and C edges with it; only 0-C→2 survives.
  CHECK(result.edge_count() == 1);
  CHECK_FALSE(result.has_node("1"));
}

TEST_CASE("relabel to the same label is idempotent") {
  CounterExample fx;
  LabelIx e = fx.grs.alphabets->require_node("e");
  Matching mu{{{"0", "1"}, {"1", "2"}}};
  CHECK(apply_commands(fx.g1, mu, {Command::relabel("0", e)}) == fx.g1);
}

TEST_CASE("inconsistent sequences are rejected at application") {
  CounterExample fx;
  LabelIx a = fx.grs.alphabets->require_edge("A");
  Matching mu{{{"0", "1"}, {"1", "2"}}};
  CHECK_THROWS_AS(
      apply_commands(fx.g1, mu,
                     {Command::del_node("0"), Command::add_edge("0", a, "1")}),
      Error);
}

TEST_CASE("validate_rule rejects reflexive shifts and foreign ids") {
  AlphabetsPtr alph = tiny();
  Graph basic = Graph::make({{"a", "n"}, {"b", "n"}}, {}, alph);
  Rule reflexive("r", Pattern::basic_only(basic),
                 {Command::shift("a", "a")});
  CHECK_THROWS_AS(validate_rule(reflexive), Error);

  Rule foreign("f", Pattern::basic_only(basic), {Command::del_node("zz")});
  CHECK_THROWS_AS(validate_rule(foreign), Error);
}

TEST_CASE("shift transports only crown-incident edges") {
  // a --E--> k (crown), plus an intra-image edge a→b; shifting a to b must
  // move the crown edge and keep the image edge in place.
  AlphabetsPtr alph = tiny();
  LabelIx e = alph->require_edge("E");
  LabelIx f = alph->require_edge("F");
  Graph host = Graph::make(
      {{"ga", "n"}, {"gb", "n"}, {"gk", "n"}},
      {{"ga", "E", "gk"}, {"gk", "F", "ga"}, {"ga", "F", "gb"}}, alph);
  Matching mu{{{"a", "ga"}, {"b", "gb"}}};
  Graph shifted = apply_commands(host, mu, {Command::shift("a", "b")});
  CHECK(shifted.has_edge("gb", e, "gk"));
  CHECK(shifted.has_edge("gk", f, "gb"));
  CHECK(shifted.has_edge("ga", f, "gb"));
  CHECK_FALSE(shifted.has_edge("ga", e, "gk"));
  CHECK_FALSE(shifted.has_edge("gk", f, "ga"));
}

}  // TEST_SUITE
