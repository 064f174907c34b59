#include <doctest.h>

#include <string>
#include <vector>

#include "grw/error.hpp"
#include "grw/io.hpp"
#include "support/fixtures.hpp"

using namespace grw;

TEST_SUITE("cli_io") {

TEST_CASE("parse a small graph") {
  AlphabetsPtr alph = make_alphabets({"A"}, {"alpha", "beta"});
  Graph g = parse_graph("node g0 alpha\nnode g1 beta\nedge g0 A g1", alph);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("empty file parses to the empty graph") {
  AlphabetsPtr alph = make_alphabets({"A"}, {"alpha"});
  CHECK(parse_graph("", alph).node_count() == 0);
  CHECK(parse_graph("").node_count() == 0);
}

TEST_CASE("the G0 fixture matches Example 3.1") {
  AlphabetsPtr alph = make_alphabets({"A", "B", "C", "D", "E"},
                                     {"alpha", "beta"});
  Graph g0 = grw_test::fixture_graph("example31_g0.gr", alph);
  CHECK(g0.node_count() == 3);
  CHECK(g0.edge_count() == 6);
}

TEST_CASE("syntax errors carry positions") {
  AlphabetsPtr alph = make_alphabets({"A"}, {"alpha"});
  try {
    parse_graph("node g0 alpha\nfrob g1", alph);
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Syntax);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_graph("node g0", alph), Error);
}

TEST_CASE("unknown labels surface with the offending line") {
  AlphabetsPtr alph = make_alphabets({"A"}, {"alpha"});
  CHECK_THROWS_AS(parse_graph("node g0 nope", alph), Error);
}

TEST_CASE("q1q2 fixture parses to the counter-example system") {
  GRS grs = grw_test::fixture_grs("q1q2.grs");
  REQUIRE(grs.rules.size() == 2);
  CHECK(grs.rules[0].name() == "q1");
  CHECK(grs.rules[0].commands().size() == 2);
  CHECK(grs.rules[1].pattern().forbidden_edges().size() == 2);
}

TEST_CASE("fig1 fixture parses to the four-rule system") {
  GRS grs = grw_test::fixture_grs("fig1.grs");
  REQUIRE(grs.rules.size() == 4);
  CHECK(grs.find_rule("init"));
  CHECK(grs.find_rule("rec"));
  CHECK(grs.find_rule("stop"));
  CHECK(grs.find_rule("clean"));
}

TEST_CASE("inconsistent command sequences are rejected at parse time") {
  const char* text =
      "edge_labels A\n"
      "node_labels X\n"
      "rule broken\n"
      "  match\n"
      "    node a X\n"
      "  commands\n"
      "    del_node a\n"
      "    label a X\n"
      "end\n";
  try {
    parse_grs(text);
    FAIL("expected InconsistentSequence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentSequence);
  }
}

TEST_CASE("grs files round-trip through render") {
  for (const char* name :
       {"q1q2.grs", "clique.grs", "fig1.grs", "fig1_main.grs",
        "fig1_clean.grs", "p0.grs", "p1.grs", "p2.grs", "raising.grs",
        "passive.grs"}) {
    CAPTURE(name);
    GRS parsed = parse_grs(grw_test::fixture_text(name));
    std::string rendered = render_grs(parsed);
    GRS reparsed = parse_grs(rendered);
    CHECK(render_grs(reparsed) == rendered);
    CHECK(reparsed.rules.size() == parsed.rules.size());
  }
}

TEST_CASE("graph files round-trip through render") {
  for (const char* name : {"example31_g0.gr", "g1.gr", "g2.gr", "c2.gr",
                           "c3.gr", "c4.gr", "chain2.gr", "chain3.gr",
                           "chain3_result.gr", "raising.gr",
                           "passive_short.gr", "passive_long.gr"}) {
    CAPTURE(name);
    Graph parsed = parse_graph(grw_test::fixture_text(name));
    Graph reparsed = parse_graph(render_graph(parsed));
    CHECK(parsed == reparsed);
  }
}

TEST_CASE("weights files round-trip through render") {
  GRS fig1 = grw_test::fixture_grs("fig1.grs");
  WeightsFile wf =
      load_weights(grw_test::fixture_path("fig1.wt"), fig1.alphabets);
  REQUIRE(wf.pis.size() == 1);
  CHECK(wf.w.of(fig1.alphabets->require_edge("A")) == -1);
  CHECK(wf.pis[0].a() == 1);
  CHECK(wf.pis[0].b() == 0);

  WeightsFile again = parse_weights(render_weights(wf), fig1.alphabets);
  CHECK(render_weights(again) == render_weights(wf));
}

TEST_CASE("pipeline files load their modules and round-trip") {
  Pipeline p = load_pipeline(grw_test::fixture_path("fig1.pln"));
  REQUIRE(p.modules.size() == 2);
  CHECK(p.modules[0].name == "walk");
  CHECK(p.modules[1].name == "clean");
  CHECK(p.modules[0].grs.rules.size() == 3);
  CHECK(p.modules[1].grs.rules.size() == 1);
  CHECK(render_pipeline(p) == grw_test::fixture_text("fig1.pln"));
}

TEST_CASE("pipelines demand shared alphabets") {
  CHECK_THROWS_AS(
      parse_pipeline("module a q1q2.grs\nmodule b clique.grs",
                     std::string(GRW_FIXTURE_DIR)),
      Error);
}

TEST_CASE("paper rule samples parse and behave") {
  GRS raising = grw_test::fixture_grs("raising.grs");
  Graph sentence =
      grw_test::fixture_graph("raising.gr", raising.alphabets);
  auto ms = find_matchings(raising.rules[0].pattern(), sentence);
  REQUIRE(ms.size() == 1);
  Graph rewritten =
      apply_commands(sentence, ms[0], raising.rules[0].commands());
  LabelIx subj = raising.alphabets->require_edge("SUBJ");
  LabelIx mod = raising.alphabets->require_edge("MOD");
  LabelIx obj = raising.alphabets->require_edge("OBJ");
  CHECK(rewritten.has_edge("work", subj, "mike"));
  CHECK(rewritten.has_edge("work", mod, "begins"));
  // The head role moves: see's OBJ edge follows the shift.
  CHECK(rewritten.has_edge("see", obj, "work"));
  CHECK_FALSE(rewritten.has_edge("see", obj, "begins"));

  GRS passive = grw_test::fixture_grs("passive.grs");
  Graph short_passive =
      grw_test::fixture_graph("passive_short.gr", passive.alphabets);
  Graph long_passive =
      grw_test::fixture_graph("passive_long.gr", passive.alphabets);
  CHECK(find_matchings(passive.rules[0].pattern(), short_passive).size() == 1);
  CHECK(find_matchings(passive.rules[0].pattern(), long_passive).empty());
}

}  // TEST_SUITE
