#include <gtest/gtest.h>

#include "reconf/random.hpp"
#include "reconf/rules.hpp"
#include "support/brute.hpp"

using namespace reconf;

namespace {

hypergraph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < n; ++v)
    e.emplace_back(v, v + 1);
  return make_graph(n, e);
}

hypergraph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v)
    e.emplace_back(v, (v + 1) % n);
  return make_graph(n, e);
}

move_error_kind error_kind(const hypergraph &h, const configuration &c, const move &mv,
                           const rule &r) {
  try {
    validate_move(h, c, mv, r);
  } catch (const move_error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "move was accepted";
  return move_error_kind::invalid_vertex;
}

std::vector<rule> sample_rules(int k) {
  std::vector<rule> out{rule::all(1), rule::all(2), rule::sliding(), rule::jumping(),
                        rule::tj(2, 2), rule::tj(1, 3)};
  for (int kp = 0; kp <= k; ++kp)
    for (int d : {2, 3})
      out.push_back(rule::tiered(kp, d));
  return out;
}

} // namespace

TEST(Rule, TextRoundTrip) {
  for (const char *text : {"tj:all:1", "tj:2:3", "tj:1:inf", "tt:0:2", "tt:3:4", "relaxed"})
    EXPECT_EQ(to_string(parse_rule(text)), text);
  EXPECT_EQ(parse_rule("tj:1:1"), rule::sliding());
  EXPECT_EQ(parse_rule("tt:1:3"), rule::tiered(1, 3));
}

TEST(Rule, RejectsMalformedText) {
  for (const char *text : {"", "tj", "tj:all", "tj:x:1", "tj:1:0", "tt:1:1", "tt:-1:2", "zz:1:1",
                           "tj:1:2:3", "tj:1: 2"})
    EXPECT_THROW(parse_rule(text), input_error) << text;
}

TEST(ValidateMove, WorkedExamples) {
  auto c6 = cycle(6);
  configuration c{0, 2, 4};
  move rot{{{0, 1}, {2, 3}, {4, 5}}};
  EXPECT_EQ(validate_move(c6, c, rot, rule::all(1)), (configuration{1, 3, 5}));
  try {
    validate_move(c6, c, rot, rule::tj(2, 1));
    FAIL();
  } catch (const move_error &e) {
    EXPECT_EQ(e.kind(), move_error_kind::mover_budget_exceeded);
    EXPECT_NE(std::string(e.what()).find("mover budget exceeded (3 > 2)"), std::string::npos);
  }
  auto id = make_move(c, {});
  for (const auto &r : sample_rules(3))
    EXPECT_EQ(validate_move(c6, c, id, r), c);
}

TEST(ValidateMove, DistinctErrorKinds) {
  auto p5 = path(5);
  configuration c{0, 2};
  EXPECT_EQ(error_kind(p5, c, move{{{0, 2}, {2, 4}}}, rule::all(1)),
            move_error_kind::distance_violated);
  EXPECT_EQ(error_kind(p5, c, move{{{0, 1}, {2, 1}}}, rule::all(1)),
            move_error_kind::duplicate_target);
  EXPECT_EQ(error_kind(p5, c, move{{{1, 0}, {2, 3}}}, rule::all(1)),
            move_error_kind::source_mismatch);
  EXPECT_EQ(error_kind(p5, c, move{{{0, 9}, {2, 3}}}, rule::all(1)),
            move_error_kind::invalid_vertex);
  EXPECT_EQ(error_kind(p5, c, move{{{0, 2}, {2, 4}}}, rule::tiered(1, 2)),
            move_error_kind::mover_budget_exceeded);
  EXPECT_EQ(validate_move(p5, c, move{{{0, 2}, {2, 4}}}, rule::tiered(2, 2)), (configuration{2, 4}));
  EXPECT_THROW(validate_move(p5, c, move{{{0, 1}, {2, 3}}}, rule::relaxed()), input_error);
}

TEST(ValidateMove, ReportsTheOffendingPair) {
  try {
    validate_move(path(5), {0, 2}, move{{{0, 1}, {2, 4}}}, rule::all(1));
    FAIL();
  } catch (const move_error &e) {
    EXPECT_NE(std::string(e.what()).find("(2,4)"), std::string::npos);
  }
}

TEST(FindMove, WorkedExamples) {
  auto c6 = cycle(6);
  auto rot = find_move(c6, {0, 2, 4}, {1, 3, 5}, rule::all(1));
  ASSERT_TRUE(rot);
  EXPECT_EQ(validate_move(c6, {0, 2, 4}, *rot, rule::all(1)), (configuration{1, 3, 5}));

  auto p5 = path(5);
  EXPECT_FALSE(find_move(p5, {0, 2}, {2, 4}, rule::all(1)));
  auto jump = find_move(p5, {0, 2}, {2, 4}, rule::all(2));
  ASSERT_TRUE(jump);
  EXPECT_EQ(jump->pairs, (std::vector<std::pair<int, int>>{{0, 2}, {2, 4}}));

  EXPECT_THROW(find_move(p5, {0}, {1, 2}, rule::all(1)), input_error);
  EXPECT_THROW(find_move(p5, {0}, {1}, rule::relaxed()), input_error);
}

TEST(FindMove, PrefersStationaryTokens) {
  // Under a one-mover budget the shared token must stay; otherwise two move.
  auto p5 = path(5);
  auto mv = find_move(p5, {0, 2}, {1, 2}, rule::sliding());
  ASSERT_TRUE(mv);
  EXPECT_EQ(mv->moving_count(), 1u);
}

TEST(FindMove, AgreesWithBijectionEnumeration) {
  rng_type rng(31);
  int moves = 0, blocked = 0;
  for (int round = 0; round < 30; ++round) {
    auto g = random_connected_graph(3 + round % 5, 0.3, rng);
    const int n = g.num_vertices();
    const auto bd = brute::distances(g);
    const distance_table dist(g);
    for (int k = 1; k <= std::min(3, n); ++k) {
      auto sets = brute::subsets(n, k);
      for (const auto &r : sample_rules(k))
        for (const auto &a : sets)
          for (const auto &b : sets) {
            const bool expect = brute::move_exists(bd, a, b, brute::shape(r, k));
            auto mv = find_move(configuration(a), configuration(b), r, dist);
            ASSERT_EQ(mv.has_value(), expect) << to_string(r);
            ASSERT_EQ(move_exists(configuration(a), configuration(b), r, dist), expect);
            ASSERT_EQ(find_move(configuration(b), configuration(a), r, dist).has_value(), expect);
            if (mv) {
              ASSERT_EQ(validate_move(g, configuration(a), *mv, r, dist), configuration(b));
              ++moves;
            } else {
              ++blocked;
            }
          }
    }
  }
  EXPECT_GT(moves, 1000);
  EXPECT_GT(blocked, 1000);
}

TEST(FindMove, TwoTierDegenerateCases) {
  rng_type rng(37);
  for (int round = 0; round < 20; ++round) {
    auto g = random_connected_graph(4 + round % 4, 0.3, rng);
    const distance_table dist(g);
    for (int k = 1; k <= 3; ++k) {
      auto sets = brute::subsets(g.num_vertices(), k);
      for (const auto &a : sets)
        for (const auto &b : sets) {
          configuration ca(a), cb(b);
          ASSERT_EQ(move_exists(ca, cb, rule::tiered(k, 3), dist), move_exists(ca, cb, rule::all(3), dist));
          ASSERT_EQ(move_exists(ca, cb, rule::tiered(0, 2), dist), move_exists(ca, cb, rule::all(1), dist));
        }
    }
  }
}

TEST(ValidateSequence, WorkedExamples) {
  auto c6 = cycle(6);
  auto single = reconf_sequence::starting_at({0, 2, 4});
  EXPECT_FALSE(validate_sequence(c6, condition::vertex_cover, rule::all(1), single));

  auto seq = reconf_sequence::starting_at({0, 2, 4});
  seq.push(move{{{0, 1}, {2, 3}, {4, 5}}});
  EXPECT_EQ(seq.back(), (configuration{1, 3, 5}));
  EXPECT_FALSE(validate_sequence(c6, condition::vertex_cover, rule::all(1), seq));

  auto bad = reconf_sequence::starting_at({0, 2, 4});
  bad.push(move{{{0, 0}, {2, 1}, {4, 4}}});
  bad.push(move{{{0, 0}, {1, 2}, {4, 4}}});
  auto issue = validate_sequence(c6, condition::independent_set, rule::all(1), bad);
  ASSERT_TRUE(issue);
  EXPECT_EQ(issue->at, sequence_issue::where::configuration);
  EXPECT_EQ(issue->index, 1u);
  EXPECT_EQ(issue->reason, "not an independent set");
}

TEST(ValidateSequence, MismatchedMoveAndConfigurations) {
  auto c6 = cycle(6);
  auto seq = reconf_sequence::starting_at({0, 2, 4});
  seq.push(move{{{0, 1}, {2, 3}, {4, 5}}});
  seq.configs[1] = configuration{1, 3, 4};
  auto issue = validate_sequence(c6, condition::unconstrained, rule::all(1), seq);
  ASSERT_TRUE(issue);
  EXPECT_EQ(issue->at, sequence_issue::where::move);
  EXPECT_EQ(issue->index, 0u);
  seq.moves.clear();
  EXPECT_TRUE(validate_sequence(c6, condition::unconstrained, rule::all(1), seq));
}

TEST(Sequence, PushDropsIdentityAndReversedMovesUndo) {
  auto seq = reconf_sequence::starting_at({0, 2});
  seq.push(make_move({0, 2}, {}));
  EXPECT_EQ(seq.length(), 0u);
  move mv{{{0, 1}, {2, 3}}};
  seq.push(mv);
  EXPECT_EQ(seq.back(), (configuration{1, 3}));
  EXPECT_EQ(validate_move(path(4), {1, 3}, mv.reversed(), rule::all(1)), (configuration{0, 2}));
}

TEST(RelaxedSequence, WorkedExamples) {
  using step = relaxed_step;
  auto p3 = path(3);
  configuration vs{1};
  auto issue = validate_relaxed_sequence(p3, vs, vs, {{step::add(0), step::remove(1)}});
  ASSERT_TRUE(issue);
  EXPECT_NE(issue->reason.find("addition budget"), std::string::npos);

  // A single jump per move never breaks a budget; the cover check still applies.
  auto k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_FALSE(validate_relaxed_sequence(k3, {0, 1}, {0, 2}, {{step::jump(1, 2)}}));
  auto c4 = cycle(4);
  auto blocked = validate_relaxed_sequence(c4, {0, 2}, {1, 3}, {{step::jump(0, 1)}});
  ASSERT_TRUE(blocked);
  EXPECT_EQ(blocked->reason, "not a vertex cover");
}

TEST(RelaxedSequence, TokenJumpingRunsAsSingletonJumps) {
  using step = relaxed_step;
  auto p4 = path(4);
  EXPECT_FALSE(validate_relaxed_sequence(p4, {0, 2}, {1, 3}, {{step::jump(0, 1)}, {step::jump(2, 3)}}));
  auto broken = validate_relaxed_sequence(p4, {1, 2}, {0, 1}, {{step::jump(2, 0)}});
  ASSERT_TRUE(broken);
  EXPECT_EQ(broken->index, 0u);
  EXPECT_EQ(broken->reason, "not a vertex cover");
}

TEST(RelaxedSequence, BudgetsAndMultisets) {
  using step = relaxed_step;
  auto k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  configuration vs{0, 1, 2}, vt{0, 1};
  // Remove, re-add, then pile a second token on vertex 1 and drop it.
  std::vector<relaxed_move> ok{{step::remove(2)}, {step::add(2)}, {step::jump(2, 1)}, {step::remove(1)}};
  EXPECT_FALSE(validate_relaxed_sequence(k3, vs, vt, ok));

  auto two = validate_relaxed_sequence(k3, vs, vs,
                                       {{step::remove(2)}, {step::add(2), step::jump(0, 0)},
                                        {step::jump(0, 0), step::jump(1, 1)}});
  ASSERT_TRUE(two);
  EXPECT_EQ(two->index, 2u);
  EXPECT_NE(two->reason.find("jump and addition budget"), std::string::npos);

  auto empty_vertex = validate_relaxed_sequence(k3, vt, vt, {{step::jump(2, 0)}});
  ASSERT_TRUE(empty_vertex);
  EXPECT_NE(empty_vertex->reason.find("no token"), std::string::npos);

  auto endpoint = validate_relaxed_sequence(k3, vs, vt, {});
  ASSERT_TRUE(endpoint);
  EXPECT_EQ(endpoint->at, sequence_issue::where::endpoint);
}
