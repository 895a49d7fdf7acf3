#include <gtest/gtest.h>

#include "reconf/gadgets.hpp"
#include "reconf/oracle.hpp"
#include "reconf/random.hpp"
#include "support/brute.hpp"

using namespace reconf;

namespace {

hypergraph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v)
    e.emplace_back(v, (v + 1) % n);
  return make_graph(n, e);
}

hypergraph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < n; ++v)
    e.emplace_back(v, v + 1);
  return make_graph(n, e);
}

std::vector<std::vector<int>> as_vectors(const std::vector<configuration> &cs) {
  std::vector<std::vector<int>> out;
  for (const auto &c : cs)
    out.push_back(c.vertices());
  return out;
}

} // namespace

TEST(Binomial, ValuesAndSaturation) {
  EXPECT_EQ(binomial(6, 3), 20u);
  EXPECT_EQ(binomial(23, 11), 1352078u);
  EXPECT_EQ(binomial(5, 7), 0u);
  EXPECT_EQ(binomial(64, 32), 1832624140942590534ull);
  EXPECT_EQ(binomial(200, 100), std::numeric_limits<std::uint64_t>::max());
}

TEST(EnumerateSolutions, WorkedExamples) {
  auto c6 = enumerate_solutions(cycle(6), condition::vertex_cover, 3);
  auto has = [&](configuration c) { return std::find(c6.begin(), c6.end(), c) != c6.end(); };
  EXPECT_TRUE(has({0, 2, 4}));
  EXPECT_TRUE(has({1, 3, 5}));
  EXPECT_FALSE(has({0, 1, 3})); // edge {4,5} is uncovered
  EXPECT_EQ(c6.size(), 2u);
  EXPECT_EQ(enumerate_solutions(cycle(6), condition::vertex_cover, 4).size(), 9u);

  for (int k = 2; k <= 5; ++k) {
    auto min = enumerate_solutions(cycle(2 * k), condition::vertex_cover, k);
    EXPECT_EQ(as_vectors(min).size(), 2u);
    EXPECT_TRUE(enumerate_solutions(cycle(2 * k), condition::vertex_cover, k - 1).empty());
  }
  EXPECT_EQ(as_vectors(enumerate_solutions(cycle(9), condition::dominating_set, 3)),
            (std::vector<std::vector<int>>{{0, 3, 6}, {1, 4, 7}, {2, 5, 8}}));
  auto k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_TRUE(enumerate_solutions(k3, condition::independent_set, 2).empty());
}

TEST(EnumerateSolutions, MatchesBruteForceInCanonicalOrder) {
  rng_type rng(101);
  for (int round = 0; round < 40; ++round) {
    auto g = random_connected_graph(1 + round % 9, 0.3, rng);
    for (int k = 0; k <= g.num_vertices(); ++k)
      for (auto c : {condition::vertex_cover, condition::dominating_set, condition::independent_set,
                     condition::unconstrained})
        ASSERT_EQ(as_vectors(enumerate_solutions(g, c, k)), brute::solutions(g, c, k));
  }
}

TEST(EnumerateSolutions, CapAndSizeLimits) {
  try {
    enumerate_solutions(cycle(30), condition::vertex_cover, 15, oracle_options{1000});
    FAIL();
  } catch (const resource_error &e) {
    EXPECT_NE(std::string(e.what()).find("1000"), std::string::npos);
  }
  EXPECT_NO_THROW(enumerate_solutions(cycle(10), condition::vertex_cover, 5, oracle_options{252}));
  EXPECT_THROW(enumerate_solutions(path(65), condition::vertex_cover, 1), input_error);
}

TEST(StateSpace, AdjacencyIsSymmetricAndMatchesBijections) {
  rng_type rng(103);
  for (int round = 0; round < 25; ++round) {
    auto g = random_connected_graph(3 + round % 5, 0.3, rng);
    const auto bd = brute::distances(g);
    for (const auto &r : {rule::all(1), rule::sliding(), rule::tiered(1, 2), rule::tj(2, 3)}) {
      for (auto cond : {condition::vertex_cover, condition::independent_set}) {
        const int k = 1 + round % 3;
        state_space space(g, cond, r, k);
        for (int i = 0; i < static_cast<int>(space.size()); ++i) {
          std::vector<int> expect;
          for (int j = 0; j < static_cast<int>(space.size()); ++j)
            if (j != i && brute::move_exists(bd, space.states()[i].vertices(),
                                             space.states()[j].vertices(), brute::shape(r, k)))
              expect.push_back(j);
          ASSERT_EQ(space.neighbors(i), expect);
        }
        for (int i = 0; i < static_cast<int>(space.size()); ++i)
          for (int j : space.neighbors(i)) {
            const auto &back = space.neighbors(j);
            ASSERT_TRUE(std::binary_search(back.begin(), back.end(), i));
          }
      }
    }
  }
  EXPECT_THROW(state_space(path(3), condition::vertex_cover, rule::relaxed(), 1), input_error);
}

TEST(Reachability, WorkedExamples) {
  auto c6 = cycle(6);
  auto same = reachability(c6, condition::vertex_cover, rule::all(1), {0, 2, 4}, {0, 2, 4});
  EXPECT_TRUE(same.reachable);
  EXPECT_EQ(same.shortest, 0);

  auto blocked = reachability(c6, condition::vertex_cover, rule::tj(2, 3), {0, 2, 4}, {1, 3, 5});
  EXPECT_FALSE(blocked.reachable);
  EXPECT_TRUE(blocked.exhaustive);
  EXPECT_FALSE(blocked.witness);

  auto t1 = gen_t_gadget(1);
  auto r = reachability(t1.graph, condition::vertex_cover, rule::all(1), t1.start, t1.target);
  EXPECT_EQ(r.shortest, 2);
  ASSERT_TRUE(r.witness);
  EXPECT_FALSE(validate_sequence(t1.graph, condition::vertex_cover, rule::all(1), *r.witness));

  EXPECT_THROW(reachability(c6, condition::vertex_cover, rule::all(1), {0, 1, 2}, {1, 3, 5}), input_error);
  EXPECT_THROW(reachability(c6, condition::vertex_cover, rule::all(1), {0, 2, 4}, {1, 3}), input_error);
}

TEST(Reachability, ShortestMatchesPlainBfsAndWitnessValidates) {
  rng_type rng(107);
  int reachable = 0, unreachable_pairs = 0;
  for (int round = 0; round < 160; ++round) {
    auto g = random_connected_graph(3 + round % 5, 0.25, rng);
    const std::vector<rule> rules{rule::all(1), rule::sliding(), rule::tiered(1, 2), rule::tj(1, 2)};
    const auto &r = rules[round % rules.size()];
    const auto cond = round % 2 ? condition::vertex_cover : condition::independent_set;
    std::uniform_int_distribution<int> size(1, g.num_vertices());
    auto pair = random_solution_pair(g, cond, size(rng), rng);
    if (!pair)
      continue;
    auto ref = brute::shortest(g, cond, r, pair->first.vertices(), pair->second.vertices());
    auto got = reachability(g, cond, r, pair->first, pair->second);
    ASSERT_EQ(got.reachable, ref.has_value());
    ASSERT_EQ(got.shortest, ref);
    auto back = reachability(g, cond, r, pair->second, pair->first);
    ASSERT_EQ(back.shortest, ref);
    if (got.witness) {
      ASSERT_EQ(static_cast<int>(got.witness->length()), *got.shortest);
      ASSERT_EQ(got.witness->front(), pair->first);
      ASSERT_EQ(got.witness->back(), pair->second);
      ASSERT_FALSE(validate_sequence(g, cond, r, *got.witness));
      ++reachable;
    } else {
      ++unreachable_pairs;
    }
  }
  EXPECT_GT(reachable, 20);
  EXPECT_GE(unreachable_pairs, 1);
}

TEST(Reachability, WitnessIsDeterministic) {
  auto g = cycle(8);
  auto a = reachability(g, condition::vertex_cover, rule::sliding(), {0, 2, 4, 6}, {1, 3, 5, 7});
  auto b = reachability(g, condition::vertex_cover, rule::sliding(), {0, 2, 4, 6}, {1, 3, 5, 7});
  ASSERT_EQ(a.reachable, b.reachable);
  if (a.witness) {
    EXPECT_EQ(a.witness->configs, b.witness->configs);
  }
  auto p = reachability(path(6), condition::unconstrained, rule::sliding(), {0, 1}, {4, 5});
  auto q = reachability(path(6), condition::unconstrained, rule::sliding(), {0, 1}, {4, 5});
  ASSERT_TRUE(p.witness);
  EXPECT_EQ(p.witness->configs, q.witness->configs);
}

TEST(Reachability, LengthLimit) {
  auto p4 = path(4);
  auto limited = reachability(p4, condition::unconstrained, rule::sliding(), {0, 1}, {2, 3}, {}, 3);
  EXPECT_FALSE(limited.reachable);
  EXPECT_FALSE(limited.exhaustive);
  auto enough = reachability(p4, condition::unconstrained, rule::sliding(), {0, 1}, {2, 3}, {}, 4);
  EXPECT_TRUE(enough.reachable);
  EXPECT_EQ(enough.shortest, 4);
  // A disconnected answer found before the limit bites is still exhaustive.
  auto c6 = cycle(6);
  auto none = reachability(c6, condition::vertex_cover, rule::tj(2, 3), {0, 2, 4}, {1, 3, 5}, {}, 10);
  EXPECT_FALSE(none.reachable);
  EXPECT_TRUE(none.exhaustive);
}

TEST(ComponentReport, WorkedExamples) {
  auto c6 = cycle(6);
  auto all = component_report(c6, condition::vertex_cover, rule::all(1), 3);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].size, enumerate_solutions(c6, condition::vertex_cover, 3).size());

  for (int k = 2; k <= 4; ++k) {
    auto g = cycle(2 * k);
    auto comps = component_report(g, condition::independent_set, rule::tj(k - 1, k), k);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].representative, (configuration{detail::stride(0, 2, k)}));
  }
  auto k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_TRUE(component_report(k3, condition::independent_set, rule::all(1), 2).empty());
}

TEST(ComponentReport, SizesAndDiametersMatchBfs) {
  rng_type rng(109);
  for (int round = 0; round < 20; ++round) {
    auto g = random_connected_graph(4 + round % 4, 0.3, rng);
    const int k = 1 + round % 3;
    const auto r = round % 2 ? rule::sliding() : rule::tiered(1, 2);
    auto comps = component_report(g, condition::vertex_cover, r, k);
    auto states = brute::solutions(g, condition::vertex_cover, k);
    std::size_t total = 0;
    for (const auto &c : comps) {
      total += c.size;
      int ecc_max = 0;
      std::size_t members = 0;
      for (const auto &s : states) {
        auto d = brute::shortest(g, condition::vertex_cover, r, c.representative.vertices(), s);
        if (!d)
          continue;
        ++members;
        for (const auto &t : states)
          if (auto e = brute::shortest(g, condition::vertex_cover, r, s, t))
            ecc_max = std::max(ecc_max, *e);
      }
      ASSERT_EQ(members, c.size);
      ASSERT_EQ(ecc_max, c.diameter);
    }
    ASSERT_EQ(total, states.size());
  }
}
