#include <gtest/gtest.h>

#include "reconf/gadgets.hpp"
#include "support/brute.hpp"

using namespace reconf;

namespace {

bool all_hold(const gadget_instance &g) {
  for (const auto &c : verify_gadget(g))
    if (!c.holds)
      return false;
  return true;
}

// Fewest distance-2 pairs over all bijections start -> target whose pairs are
// all within distance 2; -1 when there is none.
int fewest_long_pairs(const gadget_instance &g) {
  const auto d = brute::distances(g.graph);
  auto a = g.start.vertices();
  auto b = g.target.vertices();
  int best = -1;
  do {
    int longs = 0;
    bool ok = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ok = ok && d[a[i]][b[i]] <= 2;
      longs += d[a[i]][b[i]] == 2;
    }
    if (ok && (best == -1 || longs < best))
      best = longs;
  } while (std::next_permutation(b.begin(), b.end()));
  return best;
}

std::optional<int> brute_shortest(const gadget_instance &g, const rule &r) {
  return brute::shortest(g.graph, g.cond, r, g.start.vertices(), g.target.vertices());
}

} // namespace

TEST(CycleVc, ShapeAndClaims) {
  for (int k = 2; k <= 5; ++k) {
    auto g = gen_cycle_vc(k);
    EXPECT_EQ(g.graph.num_vertices(), 2 * k);
    EXPECT_EQ(g.provenance, "oracle-verified");
    EXPECT_EQ(g.start, detail::stride(0, 2, k));
    EXPECT_EQ(g.target, detail::stride(1, 2, k));
    EXPECT_EQ(brute::solutions(g.graph, condition::vertex_cover, k).size(), 2u);
    EXPECT_FALSE(brute_shortest(g, rule::tj(k - 1, k)));
    EXPECT_EQ(brute_shortest(g, rule::all(1)), 1);
  }
  EXPECT_EQ(gen_cycle_vc(6).provenance, "verified at smaller size");
  EXPECT_THROW(gen_cycle_vc(1), input_error);
}

TEST(CycleDs, ShapeAndClaims) {
  for (int k = 2; k <= 3; ++k) {
    auto g = gen_cycle_ds(k);
    EXPECT_EQ(g.graph.num_vertices(), 3 * k);
    EXPECT_EQ(g.provenance, "oracle-verified");
    EXPECT_EQ(brute::solutions(g.graph, condition::dominating_set, k).size(), 3u);
    EXPECT_TRUE(brute::solutions(g.graph, condition::dominating_set, k - 1).empty());
    EXPECT_FALSE(brute_shortest(g, rule::tj(k - 1, 3 * k / 2)));
  }
  EXPECT_EQ(gen_cycle_ds(2).start, (configuration{0, 3}));
  EXPECT_EQ(gen_cycle_ds(2).target, (configuration{1, 4}));
}

TEST(DsGadget, ProofPropertiesHold) {
  for (int i : {2, 3}) {
    auto g = gen_ds_gadget(i);
    const ds_gadget_layout L{i};
    const int k = i + 1;
    ASSERT_EQ(g.k, k);
    EXPECT_EQ(g.graph.num_vertices(), 4 * i + 2);
    EXPECT_EQ(g.provenance, "oracle-verified");

    // Exactly the two advertised minimum dominating sets.
    auto mins = brute::solutions(g.graph, condition::dominating_set, k);
    EXPECT_EQ(mins, (std::vector<std::vector<int>>{g.start.vertices(), g.target.vertices()}));
    EXPECT_TRUE(brute::solutions(g.graph, condition::dominating_set, k - 1).empty());
    for (const auto &m : mins) {
      const bool has_a = std::count(m.begin(), m.end(), L.a()) > 0;
      const bool has_b = std::count(m.begin(), m.end(), L.b()) > 0;
      EXPECT_NE(has_a, has_b);
    }
    const auto d = brute::distances(g.graph);
    for (int j = 0; j < i; ++j)
      for (int p = 0; p < i; ++p)
        EXPECT_GE(d[L.x(j)][L.y(p)], 2);

    EXPECT_EQ(fewest_long_pairs(g), k - 2);
    EXPECT_FALSE(brute_shortest(g, rule::all(1)));
    const int diam = diameter(g.graph);
    for (int dd = 2; dd <= diam; ++dd)
      EXPECT_FALSE(brute_shortest(g, rule::tiered(k - 3, dd))) << "d=" << dd;
    EXPECT_TRUE(brute_shortest(g, rule::tiered(k - 2, 2)));
  }
  EXPECT_THROW(gen_ds_gadget(1), input_error);
}

TEST(IsGadget, ProofPropertiesHold) {
  for (int k : {3, 4}) {
    auto g = gen_is_gadget(k);
    EXPECT_LE(g.graph.num_vertices(), 16);
    EXPECT_EQ(g.provenance, "oracle-verified");
    EXPECT_TRUE(is_independent_set(g.graph, g.start));
    EXPECT_TRUE(is_independent_set(g.graph, g.target));
    EXPECT_EQ(static_cast<int>(g.start.size()), k);
    EXPECT_FALSE(brute_shortest(g, rule::all(2)));
    for (int kp = 0; kp <= k; ++kp)
      EXPECT_FALSE(brute_shortest(g, rule::tiered(kp, 2)));
    EXPECT_TRUE(brute_shortest(g, rule::tiered(1, 3)));
  }
  EXPECT_THROW(gen_is_gadget(2), input_error);
}

TEST(TGadget, ExactLayoutAndShortestLength) {
  for (int ell = 1; ell <= 3; ++ell) {
    auto g = gen_t_gadget(ell);
    const t_gadget_layout L{ell};
    EXPECT_EQ(g.graph.num_vertices(), 3 * ell + 4);
    EXPECT_EQ(g.graph.num_edges(), static_cast<std::size_t>(2 * ell + 2 + ell + 1));
    EXPECT_EQ(g.k, ell + 2);
    EXPECT_TRUE(g.start.contains(L.v(1)));
    EXPECT_FALSE(g.target.contains(L.v(1)));
    EXPECT_TRUE(g.target.contains(L.v(2 * ell + 3)));
    for (int p = 2; p <= 2 * ell + 2; p += 2) {
      auto nb = g.graph.neighbors(L.v(p));
      EXPECT_TRUE(std::binary_search(nb.begin(), nb.end(), L.u(p)));
      EXPECT_EQ(g.graph.neighbors(L.u(p)).size(), 1u);
    }
    EXPECT_EQ(brute_shortest(g, rule::all(1)), ell + 1);
  }
  EXPECT_EQ(gen_t_gadget(4).provenance, "verified at smaller size");
}

TEST(VerifyClaim, DetectsFalseClaims) {
  auto g = gen_cycle_vc(3);
  using kind = gadget_claim::kind;
  EXPECT_FALSE(verify_claim(g, {kind::shortest_equals, rule::all(1), 2}).holds);
  EXPECT_FALSE(verify_claim(g, {kind::unreachable, rule::all(1), 0}).holds);
  EXPECT_FALSE(verify_claim(g, {kind::reachable, rule::tj(2, 3), 0}).holds);
  EXPECT_FALSE(verify_claim(g, {kind::minimum_solutions, std::nullopt, 3}).holds);
  EXPECT_TRUE(verify_claim(g, {kind::shortest_at_least, rule::all(1), 1}).holds);
  EXPECT_FALSE(verify_claim(g, {kind::shortest_at_least, rule::all(1), 2}).holds);

  auto t = gen_t_gadget(2);
  EXPECT_TRUE(verify_claim(t, {kind::shortest_at_least, rule::all(1), 3}).holds);
  EXPECT_FALSE(verify_claim(t, {kind::shortest_at_least, rule::all(1), 4}).holds);

  auto tampered = g;
  tampered.claims.push_back({kind::shortest_equals, rule::all(1), 5});
  EXPECT_FALSE(all_hold(tampered));
  EXPECT_TRUE(all_hold(g));
}

TEST(GadgetClaim, Describes) {
  using kind = gadget_claim::kind;
  EXPECT_EQ(to_string(gadget_claim{kind::unreachable, rule::tiered(0, 2), 0}), "unreachable under tt:0:2");
  EXPECT_EQ(to_string(gadget_claim{kind::shortest_equals, rule::all(1), 3}), "shortest = 3 under tj:all:1");
}
