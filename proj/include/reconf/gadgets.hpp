#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/graph.hpp"
#include "reconf/oracle.hpp"
#include "reconf/rules.hpp"

namespace reconf {

struct gadget_claim {
  enum class kind {
    minimum_solutions,   // exactly `value` solutions of size k, none of size k-1
    unreachable,         // start cannot reach target under `move_rule`
    reachable,           // start reaches target under `move_rule`
    shortest_equals,     // shortest sequence has exactly `value` moves
    shortest_at_least,   // no sequence with fewer than `value` moves
    long_pairs_at_least, // every distance-<=2 bijection start->target has >= `value` distance-2 pairs
  };
  kind type = kind::unreachable;
  std::optional<rule> move_rule;
  int value = 0;
};

inline std::string to_string(const gadget_claim &c) {
  const std::string r = c.move_rule ? to_string(*c.move_rule) : std::string{};
  const std::string v = std::to_string(c.value);
  switch (c.type) {
  case gadget_claim::kind::minimum_solutions:
    return "exactly " + v + " minimum solutions";
  case gadget_claim::kind::unreachable:
    return "unreachable under " + r;
  case gadget_claim::kind::reachable:
    return "reachable under " + r;
  case gadget_claim::kind::shortest_equals:
    return "shortest = " + v + " under " + r;
  case gadget_claim::kind::shortest_at_least:
    return "shortest >= " + v + " under " + r;
  case gadget_claim::kind::long_pairs_at_least:
    return "every distance-2 bijection uses >= " + v + " distance-2 pairs";
  }
  return "?";
}

struct gadget_instance {
  std::string name;
  hypergraph graph;
  condition cond = condition::vertex_cover;
  int k = 0;
  configuration start, target;
  std::vector<gadget_claim> claims;
  std::string provenance = "unverified";
};

struct claim_check {
  gadget_claim claim;
  bool holds = false;
  std::string detail;
};

namespace detail {

inline claim_check check_long_pairs(const gadget_instance &g, const gadget_claim &c) {
  distance_table dist(g.graph);
  std::vector<int> perm(g.target.vertices());
  int bijections = 0, fewest = -1;
  do {
    int long_pairs = 0;
    bool ok = true;
    for (std::size_t i = 0; i < perm.size() && ok; ++i) {
      const int d = dist(g.start[i], perm[i]);
      ok = d != unreachable && d <= 2;
      long_pairs += d == 2;
    }
    if (!ok)
      continue;
    ++bijections;
    if (fewest == -1 || long_pairs < fewest)
      fewest = long_pairs;
  } while (std::next_permutation(perm.begin(), perm.end()));
  claim_check out{c, bijections > 0 && fewest >= c.value, ""};
  out.detail = std::to_string(bijections) + " bijections, fewest distance-2 pairs " +
               std::to_string(fewest);
  return out;
}

} // namespace detail

/// Decides one claim with the exhaustive oracle.
inline claim_check verify_claim(const gadget_instance &g, const gadget_claim &c,
                                const oracle_options &opts = {}) {
  using kind = gadget_claim::kind;
  if (c.type == kind::long_pairs_at_least)
    return detail::check_long_pairs(g, c);
  if (c.type == kind::minimum_solutions) {
    const auto exact = enumerate_solutions(g.graph, g.cond, g.k, opts);
    const auto smaller = enumerate_solutions(g.graph, g.cond, g.k - 1, opts);
    const bool has_endpoints = std::find(exact.begin(), exact.end(), g.start) != exact.end() &&
                               std::find(exact.begin(), exact.end(), g.target) != exact.end();
    return {c, smaller.empty() && has_endpoints && static_cast<int>(exact.size()) == c.value,
            std::to_string(exact.size()) + " of size " + std::to_string(g.k) + ", " +
                std::to_string(smaller.size()) + " of size " + std::to_string(g.k - 1)};
  }
  std::optional<int> limit;
  if (c.type == kind::shortest_at_least)
    limit = c.value - 1;
  const auto res = reachability(g.graph, g.cond, *c.move_rule, g.start, g.target, opts, limit);
  const std::string found =
      res.reachable ? "shortest " + std::to_string(*res.shortest)
                    : (res.exhaustive ? std::string("unreachable")
                                      : "none within " + std::to_string(*limit) + " moves");
  switch (c.type) {
  case kind::unreachable:
    return {c, !res.reachable && res.exhaustive, found};
  case kind::reachable:
    return {c, res.reachable, found};
  case kind::shortest_equals:
    return {c, res.reachable && *res.shortest == c.value, found};
  case kind::shortest_at_least:
    return {c, !res.reachable, found};
  default:
    break;
  }
  return {c, false, "unknown claim"};
}

inline std::vector<claim_check> verify_gadget(const gadget_instance &g,
                                              const oracle_options &opts = {}) {
  std::vector<claim_check> out;
  for (const auto &c : g.claims)
    out.push_back(verify_claim(g, c, opts));
  return out;
}

namespace detail {

// Runs every claim and refuses to hand out an instance that fails one.
inline gadget_instance self_verified(gadget_instance g, bool within_cap) {
  if (!within_cap) {
    g.provenance = "verified at smaller size";
    return g;
  }
  for (const auto &check : verify_gadget(g))
    if (!check.holds)
      throw contract_error(g.name + ": claim \"" + to_string(check.claim) +
                           "\" failed (" + check.detail + ")");
  g.provenance = "oracle-verified";
  return g;
}

inline hypergraph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    edges.emplace_back(v, (v + 1) % n);
  return make_graph(n, edges);
}

inline configuration stride(int first, int step, int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i)
    out.push_back(first + i * step);
  return configuration(std::move(out));
}

} // namespace detail

/// C_{2k}: the two alternating covers need every token to move at once.
inline gadget_instance gen_cycle_vc(int k) {
  if (k < 2)
    throw input_error("cycle gadget needs k >= 2");
  gadget_instance g{"cycle-vc-" + std::to_string(k), detail::cycle(2 * k),
                    condition::vertex_cover, k, detail::stride(0, 2, k), detail::stride(1, 2, k), {}};
  using kind = gadget_claim::kind;
  g.claims = {{kind::minimum_solutions, std::nullopt, 2},
              {kind::unreachable, rule::tj(k - 1, k), 0},
              {kind::shortest_equals, rule::all(1), 1}};
  return detail::self_verified(std::move(g), k <= 5);
}

/// C_{3k}: three disjoint minimum dominating sets.
inline gadget_instance gen_cycle_ds(int k) {
  if (k < 2)
    throw input_error("cycle gadget needs k >= 2");
  gadget_instance g{"cycle-ds-" + std::to_string(k), detail::cycle(3 * k),
                    condition::dominating_set, k, detail::stride(0, 3, k), detail::stride(1, 3, k), {}};
  using kind = gadget_claim::kind;
  g.claims = {{kind::minimum_solutions, std::nullopt, 3},
              {kind::unreachable, rule::tj(k - 1, 3 * k / 2), 0}};
  return detail::self_verified(std::move(g), k <= 4);
}

/// Vertex ids of the dominating set gadget with i blocks.
struct ds_gadget_layout {
  int blocks;
  int a() const { return 0; }
  int b() const { return 1; }
  int x(int j) const { return 2 + 4 * j; }
  int u(int j) const { return 3 + 4 * j; }
  int u_prime(int j) const { return 4 + 4 * j; }
  int y(int j) const { return 5 + 4 * j; }
  int num_vertices() const { return 2 + 4 * blocks; }
};

/// Apex pair a, b and blocks S_j = {x_j, u_j, u'_j, y_j}. Each block is the
/// 4-cycle x_j u_j y_j u'_j; a is joined to every x_j and b to every y_j.
/// Minimum dominating sets are {a, y_1..y_i} and {b, x_1..x_i}; moving
/// between them pairs i-1 tokens at distance exactly 2.
inline gadget_instance gen_ds_gadget(int i) {
  if (i < 2)
    throw input_error("dominating set gadget needs i >= 2");
  const ds_gadget_layout L{i};
  std::vector<std::pair<int, int>> edges;
  std::vector<int> da{L.a()}, db{L.b()};
  for (int j = 0; j < i; ++j) {
    edges.insert(edges.end(), {{L.x(j), L.u(j)},
                               {L.u(j), L.y(j)},
                               {L.y(j), L.u_prime(j)},
                               {L.u_prime(j), L.x(j)},
                               {L.a(), L.x(j)},
                               {L.b(), L.y(j)}});
    da.push_back(L.y(j));
    db.push_back(L.x(j));
  }
  const int k = i + 1;
  gadget_instance g{"ds-gadget-" + std::to_string(i), make_graph(L.num_vertices(), edges),
                    condition::dominating_set, k, configuration(da), configuration(db), {}};
  using kind = gadget_claim::kind;
  g.claims.push_back({kind::minimum_solutions, std::nullopt, 2});
  g.claims.push_back({kind::unreachable, rule::all(1), 0});
  for (int d = 2; d <= diameter(g.graph); ++d)
    g.claims.push_back({kind::unreachable, rule::tiered(k - 3, d), 0});
  g.claims.push_back({kind::reachable, rule::tiered(k - 2, 2), 0});
  g.claims.push_back({kind::long_pairs_at_least, std::nullopt, k - 2});
  return detail::self_verified(std::move(g), i <= 3);
}

/// Vertex ids of the independent set gadget.
struct is_gadget_layout {
  int k;
  int a() const { return 0; }
  int c() const { return 1; }
  int leaf_of_a(int j) const { return 2 + j; }     // j < k-1
  int leaf_of_c(int j) const { return 1 + k + j; } // j < k
  int num_vertices() const { return 2 * k + 1; }
};

/// Two adjacent hubs a and c, a with k-1 leaves, c with k leaves. Start holds
/// a's leaves plus one leaf of c, target holds all leaves of c. Tokens on a's
/// leaves can only leave by jumping three steps.
inline gadget_instance gen_is_gadget(int k) {
  if (k < 3)
    throw input_error("independent set gadget needs k >= 3");
  const is_gadget_layout L{k};
  std::vector<std::pair<int, int>> edges{{L.a(), L.c()}};
  std::vector<int> red, blue;
  for (int j = 0; j < k - 1; ++j) {
    edges.emplace_back(L.a(), L.leaf_of_a(j));
    red.push_back(L.leaf_of_a(j));
  }
  for (int j = 0; j < k; ++j) {
    edges.emplace_back(L.c(), L.leaf_of_c(j));
    blue.push_back(L.leaf_of_c(j));
  }
  red.push_back(L.leaf_of_c(0));
  gadget_instance g{"is-gadget-" + std::to_string(k), make_graph(L.num_vertices(), edges),
                    condition::independent_set, k, configuration(red), configuration(blue), {}};
  using kind = gadget_claim::kind;
  g.claims = {{kind::unreachable, rule::all(2), 0}, {kind::reachable, rule::tiered(1, 3), 0}};
  return detail::self_verified(std::move(g), k <= 4);
}

/// Vertex ids inside T^l: path v_1..v_{2l+3} then leaves u_2, u_4, .., u_{2l+2}.
struct t_gadget_layout {
  int ell;
  int v(int p) const { return p - 1; }             // 1 <= p <= 2l+3
  int u(int p) const { return 2 * ell + 2 + p / 2; } // p even, 2 <= p <= 2l+2
  int num_vertices() const { return 3 * ell + 4; }
  configuration start(int offset = 0) const {
    std::vector<int> out{offset + v(1)};
    for (int p = 2; p <= 2 * ell + 2; p += 2)
      out.push_back(offset + v(p));
    return configuration(std::move(out));
  }
  configuration target(int offset = 0) const {
    std::vector<int> out{offset + v(2 * ell + 3)};
    for (int p = 2; p <= 2 * ell + 2; p += 2)
      out.push_back(offset + v(p));
    return configuration(std::move(out));
  }
  std::vector<std::pair<int, int>> edges(int offset = 0) const {
    std::vector<std::pair<int, int>> out;
    for (int p = 1; p < 2 * ell + 3; ++p)
      out.emplace_back(offset + v(p), offset + v(p + 1));
    for (int p = 2; p <= 2 * ell + 2; p += 2)
      out.emplace_back(offset + v(p), offset + u(p));
    return out;
  }
};

inline gadget_instance gen_t_gadget(int ell) {
  if (ell < 1)
    throw input_error("T gadget needs l >= 1");
  const t_gadget_layout L{ell};
  gadget_instance g{"t-gadget-" + std::to_string(ell), make_graph(L.num_vertices(), L.edges()),
                    condition::vertex_cover, ell + 2, L.start(), L.target(), {}};
  g.claims = {{gadget_claim::kind::shortest_equals, rule::all(1), ell + 1}};
  return detail::self_verified(std::move(g), ell <= 3);
}

} // namespace reconf
