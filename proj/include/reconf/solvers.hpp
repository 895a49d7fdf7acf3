#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/graph.hpp"
#include "reconf/matching.hpp"
#include "reconf/rules.hpp"

namespace reconf {

namespace detail {

inline void require_same_size(const configuration &a, const configuration &b) {
  if (a.size() != b.size())
    throw input_error("start and target sizes differ (" + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()) + ")");
}

inline std::string describe(const configuration &c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.size(); ++i)
    out += (i ? "," : "") + std::to_string(c[i]);
  return out + "}";
}

// B(a, b, H): edge (i, j) whenever dist(a_i, b_j) <= 1, costed by that distance.
inline bipartite_graph unit_distance_graph(const configuration &a, const configuration &b,
                                           const distance_table &dist) {
  std::vector<bipartite_edge> edges;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int j = 0; j < static_cast<int>(b.size()); ++j)
      if (dist.within(a[i], b[j], 1))
        edges.push_back({i, j, dist(a[i], b[j])});
  return bipartite_graph(static_cast<int>(a.size()), static_cast<int>(b.size()), std::move(edges));
}

inline configuration pick(const configuration &c, const std::vector<int> &indices) {
  std::vector<int> out;
  for (int i : indices)
    out.push_back(c[i]);
  return configuration(std::move(out));
}

// Vertices of `pool` within distance 1 of some vertex in `set`.
inline configuration closed_neighbors_in(const configuration &set, const configuration &pool,
                                         const distance_table &dist) {
  std::vector<int> out;
  for (int p : pool)
    if (std::any_of(set.begin(), set.end(), [&](int a) { return dist.within(a, p, 1); }))
      out.push_back(p);
  return configuration(std::move(out));
}

} // namespace detail

/// Token sliding with no condition beyond distinct vertices. Repeatedly routes a
/// token of the current configuration outside the target to the nearest free
/// target vertex along a shortest path; a run of occupied path vertices is
/// crossed by sliding the tokens ahead one step each, front first.
inline reconf_sequence reconfigure_unconstrained(const hypergraph &h, const configuration &vs,
                                                 const configuration &vt) {
  require_within(h, vs);
  require_within(h, vt);
  detail::require_same_size(vs, vt);
  require_connected(h);

  auto seq = reconf_sequence::starting_at(vs);
  std::vector<char> occupied(h.num_vertices(), 0);
  for (int v : vs)
    occupied[v] = 1;
  auto slide = [&](int a, int b) {
    seq.push(make_move(seq.back(), {{a, b}}));
    occupied[a] = 0;
    occupied[b] = 1;
  };

  while (seq.back() != vt) {
    const auto pending = set_difference(seq.back(), vt);
    const int s = pending[0];
    const auto dist = distances_from(h, s);
    int t = -1;
    for (int v : vt)
      if (!occupied[v] && (t == -1 || dist[v] < dist[t]))
        t = v;
    const auto path = shortest_path(h, s, t);
    std::size_t i = 0;
    while (i + 1 < path.size()) {
      if (!occupied[path[i + 1]]) {
        slide(path[i], path[i + 1]);
        ++i;
        continue;
      }
      std::size_t free = i + 1;
      while (occupied[path[free]])
        ++free;
      for (std::size_t q = free; q > i; --q)
        slide(path[q - 1], path[q]);
      i = free;
    }
  }
  return seq;
}

/// (all, 1) token jumping with every vertex of vs ∩ vt occupied throughout. Runs
/// the unconstrained routine on H contracted through the intersection, then
/// realises each contracted edge by sliding all tokens along its witness path at
/// once.
inline reconf_sequence reconfigure_keep_intersection(const hypergraph &h, const configuration &vs,
                                                     const configuration &vt) {
  require_within(h, vs);
  require_within(h, vt);
  detail::require_same_size(vs, vt);
  require_connected(h);
  auto seq = reconf_sequence::starting_at(vs);
  if (vs == vt)
    return seq;

  const auto keep = set_intersection(vs, vt);
  const auto con = contract_through(h, keep);
  auto to_local = [&](const configuration &c) {
    std::vector<int> out;
    for (int v : set_difference(c, keep))
      out.push_back(con.index[v]);
    return configuration(std::move(out));
  };
  if (!is_connected(con.graph))
    throw contract_error("contracted hypergraph is disconnected");
  const auto inner = reconfigure_unconstrained(con.graph, to_local(vs), to_local(vt));

  for (const auto &mv : inner.moves) {
    auto it = std::find_if(mv.pairs.begin(), mv.pairs.end(),
                           [](auto p) { return p.first != p.second; });
    const int u = con.ids[it->first];
    const int v = con.ids[it->second];
    auto path = con.expand(u, v);
    if (path.empty())
      path = {u, v};
    std::vector<std::pair<int, int>> shifts;
    for (std::size_t q = 0; q + 1 < path.size(); ++q)
      shifts.emplace_back(path[q], path[q + 1]);
    seq.push(make_move(seq.back(), shifts));
  }
  return seq;
}

/// Shrinks vs until the result is a vertex cover that both vs and vt can reach
/// in one unit move: B(vs, Vm) and B(vt, Vm) each saturate Vm. On a Hall failure
/// with violator A ⊆ Vm the cover becomes (Vm \ A) ∪ (N[A] ∩ source), which is
/// strictly smaller and still a cover.
inline configuration move_to_common(const hypergraph &h, const configuration &vs,
                                    const configuration &vt, const distance_table &dist) {
  require_within(h, vs);
  require_within(h, vt);
  if (!is_vertex_cover(h, vs) || !is_vertex_cover(h, vt))
    throw input_error("move_to_common needs two vertex covers");
  configuration current = vs;
  for (int iter = 0; iter <= h.num_vertices() + 1; ++iter) {
    bool changed = false;
    for (const auto *source : {&vs, &vt}) {
      auto b = detail::unit_distance_graph(*source, current, dist);
      if (auto violator = hall_violator(b, side::right)) {
        auto a = detail::pick(current, *violator);
        current = set_union(set_difference(current, a), detail::closed_neighbors_in(a, *source, dist));
        changed = true;
        break;
      }
    }
    if (!changed)
      return current;
  }
  throw contract_error("move_to_common did not converge");
}

inline configuration move_to_common(const hypergraph &h, const configuration &vs,
                                    const configuration &vt) {
  return move_to_common(h, vs, vt, distance_table(h));
}

/// A configuration containing vm reachable from vs by one unit move. Tokens take
/// a minimum-distance matching onto vm; the rest stay put, and minimality keeps
/// them off vm.
inline std::pair<configuration, move> move_to_superset(const hypergraph &h, const configuration &vs,
                                                       const configuration &vm,
                                                       const distance_table &dist) {
  require_within(h, vs);
  require_within(h, vm);
  auto b = detail::unit_distance_graph(vs, vm, dist);
  if (hall_violator(b, side::right))
    throw contract_error("no matching of " + detail::describe(vs) + " saturates " +
                         detail::describe(vm));
  auto m = min_cost_saturating_matching(b, side::right);
  std::vector<int> dest(vs.size(), -1);
  for (auto [i, j] : m.pairs)
    dest[i] = vm[j];
  move mv;
  std::vector<int> target;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    int to = dest[i] == -1 ? vs[i] : dest[i];
    if (dest[i] == -1 && vm.contains(vs[i]))
      throw contract_error("stationary token collides with the common cover");
    mv.pairs.emplace_back(vs[i], to);
    target.push_back(to);
  }
  return {configuration(std::move(target)), std::move(mv)};
}

inline std::pair<configuration, move> move_to_superset(const hypergraph &h, const configuration &vs,
                                                       const configuration &vm) {
  return move_to_superset(h, vs, vm, distance_table(h));
}

struct cover_solution {
  reconf_sequence sequence;
  configuration common;      // Vm, contained in every non-endpoint configuration
  configuration near_start;  // V's
  configuration near_target; // V't
  move first;                // vs -> V's
  move last;                 // V't -> vt
  reconf_sequence middle;    // V's -> V't keeping V's ∩ V't occupied
};

namespace detail {

inline cover_solution solve_cover(const hypergraph &h, const configuration &vs,
                                  const configuration &vt, const distance_table &dist) {
  require_within(h, vs);
  require_within(h, vt);
  require_same_size(vs, vt);
  require_connected(h);
  if (!is_vertex_cover(h, vs) || !is_vertex_cover(h, vt))
    throw input_error("start and target must be vertex covers");

  cover_solution out;
  out.common = move_to_common(h, vs, vt, dist);
  auto [near_s, first] = move_to_superset(h, vs, out.common, dist);
  auto [near_t, back] = move_to_superset(h, vt, out.common, dist);
  out.near_start = std::move(near_s);
  out.near_target = std::move(near_t);
  out.first = std::move(first);
  out.last = back.reversed();
  out.middle = reconfigure_keep_intersection(h, out.near_start, out.near_target);
  return out;
}

} // namespace detail

/// Vertex cover reconfiguration under (all, 1) token jumping on a connected
/// hypergraph: one move into a cover containing Vm, a keep-intersection phase,
/// and one move out.
inline cover_solution solve_vertex_cover(const hypergraph &h, const configuration &vs,
                                         const configuration &vt) {
  const distance_table dist(h);
  auto out = detail::solve_cover(h, vs, vt, dist);
  out.sequence = reconf_sequence::starting_at(vs);
  out.sequence.push(out.first);
  out.sequence.append(out.middle);
  out.sequence.push(out.last);
  return out;
}

namespace detail {

// Rewrites a distance-<=2 move so that at most `budget` tokens travel farther than
// one edge in g, exchanging along alternating cycles of unit-distance pairs.
inline move limit_long_jumps(const move &mv, const distance_table &graph_dist, int budget) {
  std::size_t far = 0;
  for (auto [f, t] : mv.pairs)
    far += graph_dist(f, t) > 1;
  if (far <= static_cast<std::size_t>(budget))
    return mv;

  const auto sources = mv.sources();
  std::vector<int> targets_raw;
  for (auto [f, t] : mv.pairs)
    targets_raw.push_back(t);
  const configuration targets(std::move(targets_raw));
  auto index_of = [](const configuration &c, int v) {
    return static_cast<int>(std::lower_bound(c.begin(), c.end(), v) - c.begin());
  };

  std::vector<bipartite_edge> edges;
  std::vector<std::pair<int, int>> near;
  for (int i = 0; i < static_cast<int>(sources.size()); ++i)
    for (int j = 0; j < static_cast<int>(targets.size()); ++j) {
      int d = graph_dist(sources[i], targets[j]);
      if (d == unreachable || d > 2)
        continue;
      edges.push_back({i, j, d});
      if (d <= 1)
        near.emplace_back(i, j);
    }
  const int k = static_cast<int>(sources.size());
  bipartite_graph b(k, k, std::move(edges));
  matching current;
  for (auto [f, t] : mv.pairs)
    current.pairs.emplace_back(index_of(sources, f), index_of(targets, t));
  std::sort(current.pairs.begin(), current.pairs.end());

  matching repaired;
  try {
    repaired = alternating_cycle_repair(b, current, near, budget);
  } catch (const contract_error &) {
    // No alternating cycle: fall back to the cheapest reassignment, counting
    // distance-2 pairs only.
    std::vector<bipartite_edge> unit;
    for (const auto &e : b.edges())
      unit.push_back({e.left, e.right, e.cost > 1 ? 1 : 0});
    bipartite_graph c(k, k, std::move(unit));
    repaired = min_cost_saturating_matching(c, side::left);
    if (repaired.total_cost(c) > budget)
      throw contract_error("long-jump repair failed from " + describe(sources) + " to " +
                           describe(targets) + " (budget " + std::to_string(budget) + ")");
  }
  move out;
  for (auto [i, j] : repaired.pairs)
    out.pairs.emplace_back(sources[i], targets[j]);
  return out;
}

// Last resort when no single move fits the budget: breadth-first search over
// the dominating sets inside sources ∪ targets. Bounded, so it only runs on
// moves with few tokens.
inline std::optional<reconf_sequence> bridge_within(const hypergraph &g, const move &mv,
                                                    const distance_table &graph_dist, int budget) {
  const auto from = mv.sources();
  std::vector<int> to_raw;
  for (auto [f, t] : mv.pairs)
    to_raw.push_back(t);
  const configuration to(std::move(to_raw));
  const auto pool = set_union(from, to).vertices();
  const int k = static_cast<int>(from.size());
  const int u = static_cast<int>(pool.size());
  if (u > 20)
    return std::nullopt;
  const rule r = rule::tiered(budget, 2);
  std::vector<configuration> states;
  for (std::uint32_t m = 0; m < (1u << u); ++m) {
    if (std::popcount(m) != k)
      continue;
    std::vector<int> c;
    for (int i = 0; i < u; ++i)
      if (m >> i & 1)
        c.push_back(pool[i]);
    configuration conf(std::move(c));
    if (is_dominating_set(g, conf))
      states.push_back(std::move(conf));
  }
  auto index = [&](const configuration &c) {
    return static_cast<int>(std::find(states.begin(), states.end(), c) - states.begin());
  };
  const int s = index(from), t = index(to);
  std::vector<int> parent(states.size(), -1);
  std::deque<int> queue{s};
  parent[s] = s;
  while (!queue.empty() && parent[t] == -1) {
    int x = queue.front();
    queue.pop_front();
    for (int y = 0; y < static_cast<int>(states.size()); ++y)
      if (parent[y] == -1 && move_exists(states[x], states[y], r, graph_dist)) {
        parent[y] = x;
        queue.push_back(y);
      }
  }
  if (parent[t] == -1)
    return std::nullopt;
  std::vector<int> chain{t};
  while (chain.back() != s)
    chain.push_back(parent[chain.back()]);
  std::reverse(chain.begin(), chain.end());
  auto seq = reconf_sequence::starting_at(from);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    seq.push(*find_move(states[chain[i]], states[chain[i + 1]], r, graph_dist));
  return seq;
}

} // namespace detail

/// Dominating set reconfiguration under (k,1),(k-2,2) token jumping. Runs the
/// vertex cover pipeline on the closed-neighbourhood hypergraph, whose unit moves
/// are distance-2 moves in g, then trims every move to at most k-2 long jumps.
inline reconf_sequence solve_dominating_set(const hypergraph &g, const configuration &ds,
                                            const configuration &dt) {
  require_graph(g, "dominating set reconfiguration");
  require_within(g, ds);
  require_within(g, dt);
  detail::require_same_size(ds, dt);
  require_connected(g);
  if (!is_dominating_set(g, ds) || !is_dominating_set(g, dt))
    throw input_error("start and target must be dominating sets");
  const int k = static_cast<int>(ds.size());
  if (k < 2)
    throw input_error("dominating set reconfiguration needs k >= 2");

  const auto h = closed_neighborhood_hypergraph(g);
  const distance_table hyper_dist(h);
  const distance_table graph_dist(g);
  auto plan = detail::solve_cover(h, ds, dt, hyper_dist);

  const int budget = k - 2;
  auto seq = reconf_sequence::starting_at(ds);
  auto emit = [&](const move &mv) {
    try {
      seq.push(detail::limit_long_jumps(mv, graph_dist, budget));
    } catch (const contract_error &e) {
      auto bridge = detail::bridge_within(g, mv, graph_dist, budget);
      if (!bridge) {
        if (k == 2)
          throw contract_error(std::string("instance lies outside the k >= 3 guarantee: ") + e.what());
        throw;
      }
      seq.append(*bridge);
    }
  };
  emit(plan.first);
  for (const auto &mv : plan.middle.moves)
    emit(mv);
  emit(plan.last);
  return seq;
}

struct good_independent_set {
  configuration common;                        // Im
  configuration maximal;                       // I* ⊇ Im
  std::vector<std::pair<int, int>> from_start;  // Ms: start vertex -> Im vertex
  std::vector<std::pair<int, int>> from_target; // Mt: target vertex -> Im vertex
};

/// Grows an independent set Im into which both is and it can slide in one unit
/// move. On a Hall failure with violator A ⊆ source the set becomes
/// (Im \ N[A]) ∪ A, strictly larger and still independent. I* extends Im greedily
/// in ascending vertex order.
inline good_independent_set build_good_mis(const hypergraph &g, const configuration &is,
                                           const configuration &it, const distance_table &dist) {
  require_graph(g, "independent set reconfiguration");
  require_within(g, is);
  require_within(g, it);
  if (!is_independent_set(g, is) || !is_independent_set(g, it))
    throw input_error("start and target must be independent sets");

  configuration current = is;
  bool good = false;
  for (int iter = 0; iter <= g.num_vertices() + 1 && !good; ++iter) {
    good = true;
    for (const auto *source : {&is, &it}) {
      auto b = detail::unit_distance_graph(*source, current, dist);
      if (auto violator = hall_violator(b, side::left)) {
        auto a = detail::pick(*source, *violator);
        current = set_union(set_difference(current, detail::closed_neighbors_in(a, current, dist)), a);
        good = false;
        break;
      }
    }
  }
  if (!good)
    throw contract_error("build_good_mis did not converge");

  good_independent_set out;
  out.common = current;
  std::vector<int> maximal = current.vertices();
  std::vector<char> blocked(g.num_vertices(), 0);
  for (int v : current) {
    blocked[v] = 1;
    for (int u : g.neighbors(v))
      blocked[u] = 1;
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!blocked[v]) {
      maximal.push_back(v);
      blocked[v] = 1;
      for (int u : g.neighbors(v))
        blocked[u] = 1;
    }
  out.maximal = configuration(std::move(maximal));

  for (auto [source, sink] : {std::pair{&is, &out.from_start}, std::pair{&it, &out.from_target}}) {
    auto b = detail::unit_distance_graph(*source, current, dist);
    for (auto [i, j] : min_cost_saturating_matching(b, side::left).pairs)
      sink->emplace_back((*source)[i], current[j]);
  }
  return out;
}

inline good_independent_set build_good_mis(const hypergraph &g, const configuration &is,
                                           const configuration &it) {
  return build_good_mis(g, is, it, distance_table(g));
}

inline bool is_maximal_independent_set(const hypergraph &g, const configuration &c) {
  if (!is_independent_set(g, c))
    return false;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (c.contains(v))
      continue;
    auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](int u) { return c.contains(u); }))
      return false;
  }
  return true;
}

/// Single-token jumps of distance <= 3 between two subsets of a maximal
/// independent set: token sliding on the graph joining I* vertices at distance
/// <= 3, which is connected whenever g is.
inline reconf_sequence reconfigure_within_mis(const hypergraph &g, const configuration &istar,
                                              const configuration &i1, const configuration &i2) {
  require_graph(g, "independent set reconfiguration");
  require_within(g, istar);
  if (!is_maximal_independent_set(g, istar))
    throw contract_error("I* must be a maximal independent set");
  if (!istar.includes(i1) || !istar.includes(i2))
    throw contract_error("both configurations must lie inside I*");
  detail::require_same_size(i1, i2);

  const auto reduced = bounded_distance_graph(g, istar, 3);
  if (!is_connected(reduced.graph))
    throw contract_error("distance-3 graph on I* is disconnected");
  auto to_local = [&](const configuration &c) {
    std::vector<int> out;
    for (int v : c)
      out.push_back(reduced.local(v));
    return configuration(std::move(out));
  };
  const auto inner = reconfigure_unconstrained(reduced.graph, to_local(i1), to_local(i2));
  auto seq = reconf_sequence::starting_at(i1);
  for (const auto &mv : inner.moves) {
    move lifted;
    for (auto [f, t] : mv.pairs)
      lifted.pairs.emplace_back(reduced.original(f), reduced.original(t));
    seq.push(lifted);
  }
  return seq;
}

/// Independent set reconfiguration under (k,1),(1,3) token jumping.
inline reconf_sequence solve_independent_set(const hypergraph &g, const configuration &is,
                                             const configuration &it) {
  require_graph(g, "independent set reconfiguration");
  detail::require_same_size(is, it);
  require_connected(g);
  const distance_table dist(g);
  const auto plan = build_good_mis(g, is, it, dist);

  move first, last;
  std::vector<int> near_s, near_t;
  for (auto [f, t] : plan.from_start) {
    first.pairs.emplace_back(f, t);
    near_s.push_back(t);
  }
  for (auto [f, t] : plan.from_target) {
    last.pairs.emplace_back(t, f);
    near_t.push_back(t);
  }
  auto seq = reconf_sequence::starting_at(is);
  seq.push(first);
  seq.append(reconfigure_within_mis(g, plan.maximal, configuration(std::move(near_s)),
                                    configuration(std::move(near_t))));
  seq.push(last);
  return seq;
}

} // namespace reconf
