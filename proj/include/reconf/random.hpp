#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/graph.hpp"
#include "reconf/oracle.hpp"

namespace reconf {

using rng_type = std::mt19937_64;

/// Random spanning tree plus each remaining pair independently with
/// probability p.
inline hypergraph random_connected_graph(int n, double p, rng_type &rng) {
  if (n < 1)
    throw input_error("need at least one vertex");
  std::set<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    edges.emplace(parent(rng), v);
  }
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!edges.count({u, v}) && coin(rng))
        edges.emplace(u, v);
  return make_graph(n, {edges.begin(), edges.end()});
}

struct split_graph {
  hypergraph graph;
  configuration clique, independent;
};

/// Clique on the first `clique_size` vertices; every other vertex gets each
/// clique vertex as a neighbour with probability p (and at least one).
inline split_graph random_split_graph(int clique_size, int independent_size, double p,
                                      rng_type &rng) {
  if (clique_size < 1 || independent_size < 0)
    throw input_error("split graph needs a non-empty clique");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < clique_size; ++u)
    for (int v = u + 1; v < clique_size; ++v)
      edges.emplace_back(u, v);
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<int> any(0, clique_size - 1);
  std::vector<int> c, i;
  for (int v = 0; v < clique_size; ++v)
    c.push_back(v);
  for (int w = clique_size; w < clique_size + independent_size; ++w) {
    i.push_back(w);
    const int forced = any(rng);
    for (int u = 0; u < clique_size; ++u)
      if (u == forced || coin(rng))
        edges.emplace_back(u, w);
  }
  return {make_graph(clique_size + independent_size, edges), configuration(c), configuration(i)};
}

/// Two solutions of size k drawn uniformly (with replacement) from the
/// oracle's enumeration, or nothing when there are none.
inline std::optional<std::pair<configuration, configuration>>
random_solution_pair(const hypergraph &h, condition cond, int k, rng_type &rng,
                     const oracle_options &opts = {}) {
  const auto all = enumerate_solutions(h, cond, k, opts);
  if (all.empty())
    return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  const auto &a = all[pick(rng)];
  const auto &b = all[pick(rng)];
  return std::pair{a, b};
}

} // namespace reconf
