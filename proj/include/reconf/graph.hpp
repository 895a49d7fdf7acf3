#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reconf/error.hpp"

namespace reconf {

inline constexpr int unreachable = -1;

/// Hypergraph on vertices 0..n-1. Ordinary graphs are the rank-2 case.
///
/// Each edge is stored with its vertices sorted; edge order is kept as given so
/// iteration is deterministic. Duplicate edges are permitted here (derived
/// structures such as closed neighbourhoods produce them); the simple-graph
/// factory and the text parser reject them.
class hypergraph {
public:
  hypergraph() = default;

  hypergraph(int n, std::vector<std::vector<int>> edges)
      : n_(n), edges_(std::move(edges)), incidence_(n < 0 ? 0 : n) {
    if (n < 0)
      throw input_error("vertex count must be non-negative");
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      auto &edge = edges_[e];
      if (edge.empty())
        throw input_error("edge " + std::to_string(e) + " is empty");
      std::sort(edge.begin(), edge.end());
      if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
        throw input_error("edge " + std::to_string(e) + " repeats a vertex");
      for (int v : edge) {
        if (v < 0 || v >= n_)
          throw input_error("edge " + std::to_string(e) + " has vertex " + std::to_string(v) +
                            " out of range [0," + std::to_string(n_) + ")");
        incidence_[v].push_back(static_cast<int>(e));
      }
      rank_ = std::max(rank_, static_cast<int>(edge.size()));
    }
  }

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<std::vector<int>> &edges() const noexcept { return edges_; }
  std::span<const int> incident_edges(int v) const { return incidence_.at(v); }

  /// Largest edge size; 0 for an edgeless hypergraph.
  int rank() const noexcept { return rank_; }
  bool is_graph() const noexcept { return rank_ <= 2; }

  bool contains_vertex(int v) const noexcept { return v >= 0 && v < n_; }

  /// Vertices sharing at least one edge with v, excluding v, ascending.
  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int e : incidence_.at(v))
      for (int u : edges_[e])
        if (u != v)
          out.push_back(u);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

private:
  int n_ = 0;
  int rank_ = 0;
  std::vector<std::vector<int>> edges_;
  std::vector<std::vector<int>> incidence_;
};

/// Simple graph: rejects self-loops and duplicate edges.
inline hypergraph make_graph(int n, const std::vector<std::pair<int, int>> &edges) {
  std::set<std::pair<int, int>> seen;
  std::vector<std::vector<int>> list;
  list.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v)
      throw input_error("self-loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second)
      throw input_error("duplicate edge {" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + "}");
    list.push_back({u, v});
  }
  return hypergraph(n, std::move(list));
}

/// A set of token positions, kept sorted and duplicate-free.
class configuration {
public:
  configuration() = default;

  explicit configuration(std::vector<int> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    auto dup = std::adjacent_find(vertices_.begin(), vertices_.end());
    if (dup != vertices_.end())
      throw input_error("two tokens share vertex " + std::to_string(*dup));
  }

  configuration(std::initializer_list<int> vertices)
      : configuration(std::vector<int>(vertices)) {}

  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  const std::vector<int> &vertices() const noexcept { return vertices_; }
  auto begin() const noexcept { return vertices_.begin(); }
  auto end() const noexcept { return vertices_.end(); }
  int operator[](std::size_t i) const { return vertices_[i]; }

  bool contains(int v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  bool includes(const configuration &other) const {
    return std::includes(vertices_.begin(), vertices_.end(), other.begin(), other.end());
  }

  friend bool operator==(const configuration &, const configuration &) = default;
  friend auto operator<=>(const configuration &a, const configuration &b) {
    return a.vertices_ <=> b.vertices_;
  }

private:
  std::vector<int> vertices_;
};

inline configuration set_union(const configuration &a, const configuration &b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return configuration(std::move(out));
}

inline configuration set_intersection(const configuration &a, const configuration &b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return configuration(std::move(out));
}

inline configuration set_difference(const configuration &a, const configuration &b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return configuration(std::move(out));
}

inline void require_within(const hypergraph &h, const configuration &c) {
  for (int v : c)
    if (!h.contains_vertex(v))
      throw input_error("token on vertex " + std::to_string(v) + " outside [0," +
                        std::to_string(h.num_vertices()) + ")");
}

enum class condition { vertex_cover, dominating_set, independent_set, unconstrained };

inline const char *to_string(condition c) {
  switch (c) {
  case condition::vertex_cover:
    return "vc";
  case condition::dominating_set:
    return "ds";
  case condition::independent_set:
    return "is";
  case condition::unconstrained:
    return "none";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

/// Breadth-first search over the vertex/edge incidence structure. Each edge is
/// expanded once, so the cost is O(n + total edge size).
inline std::vector<int> distances_from(const hypergraph &h, int src) {
  if (!h.contains_vertex(src))
    throw input_error("source vertex " + std::to_string(src) + " out of range");
  std::vector<int> dist(h.num_vertices(), unreachable);
  std::vector<char> edge_done(h.num_edges(), 0);
  std::deque<int> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int e : h.incident_edges(v)) {
      if (edge_done[e])
        continue;
      edge_done[e] = 1;
      for (int u : h.edges()[e])
        if (dist[u] == unreachable) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
    }
  }
  return dist;
}

/// One shortest path s..t (inclusive); empty if t is unreachable. Ties are
/// broken by edge order and then by vertex id.
inline std::vector<int> shortest_path(const hypergraph &h, int s, int t) {
  if (!h.contains_vertex(s) || !h.contains_vertex(t))
    throw input_error("path endpoint out of range");
  std::vector<int> parent(h.num_vertices(), -1);
  std::vector<char> seen(h.num_vertices(), 0), edge_done(h.num_edges(), 0);
  std::deque<int> queue{s};
  seen[s] = 1;
  while (!queue.empty() && !seen[t]) {
    int v = queue.front();
    queue.pop_front();
    for (int e : h.incident_edges(v)) {
      if (edge_done[e])
        continue;
      edge_done[e] = 1;
      for (int u : h.edges()[e])
        if (!seen[u]) {
          seen[u] = 1;
          parent[u] = v;
          queue.push_back(u);
        }
    }
  }
  if (!seen[t])
    return {};
  std::vector<int> path;
  for (int v = t; v != -1; v = parent[v])
    path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

/// All-pairs distances, n BFS runs.
class distance_table {
public:
  distance_table() = default;

  explicit distance_table(const hypergraph &h) : n_(h.num_vertices()) {
    table_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int v = 0; v < n_; ++v) {
      auto row = distances_from(h, v);
      table_.insert(table_.end(), row.begin(), row.end());
    }
  }

  int num_vertices() const noexcept { return n_; }
  int operator()(int u, int v) const { return table_[static_cast<std::size_t>(u) * n_ + v]; }

  /// True when u and v are connected and at most `d` apart.
  bool within(int u, int v, int d) const {
    int x = (*this)(u, v);
    return x != unreachable && x <= d;
  }

private:
  int n_ = 0;
  std::vector<int> table_;
};

inline bool is_connected(const hypergraph &h) {
  if (h.num_vertices() == 0)
    return true;
  auto d = distances_from(h, 0);
  return std::find(d.begin(), d.end(), unreachable) == d.end();
}

inline int diameter(const hypergraph &h) {
  int best = 0;
  for (int v = 0; v < h.num_vertices(); ++v) {
    auto d = distances_from(h, v);
    for (int u = 0; u < h.num_vertices(); ++u) {
      if (d[u] == unreachable)
        throw input_error("hypergraph is disconnected: no path between vertices " +
                          std::to_string(v) + " and " + std::to_string(u));
      best = std::max(best, d[u]);
    }
  }
  return best;
}

inline void require_connected(const hypergraph &h) {
  if (!is_connected(h))
    throw input_error("hypergraph must be connected");
}

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

inline bool is_vertex_cover(const hypergraph &h, const configuration &c) {
  for (const auto &edge : h.edges())
    if (std::none_of(edge.begin(), edge.end(), [&](int v) { return c.contains(v); }))
      return false;
  return true;
}

inline void require_graph(const hypergraph &h, const char *what) {
  if (!h.is_graph())
    throw input_error(std::string(what) + " is only defined on graphs, got an edge of rank " +
                      std::to_string(h.rank()));
}

inline bool is_independent_set(const hypergraph &g, const configuration &c) {
  require_graph(g, "independent set");
  for (const auto &edge : g.edges())
    if (edge.size() == 2 && c.contains(edge[0]) && c.contains(edge[1]))
      return false;
  return true;
}

inline bool is_dominating_set(const hypergraph &g, const configuration &c) {
  require_graph(g, "dominating set");
  std::vector<char> dominated(g.num_vertices(), 0);
  for (int v : c)
    dominated[v] = 1;
  for (const auto &edge : g.edges())
    if (edge.size() == 2) {
      if (c.contains(edge[0]))
        dominated[edge[1]] = 1;
      if (c.contains(edge[1]))
        dominated[edge[0]] = 1;
    }
  return std::all_of(dominated.begin(), dominated.end(), [](char x) { return x != 0; });
}

inline bool check_condition(const hypergraph &h, condition cond, const configuration &c) {
  require_within(h, c);
  switch (cond) {
  case condition::vertex_cover:
    return is_vertex_cover(h, c);
  case condition::dominating_set:
    return is_dominating_set(h, c);
  case condition::independent_set:
    return is_independent_set(h, c);
  case condition::unconstrained:
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Derived structures
// ---------------------------------------------------------------------------

/// One hyperedge N[v] per vertex. A set dominates the graph exactly when it
/// covers this hypergraph, and hypergraph distance <= 1 iff graph distance <= 2.
inline hypergraph closed_neighborhood_hypergraph(const hypergraph &g) {
  require_graph(g, "closed neighbourhood hypergraph");
  std::vector<std::vector<int>> edges;
  edges.reserve(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(v);
    nb.push_back(v);
    edges.push_back(std::move(nb));
  }
  return hypergraph(g.num_vertices(), std::move(edges));
}

/// A graph on a relabelled vertex subset; `ids[i]` is the original id of vertex i.
struct relabeled_graph {
  hypergraph graph;
  std::vector<int> ids;

  int original(int v) const { return ids.at(v); }
  int local(int original_id) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), original_id);
    if (it == ids.end() || *it != original_id)
      throw input_error("vertex " + std::to_string(original_id) + " not in relabelled subset");
    return static_cast<int>(it - ids.begin());
  }
};

/// Graph on S (relabelled to 0..|S|-1 in ascending id order) with an edge between
/// u and v whenever dist_G(u, v) <= d.
inline relabeled_graph bounded_distance_graph(const hypergraph &g, const configuration &s, int d) {
  require_within(g, s);
  relabeled_graph out;
  out.ids = s.vertices();
  std::vector<std::vector<int>> edges;
  for (std::size_t i = 0; i < out.ids.size(); ++i) {
    auto dist = distances_from(g, out.ids[i]);
    for (std::size_t j = i + 1; j < out.ids.size(); ++j) {
      int x = dist[out.ids[j]];
      if (x != unreachable && x <= d)
        edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  out.graph = hypergraph(static_cast<int>(out.ids.size()), std::move(edges));
  return out;
}

/// Result of contracting a hypergraph through a set of kept vertices.
struct contraction {
  hypergraph graph;                  // on the remaining vertices, relabelled
  std::vector<int> ids;              // local -> original
  std::vector<int> index;            // original -> local, or -1 for kept vertices
  std::map<std::pair<int, int>, std::vector<int>> witness; // added edge (orig u<v) -> path u..v

  /// The original-id path realising the added edge {u, v}, oriented from u to v.
  std::vector<int> expand(int u, int v) const {
    auto it = witness.find(std::minmax(u, v));
    if (it == witness.end())
      return {};
    auto path = it->second;
    if (path.front() != u)
      std::reverse(path.begin(), path.end());
    return path;
  }
};

/// Removes `keep` from H. Original edges are restricted to the remaining vertices
/// (empty restrictions dropped); a rank-2 edge {u, v} is added for every pair that
/// is not already adjacent but is joined by a path whose internal vertices all lie
/// in `keep`. One shortest such path is recorded per added edge.
inline contraction contract_through(const hypergraph &h, const configuration &keep) {
  require_within(h, keep);
  const int n = h.num_vertices();
  contraction out;
  out.index.assign(n, -1);
  for (int v = 0; v < n; ++v)
    if (!keep.contains(v)) {
      out.index[v] = static_cast<int>(out.ids.size());
      out.ids.push_back(v);
    }

  std::vector<std::vector<int>> edges;
  std::set<std::pair<int, int>> adjacent;
  for (const auto &edge : h.edges()) {
    std::vector<int> restricted;
    for (int v : edge)
      if (out.index[v] != -1)
        restricted.push_back(out.index[v]);
    if (restricted.empty())
      continue;
    for (std::size_t i = 0; i < restricted.size(); ++i)
      for (std::size_t j = i + 1; j < restricted.size(); ++j)
        adjacent.insert({out.ids[restricted[i]], out.ids[restricted[j]]});
    edges.push_back(std::move(restricted));
  }

  if (!keep.empty()) {
    for (int u : out.ids) {
      // BFS from u that may only continue through kept vertices.
      std::vector<int> parent(n, -2);
      std::deque<int> queue{u};
      parent[u] = -1;
      while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int e : h.incident_edges(x))
          for (int y : h.edges()[e]) {
            if (parent[y] != -2)
              continue;
            parent[y] = x;
            if (keep.contains(y)) {
              queue.push_back(y);
            } else if (x != u && u < y && !adjacent.count({u, y})) {
              std::vector<int> path;
              for (int z = y; z != -1; z = parent[z])
                path.push_back(z);
              std::reverse(path.begin(), path.end());
              out.witness.emplace(std::make_pair(u, y), std::move(path));
            }
          }
      }
    }
    for (const auto &[key, path] : out.witness)
      edges.push_back({out.index[key.first], out.index[key.second]});
  }

  out.graph = hypergraph(static_cast<int>(out.ids.size()), std::move(edges));
  return out;
}

} // namespace reconf
