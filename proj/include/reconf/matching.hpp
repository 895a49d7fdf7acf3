#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reconf/error.hpp"

namespace reconf {

enum class side { left, right };

struct bipartite_edge {
  int left = 0;
  int right = 0;
  std::int64_t cost = 0;
};

class bipartite_graph {
public:
  bipartite_graph() = default;

  bipartite_graph(int left_size, int right_size, std::vector<bipartite_edge> edges)
      : left_size_(left_size), right_size_(right_size), edges_(std::move(edges)),
        left_adj_(left_size < 0 ? 0 : left_size), right_adj_(right_size < 0 ? 0 : right_size) {
    if (left_size < 0 || right_size < 0)
      throw input_error("bipartite side sizes must be non-negative");
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto &e = edges_[i];
      if (e.left < 0 || e.left >= left_size_ || e.right < 0 || e.right >= right_size_)
        throw input_error("bipartite edge (" + std::to_string(e.left) + "," +
                          std::to_string(e.right) + ") out of range");
      if (e.cost < 0)
        throw input_error("bipartite edge costs must be non-negative");
      if (!seen.insert({e.left, e.right}).second)
        throw input_error("duplicate bipartite edge (" + std::to_string(e.left) + "," +
                          std::to_string(e.right) + ")");
      left_adj_[e.left].push_back(static_cast<int>(i));
      right_adj_[e.right].push_back(static_cast<int>(i));
    }
    auto by_right = [&](int a, int b) { return edges_[a].right < edges_[b].right; };
    auto by_left = [&](int a, int b) { return edges_[a].left < edges_[b].left; };
    for (auto &adj : left_adj_)
      std::sort(adj.begin(), adj.end(), by_right);
    for (auto &adj : right_adj_)
      std::sort(adj.begin(), adj.end(), by_left);
  }

  int left_size() const noexcept { return left_size_; }
  int right_size() const noexcept { return right_size_; }
  const std::vector<bipartite_edge> &edges() const noexcept { return edges_; }

  /// Edge indices at a left vertex, ascending by right endpoint.
  std::span<const int> left_edges(int l) const { return left_adj_.at(l); }
  std::span<const int> right_edges(int r) const { return right_adj_.at(r); }

  std::optional<std::int64_t> cost(int l, int r) const {
    for (int e : left_adj_.at(l))
      if (edges_[e].right == r)
        return edges_[e].cost;
    return std::nullopt;
  }

  bipartite_graph transposed() const {
    std::vector<bipartite_edge> flipped;
    flipped.reserve(edges_.size());
    for (const auto &e : edges_)
      flipped.push_back({e.right, e.left, e.cost});
    return bipartite_graph(right_size_, left_size_, std::move(flipped));
  }

private:
  int left_size_ = 0;
  int right_size_ = 0;
  std::vector<bipartite_edge> edges_;
  std::vector<std::vector<int>> left_adj_;
  std::vector<std::vector<int>> right_adj_;
};

/// A set of (left, right) pairs, sorted by left index.
struct matching {
  std::vector<std::pair<int, int>> pairs;

  std::size_t size() const noexcept { return pairs.size(); }

  std::int64_t total_cost(const bipartite_graph &b) const {
    std::int64_t sum = 0;
    for (auto [l, r] : pairs)
      sum += b.cost(l, r).value();
    return sum;
  }

  friend bool operator==(const matching &, const matching &) = default;
};

namespace detail {

inline matching from_mates(const std::vector<int> &mate_of_left) {
  matching m;
  for (int l = 0; l < static_cast<int>(mate_of_left.size()); ++l)
    if (mate_of_left[l] != -1)
      m.pairs.emplace_back(l, mate_of_left[l]);
  return m;
}

inline matching swapped(const matching &m) {
  matching out;
  for (auto [l, r] : m.pairs)
    out.pairs.emplace_back(r, l);
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

struct kuhn_state {
  std::vector<int> mate_left, mate_right;
};

// Augmenting-path search in ascending right order.
inline bool try_augment(const bipartite_graph &b, int l, std::vector<char> &visited,
                        kuhn_state &st) {
  for (int e : b.left_edges(l)) {
    int r = b.edges()[e].right;
    if (!visited[r] && st.mate_right[r] == -1) {
      visited[r] = 1;
      st.mate_right[r] = l;
      st.mate_left[l] = r;
      return true;
    }
  }
  for (int e : b.left_edges(l)) {
    int r = b.edges()[e].right;
    if (visited[r])
      continue;
    visited[r] = 1;
    if (st.mate_right[r] == -1 || try_augment(b, st.mate_right[r], visited, st)) {
      st.mate_right[r] = l;
      st.mate_left[l] = r;
      return true;
    }
  }
  return false;
}

inline kuhn_state kuhn(const bipartite_graph &b) {
  kuhn_state st{std::vector<int>(b.left_size(), -1), std::vector<int>(b.right_size(), -1)};
  std::vector<char> visited(b.right_size());
  for (int l = 0; l < b.left_size(); ++l) {
    std::fill(visited.begin(), visited.end(), 0);
    try_augment(b, l, visited, st);
  }
  return st;
}

} // namespace detail

/// Maximum-cardinality matching; left vertices are augmented in ascending order,
/// so the result is fully determined by the input.
inline matching max_matching(const bipartite_graph &b) {
  return detail::from_mates(detail::kuhn(b).mate_left);
}

/// Neighbourhood of a vertex set on one side.
inline std::vector<int> neighborhood(const bipartite_graph &b, std::span<const int> set,
                                     side on = side::left) {
  std::vector<int> out;
  for (int v : set) {
    auto adj = on == side::left ? b.left_edges(v) : b.right_edges(v);
    for (int e : adj)
      out.push_back(on == side::left ? b.edges()[e].right : b.edges()[e].left);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Returns nothing when a matching saturating `saturate` exists; otherwise a set
/// S on that side with |N(S)| < |S|. S is the set of vertices reachable by
/// alternating paths from the unsaturated vertices of a maximum matching.
inline std::optional<std::vector<int>> hall_violator(const bipartite_graph &b,
                                                     side saturate = side::left) {
  if (saturate == side::right)
    return hall_violator(b.transposed(), side::left);

  auto st = detail::kuhn(b);
  std::vector<int> roots;
  for (int l = 0; l < b.left_size(); ++l)
    if (st.mate_left[l] == -1)
      roots.push_back(l);
  if (roots.empty())
    return std::nullopt;

  std::vector<char> in_set(b.left_size(), 0), right_seen(b.right_size(), 0);
  std::vector<int> stack = roots;
  for (int l : roots)
    in_set[l] = 1;
  while (!stack.empty()) {
    int l = stack.back();
    stack.pop_back();
    for (int e : b.left_edges(l)) {
      int r = b.edges()[e].right;
      if (right_seen[r])
        continue;
      right_seen[r] = 1;
      int next = st.mate_right[r];
      // An unmatched right vertex here would be an augmenting path.
      if (next == -1)
        throw contract_error("hall_violator: matching was not maximum");
      if (!in_set[next]) {
        in_set[next] = 1;
        stack.push_back(next);
      }
    }
  }

  std::vector<int> violator;
  for (int l = 0; l < b.left_size(); ++l)
    if (in_set[l])
      violator.push_back(l);
  if (neighborhood(b, violator).size() >= violator.size())
    throw contract_error("hall_violator: extracted set is not a violator");
  return violator;
}

namespace detail {

// Hungarian method on a square cost matrix (rows = columns = n), returning the
// row assigned to every column together with feasible dual potentials.
struct assignment {
  std::vector<int> row_of_col; // 0-based
  std::vector<std::int64_t> row_pot, col_pot;
};

inline assignment hungarian(const std::vector<std::vector<std::int64_t>> &cost) {
  const int n = static_cast<int>(cost.size());
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      std::int64_t delta = inf;
      for (int j = 1; j <= n; ++j)
        if (!used[j]) {
          std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < delta) {
            delta = minv[j];
            j1 = j;
          }
        }
      for (int j = 0; j <= n; ++j)
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  assignment out;
  out.row_of_col.resize(n);
  for (int j = 1; j <= n; ++j)
    out.row_of_col[j - 1] = p[j] - 1;
  out.row_pot.assign(u.begin() + 1, u.end());
  out.col_pot.assign(v.begin() + 1, v.end());
  return out;
}

} // namespace detail

/// Minimum-cost matching saturating one side. Among all optimal matchings the one
/// whose pairs, listed by saturated-side index, are lexicographically smallest is
/// returned. Throws contract_error if no saturating matching exists.
inline matching min_cost_saturating_matching(const bipartite_graph &b, side saturate = side::left) {
  if (saturate == side::right)
    return detail::swapped(min_cost_saturating_matching(b.transposed(), side::left));

  const int rows = b.left_size();
  const int cols = b.right_size();
  if (rows > cols)
    throw contract_error("no saturating matching: saturated side is larger than the other side");
  if (rows == 0)
    return {};

  // Pad with zero-cost dummy rows so the problem is a square assignment; a
  // non-edge costs more than every real matching can.
  std::int64_t big = 1;
  for (const auto &e : b.edges())
    big += e.cost;
  std::vector<std::vector<std::int64_t>> cost(cols, std::vector<std::int64_t>(cols, 0));
  for (int i = 0; i < rows; ++i)
    std::fill(cost[i].begin(), cost[i].end(), big);
  for (const auto &e : b.edges())
    cost[e.left][e.right] = e.cost;

  auto opt = detail::hungarian(cost);
  std::vector<int> col_of_row(cols, -1), row_of_col = opt.row_of_col;
  for (int j = 0; j < cols; ++j)
    col_of_row[row_of_col[j]] = j;
  for (int i = 0; i < rows; ++i)
    if (cost[i][col_of_row[i]] >= big)
      throw contract_error("no matching saturates the requested side");

  // Every optimal assignment uses only tight edges, and every perfect matching
  // of the tight subgraph is optimal. Walk rows in order, pinning each to its
  // smallest feasible column.
  auto tight = [&](int i, int j) {
    if (i < rows && cost[i][j] >= big)
      return false;
    return opt.row_pot[i] + opt.col_pot[j] == cost[i][j];
  };
  std::vector<char> fixed_row(cols, 0);
  std::vector<char> visited_row(cols, 0);

  // Re-route the displaced row `from` to column `target` along tight edges.
  std::function<bool(int, int, int)> reroute = [&](int from, int target, int banned) -> bool {
    visited_row[from] = 1;
    for (int j = 0; j < cols; ++j) {
      if (j == banned || !tight(from, j))
        continue;
      if (j == target) {
        col_of_row[from] = j;
        row_of_col[j] = from;
        return true;
      }
      int holder = row_of_col[j];
      if (fixed_row[holder] || visited_row[holder])
        continue;
      if (reroute(holder, target, banned)) {
        col_of_row[from] = j;
        row_of_col[j] = from;
        return true;
      }
    }
    return false;
  };

  for (int i = 0; i < rows; ++i) {
    for (int e : b.left_edges(i)) {
      int r = b.edges()[e].right;
      if (!tight(i, r))
        continue;
      if (col_of_row[i] == r)
        break;
      int holder = row_of_col[r];
      if (fixed_row[holder])
        continue;
      int freed = col_of_row[i];
      std::fill(visited_row.begin(), visited_row.end(), 0);
      visited_row[i] = 1;
      auto saved_cols = col_of_row;
      auto saved_rows = row_of_col;
      fixed_row[i] = 1;
      col_of_row[i] = r;
      row_of_col[r] = i;
      if (reroute(holder, freed, r))
        break;
      fixed_row[i] = 0;
      col_of_row = std::move(saved_cols);
      row_of_col = std::move(saved_rows);
    }
    fixed_row[i] = 1;
  }

  matching m;
  for (int i = 0; i < rows; ++i)
    m.pairs.emplace_back(i, col_of_row[i]);
  return m;
}

/// Exchanges edges of a perfect matching M for edges of W along alternating
/// cycles until at most `budget` edges of M lie outside W. Each exchange follows
/// a cycle of length >= 4 alternating between M \ W and W \ M, after the vertices
/// already matched inside W are set aside.
inline matching alternating_cycle_repair(const bipartite_graph &b, const matching &m,
                                         std::span<const std::pair<int, int>> w, int budget) {
  const int n = b.left_size();
  if (b.right_size() != n || static_cast<int>(m.size()) != n)
    throw contract_error("alternating_cycle_repair: M must be a perfect matching");
  std::vector<int> mate_left(n, -1), mate_right(n, -1);
  for (auto [l, r] : m.pairs) {
    if (!b.cost(l, r))
      throw contract_error("alternating_cycle_repair: matching pair is not an edge");
    if (mate_left[l] != -1 || mate_right[r] != -1)
      throw contract_error("alternating_cycle_repair: M is not a matching");
    mate_left[l] = r;
    mate_right[r] = l;
  }
  std::set<std::pair<int, int>> in_w(w.begin(), w.end());
  std::vector<std::vector<int>> w_adj(n);
  std::vector<char> right_touched(n, 0);
  for (auto [l, r] : in_w) {
    if (!b.cost(l, r))
      throw contract_error("alternating_cycle_repair: W edge is not an edge of B");
    w_adj[l].push_back(r);
    right_touched[r] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (w_adj[v].empty() || !right_touched[v])
      throw contract_error("alternating_cycle_repair: vertex " + std::to_string(v) +
                           " is not incident to W");

  auto outside = [&] {
    int count = 0;
    for (int l = 0; l < n; ++l)
      count += !in_w.count({l, mate_left[l]});
    return count;
  };
  int out_count = outside();
  if (out_count <= budget)
    return m;
  if (n - out_count > 1)
    throw contract_error("alternating_cycle_repair: more than one matching edge already in W");

  while (out_count > budget) {
    // Directed graph on left vertices whose matching edge is outside W:
    // l -> l' when (l, mate(l')) is a W edge.
    std::vector<char> active(n, 0);
    for (int l = 0; l < n; ++l)
      active[l] = !in_w.count({l, mate_left[l]});
    std::vector<int> color(n, 0), parent(n, -1);
    std::vector<int> cycle;
    for (int start = 0; start < n && cycle.empty(); ++start) {
      if (!active[start] || color[start])
        continue;
      std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
      color[start] = 1;
      while (!stack.empty() && cycle.empty()) {
        auto &[l, next] = stack.back();
        if (next == w_adj[l].size()) {
          color[l] = 2;
          stack.pop_back();
          continue;
        }
        int r = w_adj[l][next++];
        int succ = mate_right[r];
        if (succ == l || !active[succ])
          continue;
        if (color[succ] == 1) {
          for (int x = l; x != succ; x = parent[x])
            cycle.push_back(x);
          cycle.push_back(succ);
          std::reverse(cycle.begin(), cycle.end());
        } else if (color[succ] == 0) {
          color[succ] = 1;
          parent[succ] = l;
          stack.push_back({succ, 0});
        }
      }
    }
    if (cycle.empty())
      throw contract_error("alternating_cycle_repair: no alternating cycle exists");
    // cycle = l_0 -> l_1 -> ... -> l_{m-1} -> l_0; l_j takes mate(l_{j+1}).
    std::vector<int> new_mates;
    for (std::size_t j = 0; j < cycle.size(); ++j)
      new_mates.push_back(mate_left[cycle[(j + 1) % cycle.size()]]);
    for (std::size_t j = 0; j < cycle.size(); ++j) {
      mate_left[cycle[j]] = new_mates[j];
      mate_right[new_mates[j]] = cycle[j];
    }
    out_count = outside();
  }
  return detail::from_mates(mate_left);
}

} // namespace reconf
