#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/graph.hpp"
#include "reconf/rules.hpp"

namespace reconf {

inline constexpr std::uint64_t default_enumeration_cap = 5'000'000;

struct oracle_options {
  std::uint64_t enumeration_cap = default_enumeration_cap;
};

/// Binomial coefficient saturating at UINT64_MAX.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (int i = 1; i <= k; ++i) {
    // acc * factor is divisible by i; cancel first so exact results near the
    // top of the range do not overflow.
    const auto g = std::gcd(acc, static_cast<std::uint64_t>(i));
    const auto factor = static_cast<std::uint64_t>(n - k + i) / (static_cast<std::uint64_t>(i) / g);
    acc /= g;
    if (acc > UINT64_MAX / factor)
      return UINT64_MAX;
    acc *= factor;
  }
  return acc;
}

namespace detail {

using mask = std::uint64_t;

inline mask to_mask(const configuration &c) {
  mask m = 0;
  for (int v : c)
    m |= mask{1} << v;
  return m;
}

inline configuration from_mask(mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return configuration(std::move(out));
}

// Bit-parallel condition checks; the state space is limited to 64 vertices.
class mask_checker {
public:
  mask_checker(const hypergraph &h, condition cond) : cond_(cond), n_(h.num_vertices()) {
    if (cond == condition::dominating_set || cond == condition::independent_set)
      require_graph(h, cond == condition::dominating_set ? "dominating set" : "independent set");
    closed_.assign(n_, 0);
    for (int v = 0; v < n_; ++v) {
      closed_[v] = mask{1} << v;
      for (int u : h.neighbors(v))
        closed_[v] |= mask{1} << u;
    }
    for (const auto &e : h.edges()) {
      mask m = 0;
      for (int v : e)
        m |= mask{1} << v;
      edges_.push_back(m);
    }
  }

  bool operator()(mask m) const {
    switch (cond_) {
    case condition::vertex_cover:
      for (mask e : edges_)
        if (!(e & m))
          return false;
      return true;
    case condition::independent_set:
      for (mask e : edges_)
        if (std::popcount(e) == 2 && (e & m) == e)
          return false;
      return true;
    case condition::dominating_set: {
      mask dominated = 0;
      for (mask rest = m; rest; rest &= rest - 1)
        dominated |= closed_[std::countr_zero(rest)];
      return n_ == 64 ? dominated == ~mask{0} : dominated == (mask{1} << n_) - 1;
    }
    case condition::unconstrained:
      return true;
    }
    return false;
  }

private:
  condition cond_;
  int n_;
  std::vector<mask> closed_;
  std::vector<mask> edges_;
};

inline void require_oracle_size(const hypergraph &h) {
  if (h.num_vertices() > 64)
    throw input_error("the oracle handles at most 64 vertices, got " +
                      std::to_string(h.num_vertices()));
}

} // namespace detail

/// All size-k vertex sets satisfying the condition, in lexicographic order of
/// their sorted vertex lists.
inline std::vector<configuration> enumerate_solutions(const hypergraph &h, condition cond, int k,
                                                      const oracle_options &opts = {}) {
  detail::require_oracle_size(h);
  const int n = h.num_vertices();
  if (k < 0 || k > n)
    return {};
  const auto count = binomial(n, k);
  if (count > opts.enumeration_cap)
    throw resource_error("enumerating C(" + std::to_string(n) + "," + std::to_string(k) + ") = " +
                         std::to_string(count) + " subsets exceeds the cap of " +
                         std::to_string(opts.enumeration_cap));
  detail::mask_checker ok(h, cond);
  std::vector<configuration> out;
  // Lexicographic k-combinations of 0..n-1.
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i)
    comb[i] = i;
  while (true) {
    detail::mask m = 0;
    for (int v : comb)
      m |= detail::mask{1} << v;
    if (ok(m))
      out.emplace_back(comb);
    int i = k - 1;
    while (i >= 0 && comb[i] == n - k + i)
      --i;
    if (i < 0)
      break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j)
      comb[j] = comb[j - 1] + 1;
  }
  return out;
}

/// Solution states of one size plus lazily computed single-move adjacency.
class state_space {
public:
  state_space(const hypergraph &h, condition cond, rule r, int k, const oracle_options &opts = {})
      : graph_(&h), rule_(std::move(r)), dist_(h), states_(enumerate_solutions(h, cond, k, opts)),
        neighbors_(states_.size()), expanded_(states_.size(), 0) {
    if (rule_.is_relaxed())
      throw input_error("the oracle does not search relaxed token jumping");
    masks_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
      masks_.push_back(detail::to_mask(states_[i]));
      index_.emplace(masks_.back(), static_cast<int>(i));
    }
    // Every vertex within the rule's distance of v.
    const auto limit = rule_.max_distance();
    ball_.assign(h.num_vertices(), 0);
    for (int v = 0; v < h.num_vertices(); ++v)
      for (int u = 0; u < h.num_vertices(); ++u) {
        int d = dist_(v, u);
        if (d != unreachable && (!limit || d <= *limit))
          ball_[v] |= detail::mask{1} << u;
      }
    if (auto *tj = rule_.get_if<token_jumping>())
      movers_ = tj->movers;
  }

  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<configuration> &states() const noexcept { return states_; }
  const distance_table &distances() const noexcept { return dist_; }
  const rule &move_rule() const noexcept { return rule_; }

  std::optional<int> index_of(const configuration &c) const {
    auto it = index_.find(detail::to_mask(c));
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  /// States reachable from state i in one move, ascending.
  const std::vector<int> &neighbors(int i) {
    if (expanded_[i])
      return neighbors_[i];
    expanded_[i] = 1;
    const detail::mask from = masks_[i];
    detail::mask reach = 0;
    for (detail::mask rest = from; rest; rest &= rest - 1)
      reach |= ball_[std::countr_zero(rest)];
    for (std::size_t j = 0; j < states_.size(); ++j) {
      const detail::mask to = masks_[j];
      if (j == static_cast<std::size_t>(i) || (to & ~reach))
        continue;
      if (movers_ && std::popcount(from & ~to) > *movers_)
        continue;
      if (move_exists(states_[i], states_[j], rule_, dist_))
        neighbors_[i].push_back(static_cast<int>(j));
    }
    return neighbors_[i];
  }

private:
  const hypergraph *graph_;
  rule rule_;
  distance_table dist_;
  std::vector<configuration> states_;
  std::vector<detail::mask> masks_;
  std::unordered_map<detail::mask, int> index_;
  std::vector<detail::mask> ball_;
  std::optional<int> movers_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<char> expanded_;
};

struct reachability_result {
  bool reachable = false;
  std::optional<int> shortest;
  std::optional<reconf_sequence> witness;
  // False when a length limit stopped the search before it was decided; an
  // unreachable answer then only means "not within the limit".
  bool exhaustive = true;
};

/// Exact reachability and shortest length by bidirectional breadth-first
/// search over all solutions of the start's size. Neighbours are expanded in
/// canonical state order, so the witness is deterministic. With max_length
/// set, only sequences of at most that many moves are considered.
inline reachability_result reachability(const hypergraph &h, condition cond, const rule &r,
                                        const configuration &cs, const configuration &ct,
                                        const oracle_options &opts = {},
                                        std::optional<int> max_length = std::nullopt) {
  detail::require_oracle_size(h);
  require_within(h, cs);
  require_within(h, ct);
  if (cs.size() != ct.size())
    throw input_error("start and target sizes differ");
  if (!check_condition(h, cond, cs) || !check_condition(h, cond, ct))
    throw input_error("start or target violates the condition");
  reachability_result out;
  if (cs == ct) {
    out.reachable = true;
    out.shortest = 0;
    out.witness = reconf_sequence::starting_at(cs);
    return out;
  }
  state_space space(h, cond, r, static_cast<int>(cs.size()), opts);
  const int source = *space.index_of(cs);
  const int goal = *space.index_of(ct);

  // Side 0 grows from the start, side 1 from the target; moves are reversible.
  std::unordered_map<int, int> parent[2], depth[2];
  std::vector<int> frontier[2] = {{source}, {goal}};
  parent[0][source] = -1;
  parent[1][goal] = -1;
  depth[0][source] = 0;
  depth[1][goal] = 0;
  int levels[2] = {0, 0};
  int meet = -1, best = 0;
  while (meet == -1 && !frontier[0].empty() && !frontier[1].empty()) {
    if (max_length && levels[0] + levels[1] >= *max_length) {
      out.exhaustive = false;
      return out;
    }
    const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<int> next;
    for (int v : frontier[side])
      for (int u : space.neighbors(v)) {
        if (parent[side].count(u))
          continue;
        parent[side][u] = v;
        depth[side][u] = levels[side] + 1;
        next.push_back(u);
        if (auto it = depth[1 - side].find(u); it != depth[1 - side].end()) {
          const int total = levels[side] + 1 + it->second;
          if (meet == -1 || total < best || (total == best && u < meet)) {
            meet = u;
            best = total;
          }
        }
      }
    ++levels[side];
    frontier[side] = std::move(next);
  }
  if (meet == -1)
    return out;
  std::vector<int> chain;
  for (int v = meet; v != -1; v = parent[0][v])
    chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  for (int v = parent[1][meet]; v != -1; v = parent[1][v])
    chain.push_back(v);
  reconf_sequence seq = reconf_sequence::starting_at(cs);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    seq.push(*find_move(space.states()[chain[i]], space.states()[chain[i + 1]], r,
                        space.distances()));
  out.reachable = true;
  out.shortest = static_cast<int>(chain.size()) - 1;
  out.witness = std::move(seq);
  return out;
}

struct component_summary {
  std::size_t size = 0;
  int diameter = 0;
  configuration representative; // smallest state in the component
};

/// Connected components of the solution graph with their diameters
/// (maximum eccentricity), ordered by smallest member.
inline std::vector<component_summary> component_report(const hypergraph &h, condition cond,
                                                       const rule &r, int k,
                                                       const oracle_options &opts = {}) {
  state_space space(h, cond, r, k, opts);
  const int n = static_cast<int>(space.size());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> members;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1)
      continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    std::deque<int> queue{s};
    comp[s] = id;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      members[id].push_back(v);
      for (int u : space.neighbors(v))
        if (comp[u] == -1) {
          comp[u] = id;
          queue.push_back(u);
        }
    }
  }
  std::vector<component_summary> out;
  std::vector<int> dist(n, -1);
  for (const auto &group : members) {
    component_summary summary;
    summary.size = group.size();
    summary.representative = space.states()[*std::min_element(group.begin(), group.end())];
    for (int s : group) {
      for (int v : group)
        dist[v] = -1;
      std::deque<int> queue{s};
      dist[s] = 0;
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        summary.diameter = std::max(summary.diameter, dist[v]);
        for (int u : space.neighbors(v))
          if (dist[u] == -1) {
            dist[u] = dist[v] + 1;
            queue.push_back(u);
          }
      }
    }
    out.push_back(std::move(summary));
  }
  return out;
}

} // namespace reconf
