#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/gadgets.hpp"
#include "reconf/graph.hpp"
#include "reconf/rules.hpp"

namespace reconf {

// ---------------------------------------------------------------------------
// Shortest vertex cover reconfiguration from vertex cover
// ---------------------------------------------------------------------------

struct vc_shortest_instance {
  hypergraph graph;
  configuration start, target;
  int bound = 0; // l
  int original_vertices = 0;
  int cover_size = 0;
  t_gadget_layout layout{2};

  int copies() const { return original_vertices - cover_size; }
  int offset(int copy) const { return original_vertices + copy * layout.num_vertices(); }
  int v(int copy, int p) const { return offset(copy) + layout.v(p); }
};

/// G' = G plus n-k copies of T^l, each copy's v_4 joined to all of V(G).
/// Start and target hold V(G) plus the copies' T^l endpoints.
inline vc_shortest_instance reduce_vc_shortest(const hypergraph &g, int k, int ell) {
  require_graph(g, "vertex cover shortest reduction");
  const int n = g.num_vertices();
  if (ell < 2)
    throw input_error("the reduction needs l >= 2");
  if (k < 0 || k > n)
    throw input_error("cover size " + std::to_string(k) + " outside 0.." + std::to_string(n));
  vc_shortest_instance out;
  out.bound = ell;
  out.original_vertices = n;
  out.cover_size = k;
  out.layout = t_gadget_layout{ell};
  std::vector<std::pair<int, int>> edges;
  for (const auto &e : g.edges())
    edges.emplace_back(e[0], e[1]);
  std::vector<int> start, target;
  for (int v = 0; v < n; ++v) {
    start.push_back(v);
    target.push_back(v);
  }
  for (int c = 0; c < out.copies(); ++c) {
    const int off = out.offset(c);
    for (auto e : out.layout.edges(off))
      edges.push_back(e);
    for (int v = 0; v < n; ++v)
      edges.emplace_back(out.v(c, 4), v);
    for (int v : out.layout.start(off))
      start.push_back(v);
    for (int v : out.layout.target(off))
      target.push_back(v);
  }
  out.graph = make_graph(n + out.copies() * out.layout.num_vertices(), edges);
  out.start = configuration(std::move(start));
  out.target = configuration(std::move(target));
  return out;
}

/// The l-move schedule available when G has a vertex cover of size k: each
/// copy borrows one token from a vertex outside the cover.
inline reconf_sequence build_yes_schedule(const vc_shortest_instance &inst,
                                          const configuration &cover) {
  const int n = inst.original_vertices;
  if (static_cast<int>(cover.size()) != inst.cover_size)
    throw input_error("cover has size " + std::to_string(cover.size()) + ", expected " +
                      std::to_string(inst.cover_size));
  for (int v : cover)
    if (v < 0 || v >= n)
      throw input_error("cover vertex " + std::to_string(v) + " is not in G");
  std::vector<int> outside;
  for (int v = 0; v < n; ++v)
    if (!cover.contains(v))
      outside.push_back(v);
  auto seq = reconf_sequence::starting_at(inst.start);
  for (int j = 1; j <= inst.bound; ++j) {
    std::vector<std::pair<int, int>> jumps;
    for (int c = 0; c < inst.copies(); ++c) {
      auto v = [&](int p) { return inst.v(c, p); };
      const int ci = outside[c];
      if (j == 1)
        jumps.insert(jumps.end(), {{v(1), v(2)}, {v(2), v(3)}, {ci, v(4)}, {v(4), v(5)}});
      else if (j == 2)
        jumps.insert(jumps.end(), {{v(3), v(4)}, {v(4), ci}, {v(5), v(6)}, {v(6), v(7)}});
      else
        jumps.insert(jumps.end(), {{v(2 * j + 1), v(2 * j + 2)}, {v(2 * j + 2), v(2 * j + 3)}});
    }
    seq.push(make_move(seq.back(), jumps));
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Vertex cover token jumping to dominating set
// ---------------------------------------------------------------------------

struct ds_reduction {
  hypergraph graph;
  configuration start, target;
  int original_vertices = 0;
  int original_edges = 0;
  int cover_size = 0;

  int edge_copy(int copy, int edge) const {
    return original_vertices + copy * original_edges + edge;
  }
  int x() const { return original_vertices + (cover_size + 1) * original_edges; }
  int y() const { return x() + 1; }
  bool in_original(int v) const { return v >= 0 && v < original_vertices; }
};

/// k+1 copies of every edge as degree-2 vertices on its endpoints, an apex x
/// on all of V(G), and y hanging off x.
inline ds_reduction reduce_vctj_to_ds(const hypergraph &g, const configuration &vs,
                                      const configuration &vt) {
  require_graph(g, "dominating set reduction");
  require_within(g, vs);
  require_within(g, vt);
  if (vs.size() != vt.size())
    throw input_error("start and target sizes differ");
  if (!is_vertex_cover(g, vs) || !is_vertex_cover(g, vt))
    throw input_error("start and target must be vertex covers");
  ds_reduction out;
  out.original_vertices = g.num_vertices();
  out.original_edges = static_cast<int>(g.num_edges());
  out.cover_size = static_cast<int>(vs.size());
  std::vector<std::pair<int, int>> edges;
  for (int c = 0; c <= out.cover_size; ++c)
    for (int e = 0; e < out.original_edges; ++e) {
      edges.emplace_back(out.edge_copy(c, e), g.edges()[e][0]);
      edges.emplace_back(out.edge_copy(c, e), g.edges()[e][1]);
    }
  for (int v = 0; v < out.original_vertices; ++v)
    edges.emplace_back(out.x(), v);
  edges.emplace_back(out.x(), out.y());
  out.graph = make_graph(out.y() + 1, edges);
  out.start = set_union(vs, configuration{out.x()});
  out.target = set_union(vt, configuration{out.x()});
  return out;
}

/// Each jump u -> v becomes one move: u's token steps onto x while x's token
/// steps onto v.
inline reconf_sequence vc_seq_to_ds_seq(const ds_reduction &red, const reconf_sequence &seq) {
  if (seq.configs.empty() || set_union(seq.front(), configuration{red.x()}) != red.start)
    throw input_error("sequence does not start at the reduction's start");
  auto out = reconf_sequence::starting_at(red.start);
  for (std::size_t i = 0; i < seq.moves.size(); ++i) {
    std::vector<std::pair<int, int>> jumps;
    for (auto [u, v] : seq.moves[i].pairs)
      if (u != v)
        jumps.emplace_back(u, v);
    if (jumps.size() != 1)
      throw input_error("move " + std::to_string(i) + " is not a single jump");
    auto [u, v] = jumps.front();
    out.push(make_move(out.back(), {{u, red.x()}, {red.x(), v}}));
  }
  return out;
}

/// Reads off the tokens on V(G): tokens leaving V(G) are paired with tokens
/// entering it into jumps; the rest become removals and additions.
inline std::vector<relaxed_move> ds_seq_to_relaxed(const ds_reduction &red,
                                                   const reconf_sequence &seq) {
  std::vector<relaxed_move> out;
  for (const auto &mv : seq.moves) {
    std::vector<int> leaving, entering;
    relaxed_move step;
    for (auto [u, v] : mv.pairs) {
      if (u == v)
        continue;
      const bool from_g = red.in_original(u), to_g = red.in_original(v);
      if (from_g && to_g)
        step.push_back(relaxed_step::jump(u, v));
      else if (from_g)
        leaving.push_back(u);
      else if (to_g)
        entering.push_back(v);
    }
    std::sort(leaving.begin(), leaving.end());
    std::sort(entering.begin(), entering.end());
    const std::size_t paired = std::min(leaving.size(), entering.size());
    for (std::size_t i = 0; i < paired; ++i)
      step.push_back(relaxed_step::jump(leaving[i], entering[i]));
    for (std::size_t i = paired; i < leaving.size(); ++i)
      step.push_back(relaxed_step::remove(leaving[i]));
    for (std::size_t i = paired; i < entering.size(); ++i)
      step.push_back(relaxed_step::add(entering[i]));
    if (!step.empty())
      out.push_back(std::move(step));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relaxed token jumping to token jumping
// ---------------------------------------------------------------------------

namespace detail {

using step_kind = relaxed_step::kind;

// Every move reduced to one step, additions before and removals after the
// remaining jump of the move.
inline std::vector<relaxed_step> single_steps(const std::vector<relaxed_move> &moves) {
  std::vector<relaxed_step> out;
  for (const auto &mv : moves) {
    std::vector<int> adds, removes;
    std::vector<std::pair<int, int>> jumps;
    for (const auto &s : mv) {
      if (s.type == step_kind::add)
        adds.push_back(s.to);
      else if (s.type == step_kind::remove)
        removes.push_back(s.from);
      else if (s.from != s.to)
        jumps.emplace_back(s.from, s.to);
    }
    // An addition paired with a removal is one jump.
    while (!adds.empty() && !removes.empty()) {
      if (removes.back() != adds.back())
        jumps.emplace_back(removes.back(), adds.back());
      removes.pop_back();
      adds.pop_back();
    }
    // All jumps but one become an addition now and a removal later.
    while (jumps.size() > 1) {
      adds.push_back(jumps.back().second);
      removes.push_back(jumps.back().first);
      jumps.pop_back();
    }
    for (int v : adds)
      out.push_back(relaxed_step::add(v));
    for (auto [u, v] : jumps)
      out.push_back(relaxed_step::jump(u, v));
    for (int v : removes)
      out.push_back(relaxed_step::remove(v));
  }
  return out;
}

// Moves the last removal down to the first later addition and merges the two.
inline void merge_removals(std::vector<relaxed_step> &steps) {
  while (true) {
    auto last = std::find_if(steps.rbegin(), steps.rend(),
                             [](const relaxed_step &s) { return s.type == step_kind::remove; });
    if (last == steps.rend())
      return;
    const auto i = static_cast<std::size_t>(std::distance(last, steps.rend()) - 1);
    std::size_t j = i + 1;
    while (j < steps.size() && steps[j].type != step_kind::add)
      ++j;
    if (j == steps.size())
      throw contract_error("removal with no later addition; endpoint sizes differ");
    const int from = steps[i].from, to = steps[j].to;
    steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(j));
    steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(i));
    if (from != to)
      steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(j - 1),
                   relaxed_step::jump(from, to));
  }
}

// Reroutes the first jump onto an occupied vertex through a free vertex.
inline void separate_tokens(int n, const configuration &vs, std::vector<relaxed_step> &steps) {
  while (true) {
    std::vector<int> count(n, 0);
    for (int v : vs)
      ++count[v];
    std::size_t i = 0;
    for (; i < steps.size(); ++i) {
      if (count[steps[i].to] > 0)
        break;
      --count[steps[i].from];
      ++count[steps[i].to];
    }
    if (i == steps.size())
      return;
    const int v = steps[i].to;
    std::size_t j = i + 1;
    while (j < steps.size() && steps[j].from != v)
      ++j;
    if (j == steps.size())
      throw contract_error("two tokens end on vertex " + std::to_string(v));
    int x = 0;
    while (x < n && count[x] > 0)
      ++x;
    if (x == n)
      throw contract_error("no free vertex to reroute through");
    steps[i].to = x;
    steps[j].from = x;
    if (steps[j].from == steps[j].to)
      steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(j));
  }
}

} // namespace detail

/// Rewrites a valid relaxed sequence into single jumps of distinct tokens
/// whose every configuration is a vertex cover (token jumping, any distance).
inline reconf_sequence normalize_relaxed(const hypergraph &h, const configuration &vs,
                                         const configuration &vt,
                                         const std::vector<relaxed_move> &moves) {
  if (auto issue = validate_relaxed_sequence(h, vs, vt, moves))
    throw input_error("relaxed sequence invalid at move " + std::to_string(issue->index) + ": " +
                      issue->reason);
  if (vs.size() != vt.size())
    throw input_error("start and target sizes differ");
  // Every vertex holds a token: the endpoints coincide and nothing can move.
  if (static_cast<int>(vs.size()) == h.num_vertices())
    return reconf_sequence::starting_at(vs);
  auto steps = detail::single_steps(moves);
  detail::merge_removals(steps);
  for (const auto &s : steps)
    if (s.type != detail::step_kind::jump)
      throw contract_error("addition left after merging removals");
  detail::separate_tokens(h.num_vertices(), vs, steps);
  auto seq = reconf_sequence::starting_at(vs);
  for (const auto &s : steps)
    seq.push(make_move(seq.back(), {{s.from, s.to}}));
  return seq;
}

// ---------------------------------------------------------------------------
// Split graphs: parallel sliding to single slides
// ---------------------------------------------------------------------------

inline void require_split_partition(const hypergraph &g, const configuration &clique,
                                    const configuration &independent) {
  require_graph(g, "split graph");
  require_within(g, clique);
  require_within(g, independent);
  if (clique.size() + independent.size() != static_cast<std::size_t>(g.num_vertices()) ||
      !set_intersection(clique, independent).empty())
    throw input_error("clique and independent side must partition the vertices");
  const auto &vs = clique.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      auto nb = g.neighbors(vs[i]);
      if (!std::binary_search(nb.begin(), nb.end(), vs[j]))
        throw input_error("clique side misses edge " + std::to_string(vs[i]) + "-" +
                          std::to_string(vs[j]));
    }
  if (!is_independent_set(g, independent))
    throw input_error("independent side contains an edge");
}

/// On a split graph an independent set move under sliding has at most two
/// slides, one out of the clique and one into it; they are performed in that
/// order, or as one clique slide when they share the independent vertex.
inline reconf_sequence split_to_token_sliding(const hypergraph &g, const configuration &clique,
                                              const configuration &independent,
                                              const reconf_sequence &seq) {
  require_split_partition(g, clique, independent);
  if (auto issue = validate_sequence(g, condition::independent_set, rule::all(1), seq))
    throw input_error("input sequence invalid at index " + std::to_string(issue->index) + ": " +
                      issue->reason);
  auto out = reconf_sequence::starting_at(seq.front());
  for (std::size_t i = 0; i < seq.moves.size(); ++i) {
    std::vector<std::pair<int, int>> slides;
    for (auto p : seq.moves[i].pairs)
      if (p.first != p.second)
        slides.push_back(p);
    if (slides.size() > 2)
      throw input_error("move " + std::to_string(i) + " has " + std::to_string(slides.size()) +
                        " slides; a split graph allows at most two");
    if (slides.size() == 2) {
      if (!clique.contains(slides[0].first))
        std::swap(slides[0], slides[1]);
      auto [c1, i1] = slides[0];
      auto [i2, c2] = slides[1];
      if (!clique.contains(c1) || !independent.contains(i1) || !independent.contains(i2) ||
          !clique.contains(c2))
        throw input_error("move " + std::to_string(i) + " is not one slide out of and one into "
                                                        "the clique");
      if (i1 == i2) {
        out.push(make_move(out.back(), {{c1, c2}}));
      } else {
        out.push(make_move(out.back(), {{c1, i1}}));
        out.push(make_move(out.back(), {{i2, c2}}));
      }
    } else if (slides.size() == 1) {
      out.push(make_move(out.back(), slides));
    }
  }
  return out;
}

} // namespace reconf
