#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/graph.hpp"
#include "reconf/matching.hpp"

namespace reconf {

/// (k', d)-token jumping: at most `movers` tokens change position per move (all
/// when unset), each by distance at most `dist` (unbounded when unset).
/// Token sliding is {1, 1}; classic token jumping is {1, unbounded}.
struct token_jumping {
  std::optional<int> movers;
  std::optional<int> dist;
  friend bool operator==(const token_jumping &, const token_jumping &) = default;
};

/// (k,1),(k',d): every token may move distance <= 1 and at most `extra_movers`
/// of them may instead move up to `extra_dist`.
struct two_tier {
  int extra_movers = 0;
  int extra_dist = 2;
  friend bool operator==(const two_tier &, const two_tier &) = default;
};

/// Token additions/removals with population-dependent budgets; only used for
/// the vertex-cover side of the dominating-set reduction.
struct relaxed_jumping {
  friend bool operator==(const relaxed_jumping &, const relaxed_jumping &) = default;
};

class rule {
public:
  rule() : rule(token_jumping{std::nullopt, 1}) {}
  rule(token_jumping r) : value_(r) { check(); }
  rule(two_tier r) : value_(r) { check(); }
  rule(relaxed_jumping r) : value_(r) {}

  static rule tj(std::optional<int> movers, std::optional<int> dist) {
    return token_jumping{movers, dist};
  }
  static rule all(int dist) { return token_jumping{std::nullopt, dist}; }
  static rule sliding() { return token_jumping{1, 1}; }
  static rule jumping() { return token_jumping{1, std::nullopt}; }
  static rule tiered(int extra_movers, int extra_dist) { return two_tier{extra_movers, extra_dist}; }
  static rule relaxed() { return relaxed_jumping{}; }

  const std::variant<token_jumping, two_tier, relaxed_jumping> &value() const noexcept {
    return value_;
  }
  template <class T> const T *get_if() const noexcept { return std::get_if<T>(&value_); }
  bool is_relaxed() const noexcept { return std::holds_alternative<relaxed_jumping>(value_); }

  /// Largest distance any single token may travel; nullopt when unbounded.
  std::optional<int> max_distance() const {
    if (auto *t = get_if<token_jumping>())
      return t->dist;
    if (auto *t = get_if<two_tier>())
      return t->extra_dist;
    return std::nullopt;
  }

  friend bool operator==(const rule &, const rule &) = default;

private:
  void check() const {
    if (auto *t = get_if<token_jumping>()) {
      if (t->dist && *t->dist < 1)
        throw input_error("token jumping distance must be at least 1");
      if (t->movers && *t->movers < 0)
        throw input_error("token jumping mover count must be non-negative");
    } else if (auto *t = get_if<two_tier>()) {
      if (t->extra_movers < 0)
        throw input_error("two-tier mover count must be non-negative");
      if (t->extra_dist < 2)
        throw input_error("two-tier distance must be at least 2 (use tj:all:1 instead)");
    }
  }

  std::variant<token_jumping, two_tier, relaxed_jumping> value_;
};

inline std::string to_string(const rule &r) {
  if (auto *t = r.get_if<token_jumping>())
    return "tj:" + (t->movers ? std::to_string(*t->movers) : std::string("all")) + ":" +
           (t->dist ? std::to_string(*t->dist) : std::string("inf"));
  if (auto *t = r.get_if<two_tier>())
    return "tt:" + std::to_string(t->extra_movers) + ":" + std::to_string(t->extra_dist);
  return "relaxed";
}

/// Parses `tj:<all|k'>:<d|inf>`, `tt:<k'>:<d>` or `relaxed`.
inline rule parse_rule(std::string_view text) {
  auto fail = [&](const std::string &why) -> rule {
    throw input_error("bad rule '" + std::string(text) + "': " + why);
  };
  if (text == "relaxed")
    return rule::relaxed();
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    auto colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon - pos));
    if (colon == std::string_view::npos)
      break;
    pos = colon + 1;
  }
  auto number = [&](std::string_view s) -> int {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
      fail("expected an integer, got '" + std::string(s) + "'");
    return value;
  };
  if (parts.size() != 3)
    return fail("expected three ':'-separated fields");
  if (parts[0] == "tj") {
    std::optional<int> movers, dist;
    if (parts[1] != "all")
      movers = number(parts[1]);
    if (parts[2] != "inf")
      dist = number(parts[2]);
    return rule::tj(movers, dist);
  }
  if (parts[0] == "tt")
    return rule::tiered(number(parts[1]), number(parts[2]));
  return fail("unknown rule family '" + std::string(parts[0]) + "'");
}

/// A bijection between two configurations; stationary tokens appear as (v, v).
struct move {
  std::vector<std::pair<int, int>> pairs;

  configuration sources() const {
    std::vector<int> out;
    for (auto [f, t] : pairs)
      out.push_back(f);
    return configuration(std::move(out));
  }

  std::size_t moving_count() const {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](auto p) { return p.first != p.second; }));
  }

  bool is_identity() const { return moving_count() == 0; }

  /// The same token assignment run backwards.
  move reversed() const {
    move out;
    for (auto [f, t] : pairs)
      out.pairs.emplace_back(t, f);
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
  }

  friend bool operator==(const move &, const move &) = default;
};

/// Move with every token of `c` stationary except those listed in `jumps`.
inline move make_move(const configuration &c, const std::vector<std::pair<int, int>> &jumps) {
  move mv;
  for (int v : c) {
    auto it = std::find_if(jumps.begin(), jumps.end(), [v](auto p) { return p.first == v; });
    mv.pairs.emplace_back(v, it == jumps.end() ? v : it->second);
  }
  return mv;
}

struct reconf_sequence {
  std::vector<configuration> configs;
  std::vector<move> moves;

  std::size_t length() const noexcept { return moves.size(); }
  const configuration &front() const { return configs.front(); }
  const configuration &back() const { return configs.back(); }

  static reconf_sequence starting_at(configuration c) {
    reconf_sequence s;
    s.configs.push_back(std::move(c));
    return s;
  }

  /// Appends a move applied to the current last configuration; identity moves
  /// are dropped.
  void push(const move &mv) {
    if (mv.is_identity())
      return;
    std::vector<int> targets;
    for (auto [f, t] : mv.pairs)
      targets.push_back(t);
    moves.push_back(mv);
    std::sort(moves.back().pairs.begin(), moves.back().pairs.end());
    configs.emplace_back(std::move(targets));
  }

  void append(const reconf_sequence &tail) {
    for (const auto &mv : tail.moves)
      push(mv);
  }
};

// ---------------------------------------------------------------------------
// Single moves
// ---------------------------------------------------------------------------

namespace detail {

template <class Dist>
configuration validate_move_with(const hypergraph &h, const configuration &c1, const move &mv,
                                 const rule &r, Dist &&dist) {
  if (r.is_relaxed())
    throw input_error("relaxed moves are validated step-wise with validate_relaxed_sequence");
  std::vector<int> froms, tos;
  for (auto [f, t] : mv.pairs) {
    if (!h.contains_vertex(f) || !h.contains_vertex(t))
      throw move_error(move_error_kind::invalid_vertex,
                       "pair (" + std::to_string(f) + "," + std::to_string(t) + ") leaves the graph");
    froms.push_back(f);
    tos.push_back(t);
  }
  std::sort(froms.begin(), froms.end());
  if (froms != c1.vertices())
    throw move_error(move_error_kind::source_mismatch,
                     "move sources do not match the current configuration");
  std::sort(tos.begin(), tos.end());
  if (auto dup = std::adjacent_find(tos.begin(), tos.end()); dup != tos.end())
    throw move_error(move_error_kind::duplicate_target,
                     "two tokens land on vertex " + std::to_string(*dup));

  const auto limit = r.max_distance();
  std::size_t movers = 0;
  std::size_t far_movers = 0;
  for (auto [f, t] : mv.pairs) {
    if (f == t)
      continue;
    ++movers;
    int d = dist(f, t);
    if (d == unreachable || (limit && d > *limit))
      throw move_error(move_error_kind::distance_violated,
                       "pair (" + std::to_string(f) + "," + std::to_string(t) + ") has distance " +
                           (d == unreachable ? std::string("inf") : std::to_string(d)) +
                           " > " + std::to_string(limit.value_or(0)));
    if (d > 1)
      ++far_movers;
  }
  if (auto *t = r.get_if<token_jumping>()) {
    if (t->movers && movers > static_cast<std::size_t>(*t->movers))
      throw move_error(move_error_kind::mover_budget_exceeded,
                       "mover budget exceeded (" + std::to_string(movers) + " > " +
                           std::to_string(*t->movers) + ")");
  } else if (auto *t = r.get_if<two_tier>()) {
    if (far_movers > static_cast<std::size_t>(t->extra_movers))
      throw move_error(move_error_kind::mover_budget_exceeded,
                       "mover budget exceeded (" + std::to_string(far_movers) + " > " +
                           std::to_string(t->extra_movers) + " tokens beyond distance 1)");
  }
  return configuration(std::move(tos));
}

} // namespace detail

/// Checks `mv` against `rule` and returns the configuration it produces.
/// Throws move_error with the specific violation.
inline configuration validate_move(const hypergraph &h, const configuration &c1, const move &mv,
                                   const rule &r, const distance_table &dist) {
  return detail::validate_move_with(h, c1, mv, r, dist);
}

inline configuration validate_move(const hypergraph &h, const configuration &c1, const move &mv,
                                   const rule &r) {
  return detail::validate_move_with(h, c1, mv, r, [&](int u, int v) {
    return distances_from(h, u)[v];
  });
}

namespace detail {

struct move_problem {
  bipartite_graph graph;
  std::int64_t budget = 0;
};

// Bipartite graph C1 x C2 with an edge wherever the rule's distance permits and a
// unit cost on every pair that consumes the rule's mover budget.
inline move_problem build_move_problem(const configuration &c1, const configuration &c2,
                                       const rule &r, const distance_table &dist) {
  if (c1.size() != c2.size())
    throw input_error("configurations differ in size (" + std::to_string(c1.size()) + " vs " +
                      std::to_string(c2.size()) + ")");
  if (r.is_relaxed())
    throw input_error("find_move does not apply to the relaxed rule");
  const auto limit = r.max_distance();
  const auto *tier = r.get_if<two_tier>();
  const auto *tj = r.get_if<token_jumping>();
  move_problem out;
  out.budget = tier ? tier->extra_movers
                    : (tj->movers ? *tj->movers : std::numeric_limits<std::int64_t>::max());
  std::vector<bipartite_edge> edges;
  for (int i = 0; i < static_cast<int>(c1.size()); ++i)
    for (int j = 0; j < static_cast<int>(c2.size()); ++j) {
      int d = dist(c1[i], c2[j]);
      if (d == unreachable || (limit && d > *limit))
        continue;
      std::int64_t cost = tier ? (d <= 1 ? 0 : 1) : (d == 0 ? 0 : 1);
      edges.push_back({i, j, cost});
    }
  out.graph = bipartite_graph(static_cast<int>(c1.size()), static_cast<int>(c2.size()),
                              std::move(edges));
  return out;
}

} // namespace detail

/// A rule-legal move from c1 to c2, or nothing. Reduces to a minimum-cost perfect
/// matching with 0/1 costs: the move exists iff that cost fits the mover budget.
inline std::optional<move> find_move(const configuration &c1, const configuration &c2,
                                     const rule &r, const distance_table &dist) {
  auto problem = detail::build_move_problem(c1, c2, r, dist);
  if (hall_violator(problem.graph, side::left))
    return std::nullopt;
  auto m = min_cost_saturating_matching(problem.graph, side::left);
  if (m.total_cost(problem.graph) > problem.budget)
    return std::nullopt;
  move mv;
  for (auto [i, j] : m.pairs)
    mv.pairs.emplace_back(c1[i], c2[j]);
  return mv;
}

inline std::optional<move> find_move(const hypergraph &h, const configuration &c1,
                                     const configuration &c2, const rule &r) {
  require_within(h, c1);
  require_within(h, c2);
  return find_move(c1, c2, r, distance_table(h));
}

/// Existence-only variant of find_move; skips the canonical tie-breaking.
inline bool move_exists(const configuration &c1, const configuration &c2, const rule &r,
                        const distance_table &dist) {
  auto problem = detail::build_move_problem(c1, c2, r, dist);
  if (max_matching(problem.graph).size() != c1.size())
    return false;
  if (problem.budget >= static_cast<std::int64_t>(c1.size()))
    return true;
  auto m = min_cost_saturating_matching(problem.graph, side::left);
  return m.total_cost(problem.graph) <= problem.budget;
}

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

struct sequence_issue {
  enum class where { configuration, move, endpoint };
  where at = where::configuration;
  std::size_t index = 0;
  std::string reason;
};

inline const char *condition_phrase(condition c) {
  switch (c) {
  case condition::vertex_cover:
    return "not a vertex cover";
  case condition::dominating_set:
    return "not a dominating set";
  case condition::independent_set:
    return "not an independent set";
  case condition::unconstrained:
    return "invalid configuration";
  }
  return "invalid";
}

/// Checks configuration i, then move i, for i = 0, 1, ...; returns the first
/// problem found or nothing when the sequence is valid.
inline std::optional<sequence_issue> validate_sequence(const hypergraph &h, condition cond,
                                                       const rule &r, const reconf_sequence &seq,
                                                       const distance_table &dist) {
  using where = sequence_issue::where;
  if (seq.configs.empty())
    return sequence_issue{where::configuration, 0, "sequence has no configurations"};
  if (seq.moves.size() + 1 != seq.configs.size())
    return sequence_issue{where::move, seq.moves.size(),
                          "expected one move between each pair of configurations"};
  for (std::size_t i = 0; i < seq.configs.size(); ++i) {
    const auto &c = seq.configs[i];
    try {
      if (!check_condition(h, cond, c))
        return sequence_issue{where::configuration, i, condition_phrase(cond)};
    } catch (const input_error &e) {
      return sequence_issue{where::configuration, i, e.what()};
    }
    if (i + 1 == seq.configs.size())
      break;
    try {
      auto next = validate_move(h, c, seq.moves[i], r, dist);
      if (next != seq.configs[i + 1])
        return sequence_issue{where::move, i, "move does not produce the next configuration"};
    } catch (const move_error &e) {
      return sequence_issue{where::move, i, e.what()};
    } catch (const input_error &e) {
      return sequence_issue{where::move, i, e.what()};
    }
  }
  return std::nullopt;
}

inline std::optional<sequence_issue> validate_sequence(const hypergraph &h, condition cond,
                                                       const rule &r, const reconf_sequence &seq) {
  return validate_sequence(h, cond, r, seq, distance_table(h));
}

// ---------------------------------------------------------------------------
// Relaxed token jumping
// ---------------------------------------------------------------------------

struct relaxed_step {
  enum class kind { remove, add, jump };
  kind type = kind::jump;
  int from = -1; // remove, jump
  int to = -1;   // add, jump

  static relaxed_step remove(int v) { return {kind::remove, v, -1}; }
  static relaxed_step add(int v) { return {kind::add, -1, v}; }
  static relaxed_step jump(int u, int v) { return {kind::jump, u, v}; }

  friend bool operator==(const relaxed_step &, const relaxed_step &) = default;
};

using relaxed_move = std::vector<relaxed_step>;

/// Token multiset used while simulating relaxed sequences.
class token_counts {
public:
  token_counts(int n, const configuration &c) : count_(n, 0) {
    for (int v : c)
      ++count_.at(v);
    population_ = static_cast<int>(c.size());
  }

  int population() const noexcept { return population_; }
  int operator[](int v) const { return count_.at(v); }

  void add(int v) {
    ++count_.at(v);
    ++population_;
  }
  void remove(int v) {
    --count_.at(v);
    --population_;
  }

  configuration support() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(count_.size()); ++v)
      if (count_[v] > 0)
        out.push_back(v);
    return configuration(std::move(out));
  }

private:
  std::vector<int> count_;
  int population_ = 0;
};

/// Applies one relaxed move in parallel. Returns an error string on failure.
inline std::optional<std::string> apply_relaxed_move(const hypergraph &h, int full_population,
                                                     token_counts &tokens,
                                                     const relaxed_move &mv) {
  int additions = 0, jumps = 0;
  std::vector<int> leaving(h.num_vertices(), 0);
  for (const auto &step : mv) {
    bool from_ok = step.type == relaxed_step::kind::add || h.contains_vertex(step.from);
    bool to_ok = step.type == relaxed_step::kind::remove || h.contains_vertex(step.to);
    if (!from_ok || !to_ok)
      return "step references a vertex outside the graph";
    if (step.type != relaxed_step::kind::add)
      ++leaving[step.from];
    additions += step.type == relaxed_step::kind::add;
    jumps += step.type == relaxed_step::kind::jump;
  }
  const int deficit = full_population - tokens.population();
  if (additions > deficit)
    return "addition budget exceeded (" + std::to_string(additions) + " > " +
           std::to_string(deficit) + ")";
  if (additions + jumps > deficit + 1)
    return "jump and addition budget exceeded (" + std::to_string(additions + jumps) + " > " +
           std::to_string(deficit + 1) + ")";
  for (int v = 0; v < h.num_vertices(); ++v)
    if (leaving[v] > tokens[v])
      return "no token to take from vertex " + std::to_string(v);
  for (const auto &step : mv) {
    if (step.type != relaxed_step::kind::add)
      tokens.remove(step.from);
    if (step.type != relaxed_step::kind::remove)
      tokens.add(step.to);
  }
  if (tokens.population() > full_population)
    return "population exceeds the starting size";
  if (!is_vertex_cover(h, tokens.support()))
    return condition_phrase(condition::vertex_cover);
  return std::nullopt;
}

/// Validates a relaxed token jumping sequence for vertex cover. Tokens form a
/// multiset; endpoints are compared as sets.
inline std::optional<sequence_issue> validate_relaxed_sequence(const hypergraph &h,
                                                               const configuration &vs,
                                                               const configuration &vt,
                                                               const std::vector<relaxed_move> &moves) {
  using where = sequence_issue::where;
  require_within(h, vs);
  require_within(h, vt);
  if (!is_vertex_cover(h, vs))
    return sequence_issue{where::configuration, 0, condition_phrase(condition::vertex_cover)};
  token_counts tokens(h.num_vertices(), vs);
  const int full = static_cast<int>(vs.size());
  for (std::size_t i = 0; i < moves.size(); ++i)
    if (auto err = apply_relaxed_move(h, full, tokens, moves[i]))
      return sequence_issue{where::move, i, *err};
  if (tokens.support() != vt)
    return sequence_issue{where::endpoint, moves.size(), "final tokens do not occupy the target"};
  return std::nullopt;
}

} // namespace reconf
