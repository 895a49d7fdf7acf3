#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "reconf/error.hpp"
#include "reconf/gadgets.hpp"
#include "reconf/graph.hpp"
#include "reconf/rules.hpp"

namespace reconf {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Plain-text graphs
// ---------------------------------------------------------------------------

/// Parses
///   graph <n> <m>       followed by m lines  e <u> <v>
///   hypergraph <n> <m>  followed by m lines  h <s> <v1> .. <vs>
/// Blank lines and text after '#' are ignored.
inline hypergraph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::optional<bool> hyper;
  int n = 0;
  long long declared = 0;
  std::vector<std::vector<int>> edges;
  std::set<std::vector<int>> seen;
  auto fail = [&](const std::string &what) {
    throw input_error(what + " at line " + std::to_string(line_no));
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream line(raw);
    std::string tag;
    if (!(line >> tag))
      continue;
    if (!hyper) {
      if (tag != "graph" && tag != "hypergraph")
        fail("expected 'graph <n> <m>' or 'hypergraph <n> <m>'");
      hyper = tag == "hypergraph";
      if (!(line >> n >> declared) || n < 0 || declared < 0)
        fail("malformed header");
    } else {
      std::vector<int> e;
      if (tag == "e" && !*hyper) {
        int u, v;
        if (!(line >> u >> v))
          fail("malformed edge");
        if (u == v)
          fail("self-loop");
        e = {u, v};
      } else if (tag == "h" && *hyper) {
        int s;
        if (!(line >> s) || s < 1)
          fail("malformed hyperedge size");
        e.resize(s);
        for (int &v : e)
          if (!(line >> v))
            fail("hyperedge has fewer than " + std::to_string(s) + " vertices");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
          fail("repeated vertex in hyperedge");
      } else {
        fail("unexpected '" + tag + "'");
      }
      std::string extra;
      if (line >> extra)
        fail("trailing text '" + extra + "'");
      for (int v : e)
        if (v < 0 || v >= n)
          fail("vertex " + std::to_string(v) + " out of range");
      std::sort(e.begin(), e.end());
      if (!seen.insert(e).second)
        fail("duplicate edge");
      edges.push_back(std::move(e));
    }
  }
  if (!hyper)
    throw input_error("empty graph file");
  if (static_cast<long long>(edges.size()) != declared)
    throw input_error("header declares " + std::to_string(declared) + " edges, found " +
                      std::to_string(edges.size()));
  return hypergraph(n, std::move(edges));
}

inline std::string graph_to_text(const hypergraph &h) {
  std::ostringstream out;
  const bool plain = h.is_graph() && std::all_of(h.edges().begin(), h.edges().end(),
                                                 [](const auto &e) { return e.size() == 2; });
  out << (plain ? "graph " : "hypergraph ") << h.num_vertices() << ' ' << h.num_edges() << '\n';
  for (const auto &e : h.edges()) {
    if (plain) {
      out << "e " << e[0] << ' ' << e[1] << '\n';
    } else {
      out << "h " << e.size();
      for (int v : e)
        out << ' ' << v;
      out << '\n';
    }
  }
  return out.str();
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw input_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw input_error("cannot write " + path.string());
  out << text;
}

inline json parse_json(const std::string &text, const std::string &what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw input_error(what + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline json graph_to_json(const hypergraph &h) {
  return json{{"n", h.num_vertices()}, {"edges", h.edges()}};
}

inline hypergraph graph_from_json(const json &j, const std::filesystem::path &base = {});

inline hypergraph load_graph(const std::filesystem::path &path) {
  const auto text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return graph_from_json(parse_json(text, path.string()), path.parent_path());
  return parse_graph_text(text);
}

/// Accepts {"n": .., "edges": [[..], ..]} or a path (relative to `base`) to a
/// text or JSON graph file. Edges with two vertices form a simple graph and
/// must be distinct; longer edges make a hypergraph.
inline hypergraph graph_from_json(const json &j, const std::filesystem::path &base) {
  try {
    if (j.is_string())
      return load_graph(base / j.get<std::string>());
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
      throw input_error("graph must be {\"n\", \"edges\"} or a file path");
    const int n = j.at("n").get<int>();
    auto edges = j.at("edges").get<std::vector<std::vector<int>>>();
    std::set<std::vector<int>> seen;
    for (auto &e : edges) {
      if (e.size() == 2 && e[0] == e[1])
        throw input_error("self-loop on vertex " + std::to_string(e[0]));
      std::sort(e.begin(), e.end());
      if (!seen.insert(e).second)
        throw input_error("duplicate edge");
    }
    return hypergraph(n, std::move(edges));
  } catch (const json::exception &e) {
    throw input_error(std::string("graph: ") + e.what());
  }
}

inline condition parse_condition(std::string_view text) {
  if (text == "vc")
    return condition::vertex_cover;
  if (text == "ds")
    return condition::dominating_set;
  if (text == "is")
    return condition::independent_set;
  if (text == "none")
    return condition::unconstrained;
  throw input_error("unknown condition '" + std::string(text) + "' (vc, ds, is, none)");
}

inline configuration configuration_from_json(const json &j, const char *what) {
  try {
    return configuration(j.get<std::vector<int>>());
  } catch (const json::exception &e) {
    throw input_error(std::string(what) + ": " + e.what());
  }
}

struct instance {
  hypergraph graph;
  condition cond = condition::vertex_cover;
  rule move_rule = rule::all(1);
  configuration start, target;
  std::optional<int> bound;
};

inline json instance_to_json(const instance &inst) {
  json j{{"graph", graph_to_json(inst.graph)},
         {"condition", to_string(inst.cond)},
         {"rule", to_string(inst.move_rule)},
         {"start", inst.start.vertices()},
         {"target", inst.target.vertices()}};
  if (inst.bound)
    j["bound"] = *inst.bound;
  return j;
}

inline instance instance_from_json(const json &j, const std::filesystem::path &base = {}) {
  if (!j.is_object())
    throw input_error("instance must be a JSON object");
  for (const char *key : {"graph", "condition", "rule", "start", "target"})
    if (!j.contains(key))
      throw input_error(std::string("instance is missing \"") + key + "\"");
  instance inst;
  inst.graph = graph_from_json(j.at("graph"), base);
  try {
    inst.cond = parse_condition(j.at("condition").get<std::string>());
    inst.move_rule = parse_rule(j.at("rule").get<std::string>());
    if (j.contains("bound"))
      inst.bound = j.at("bound").get<int>();
  } catch (const json::exception &e) {
    throw input_error(std::string("instance: ") + e.what());
  }
  inst.start = configuration_from_json(j.at("start"), "start");
  inst.target = configuration_from_json(j.at("target"), "target");
  require_within(inst.graph, inst.start);
  require_within(inst.graph, inst.target);
  return inst;
}

inline instance load_instance(const std::filesystem::path &path) {
  return instance_from_json(parse_json(read_file(path), path.string()), path.parent_path());
}

inline json sequence_to_json(const reconf_sequence &seq, const rule &r, condition cond) {
  json configs = json::array(), moves = json::array();
  for (const auto &c : seq.configs)
    configs.push_back(c.vertices());
  for (const auto &m : seq.moves) {
    json pairs = json::array();
    for (auto [u, v] : m.pairs)
      pairs.push_back({u, v});
    moves.push_back(std::move(pairs));
  }
  return json{{"configs", std::move(configs)},
              {"moves", std::move(moves)},
              {"rule", to_string(r)},
              {"condition", to_string(cond)}};
}

struct sequence_file {
  reconf_sequence sequence;
  std::optional<rule> move_rule;
  std::optional<condition> cond;
};

inline sequence_file sequence_from_json(const json &j) {
  sequence_file out;
  try {
    for (const auto &c : j.at("configs"))
      out.sequence.configs.push_back(configuration_from_json(c, "configs"));
    for (const auto &m : j.at("moves")) {
      move mv;
      for (const auto &p : m)
        mv.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
      out.sequence.moves.push_back(std::move(mv));
    }
    if (j.contains("rule"))
      out.move_rule = parse_rule(j.at("rule").get<std::string>());
    if (j.contains("condition"))
      out.cond = parse_condition(j.at("condition").get<std::string>());
  } catch (const json::exception &e) {
    throw input_error(std::string("sequence: ") + e.what());
  }
  return out;
}

inline json relaxed_to_json(const std::vector<relaxed_move> &moves) {
  json out = json::array();
  for (const auto &mv : moves) {
    json steps = json::array();
    for (const auto &s : mv) {
      switch (s.type) {
      case relaxed_step::kind::jump:
        steps.push_back({"J", s.from, s.to});
        break;
      case relaxed_step::kind::add:
        steps.push_back({"A", s.to});
        break;
      case relaxed_step::kind::remove:
        steps.push_back({"R", s.from});
        break;
      }
    }
    out.push_back(json{{"steps", std::move(steps)}});
  }
  return out;
}

/// Accepts the move array itself or an object holding it under "moves".
inline std::vector<relaxed_move> relaxed_from_json(const json &j) {
  const json &arr = j.is_object() ? j.at("moves") : j;
  std::vector<relaxed_move> out;
  try {
    for (const auto &mv : arr) {
      relaxed_move steps;
      for (const auto &s : mv.at("steps")) {
        const auto tag = s.at(0).get<std::string>();
        if (tag == "J" && s.size() == 3)
          steps.push_back(relaxed_step::jump(s.at(1).get<int>(), s.at(2).get<int>()));
        else if (tag == "A" && s.size() == 2)
          steps.push_back(relaxed_step::add(s.at(1).get<int>()));
        else if (tag == "R" && s.size() == 2)
          steps.push_back(relaxed_step::remove(s.at(1).get<int>()));
        else
          throw input_error("relaxed step must be [\"J\",u,v], [\"A\",v] or [\"R\",v]");
      }
      out.push_back(std::move(steps));
    }
  } catch (const json::exception &e) {
    throw input_error(std::string("relaxed sequence: ") + e.what());
  }
  return out;
}

/// Instance JSON for a gadget; the rule is taken from its first rule claim.
inline json gadget_to_json(const gadget_instance &g) {
  instance inst{g.graph, g.cond, rule::all(1), g.start, g.target, std::nullopt};
  for (const auto &c : g.claims)
    if (c.move_rule) {
      inst.move_rule = *c.move_rule;
      break;
    }
  json j = instance_to_json(inst);
  j["name"] = g.name;
  j["k"] = g.k;
  j["provenance"] = g.provenance;
  json claims = json::array();
  for (const auto &c : g.claims)
    claims.push_back(to_string(c));
  j["claims"] = std::move(claims);
  return j;
}

inline json issue_to_json(const sequence_issue &issue) {
  const char *where = issue.at == sequence_issue::where::configuration ? "configuration"
                      : issue.at == sequence_issue::where::move       ? "move"
                                                                       : "endpoint";
  return json{{"valid", false}, {"where", where}, {"index", issue.index}, {"reason", issue.reason}};
}

} // namespace reconf
