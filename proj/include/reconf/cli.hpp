#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reconf/error.hpp"
#include "reconf/gadgets.hpp"
#include "reconf/io.hpp"
#include "reconf/oracle.hpp"
#include "reconf/random.hpp"
#include "reconf/reductions.hpp"
#include "reconf/solvers.hpp"

namespace reconf {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int negative = 1; // unreachable, invalid, or outside the solver's guarantee
inline constexpr int usage = 2;
} // namespace exit_code

namespace detail {

inline oracle_options oracle_options_from_env() {
  oracle_options opts;
  if (const char *cap = std::getenv("RECONFIG_ENUM_CAP")) {
    try {
      std::size_t used = 0;
      opts.enumeration_cap = std::stoull(cap, &used);
      if (cap[used] != '\0')
        throw std::invalid_argument("trailing text");
    } catch (const std::exception &) {
      throw input_error(std::string("RECONFIG_ENUM_CAP is not a number: ") + cap);
    }
  }
  return opts;
}

inline configuration parse_vertex_list(const std::string &text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw input_error("bad vertex list '" + text + "'");
    }
  }
  return configuration(std::move(out));
}

struct cli_state {
  explicit cli_state(std::ostream &o) : out(o) {}

  std::ostream &out;
  std::string instance_path;
  std::string sequence_path;
  std::string out_path;
  std::string rule_text;
  std::string condition_text;
  std::uint64_t seed = 1;
  bool shortest = false;

  // gen
  int param = 0;
  int vertices = 8;
  int size = 0;
  double density = 0.3;

  // reduce
  std::string graph_path;
  std::string cover_text;
  std::string clique_text;
  std::string relaxed_path;
  std::string sequence_out;
  int cover_size = 0;
  int ell = 2;

  instance load() const {
    auto inst = load_instance(instance_path);
    if (!rule_text.empty())
      inst.move_rule = parse_rule(rule_text);
    if (!condition_text.empty())
      inst.cond = parse_condition(condition_text);
    return inst;
  }

  void emit(const json &j) const {
    if (out_path.empty())
      out << j.dump(2) << '\n';
    else
      write_file(out_path, j.dump(2) + "\n");
  }

  void report(const json &j) const { out << j.dump() << '\n'; }
};

inline int run_solve(cli_state &s) {
  const auto inst = s.load();
  if (!check_condition(inst.graph, inst.cond, inst.start) ||
      !check_condition(inst.graph, inst.cond, inst.target))
    throw input_error("start or target violates the condition");
  reconf_sequence seq;
  rule used = inst.move_rule;
  try {
    switch (inst.cond) {
    case condition::vertex_cover:
      seq = solve_vertex_cover(inst.graph, inst.start, inst.target).sequence;
      used = rule::all(1);
      break;
    case condition::dominating_set:
      seq = solve_dominating_set(inst.graph, inst.start, inst.target);
      used = rule::tiered(static_cast<int>(inst.start.size()) - 2, 2);
      break;
    case condition::independent_set:
      seq = solve_independent_set(inst.graph, inst.start, inst.target);
      used = rule::tiered(1, 3);
      break;
    case condition::unconstrained:
      seq = reconfigure_unconstrained(inst.graph, inst.start, inst.target);
      used = rule::sliding();
      break;
    }
  } catch (const contract_error &e) {
    s.report({{"solved", false}, {"reason", e.what()}});
    return exit_code::negative;
  }
  // The instance rule is what the caller asked for; the sequence must obey it.
  if (auto issue = validate_sequence(inst.graph, inst.cond, inst.move_rule, seq)) {
    auto j = issue_to_json(*issue);
    j["solved"] = false;
    j["solver_rule"] = to_string(used);
    j["requested_rule"] = to_string(inst.move_rule);
    s.report(j);
    return exit_code::negative;
  }
  s.emit(sequence_to_json(seq, inst.move_rule, inst.cond));
  return exit_code::ok;
}

inline int run_verify(cli_state &s) {
  const auto inst = s.load();
  const auto text = read_file(s.sequence_path);
  const auto j = parse_json(text, s.sequence_path);
  const rule r = s.rule_text.empty() && j.contains("rule")
                     ? parse_rule(j.at("rule").get<std::string>())
                     : inst.move_rule;
  if (r.is_relaxed()) {
    if (inst.cond != condition::vertex_cover)
      throw input_error("relaxed sequences are defined for vertex cover only");
    if (auto issue =
            validate_relaxed_sequence(inst.graph, inst.start, inst.target, relaxed_from_json(j))) {
      s.report(issue_to_json(*issue));
      return exit_code::negative;
    }
    s.report({{"valid", true}});
    return exit_code::ok;
  }
  const auto file = sequence_from_json(j);
  const auto &seq = file.sequence;
  if (auto issue = validate_sequence(inst.graph, inst.cond, r, seq)) {
    s.report(issue_to_json(*issue));
    return exit_code::negative;
  }
  if (seq.front() != inst.start || seq.back() != inst.target) {
    s.report(issue_to_json({sequence_issue::where::endpoint,
                            seq.front() != inst.start ? 0 : seq.configs.size() - 1,
                            "sequence endpoints differ from the instance"}));
    return exit_code::negative;
  }
  s.report({{"valid", true}, {"moves", seq.length()}});
  return exit_code::ok;
}

inline int run_oracle(cli_state &s) {
  const auto inst = s.load();
  const auto res = reachability(inst.graph, inst.cond, inst.move_rule, inst.start, inst.target,
                                oracle_options_from_env());
  json j{{"reachable", res.reachable}, {"rule", to_string(inst.move_rule)}};
  if (s.shortest)
    j["shortest"] = res.shortest ? json(*res.shortest) : json(nullptr);
  if (inst.bound)
    j["within_bound"] = res.reachable && *res.shortest <= *inst.bound;
  s.report(j);
  if (res.witness && !s.out_path.empty())
    s.emit(sequence_to_json(*res.witness, inst.move_rule, inst.cond));
  return res.reachable ? exit_code::ok : exit_code::negative;
}

inline int run_report(cli_state &s) {
  const auto inst = s.load();
  const int k = s.size > 0 ? s.size : static_cast<int>(inst.start.size());
  const auto comps =
      component_report(inst.graph, inst.cond, inst.move_rule, k, oracle_options_from_env());
  json list = json::array();
  for (const auto &c : comps)
    list.push_back({{"size", c.size},
                    {"diameter", c.diameter},
                    {"representative", c.representative.vertices()}});
  s.emit(json{{"rule", to_string(inst.move_rule)}, {"k", k}, {"components", std::move(list)}});
  return exit_code::ok;
}

inline int run_gen(cli_state &s, const std::string &kind) {
  if (kind == "random") {
    rng_type rng(s.seed);
    const auto cond = parse_condition(s.condition_text.empty() ? "vc" : s.condition_text);
    const auto g = random_connected_graph(s.vertices, s.density, rng);
    int k = s.size;
    if (k <= 0) {
      // smallest size with a solution, plus one for vertex cover / dominating set
      for (k = 0; k <= g.num_vertices(); ++k)
        if (!enumerate_solutions(g, cond, k, oracle_options_from_env()).empty())
          break;
      if (cond == condition::independent_set)
        k = std::max(1, k);
    }
    const auto pair = random_solution_pair(g, cond, k, rng, oracle_options_from_env());
    if (!pair)
      throw input_error("no solution of size " + std::to_string(k));
    const rule r = cond == condition::dominating_set   ? rule::tiered(std::max(0, k - 2), 2)
                   : cond == condition::independent_set ? rule::tiered(1, 3)
                                                        : rule::all(1);
    s.emit(instance_to_json({g, cond, r, pair->first, pair->second, std::nullopt}));
    return exit_code::ok;
  }
  gadget_instance g;
  if (kind == "cycle-vc")
    g = gen_cycle_vc(s.param);
  else if (kind == "cycle-ds")
    g = gen_cycle_ds(s.param);
  else if (kind == "ds-gadget")
    g = gen_ds_gadget(s.param);
  else if (kind == "is-gadget")
    g = gen_is_gadget(s.param);
  else if (kind == "t-gadget")
    g = gen_t_gadget(s.param);
  else
    throw input_error("unknown gadget '" + kind + "'");
  s.emit(gadget_to_json(g));
  return exit_code::ok;
}

inline int run_reduce(cli_state &s, const std::string &kind) {
  if (kind == "vc-shortest") {
    const auto g = load_graph(s.graph_path);
    const auto red = reduce_vc_shortest(g, s.cover_size, s.ell);
    instance inst{red.graph, condition::vertex_cover, rule::all(1), red.start, red.target,
                  red.bound};
    s.emit(instance_to_json(inst));
    if (!s.cover_text.empty()) {
      const auto cover = parse_vertex_list(s.cover_text);
      if (!is_vertex_cover(g, cover))
        throw input_error("given cover is not a vertex cover of G");
      const auto seq = build_yes_schedule(red, cover);
      const auto j = sequence_to_json(seq, rule::all(1), condition::vertex_cover);
      if (s.sequence_out.empty())
        s.report(j);
      else
        write_file(s.sequence_out, j.dump(2) + "\n");
    }
    return exit_code::ok;
  }
  const auto inst = s.load();
  if (kind == "vc-to-ds") {
    const auto red = reduce_vctj_to_ds(inst.graph, inst.start, inst.target);
    s.emit(instance_to_json({red.graph, condition::dominating_set, rule::all(1), red.start,
                             red.target, std::nullopt}));
    if (!s.sequence_path.empty()) {
      const auto file = sequence_from_json(parse_json(read_file(s.sequence_path), s.sequence_path));
      if (auto issue = validate_sequence(inst.graph, condition::vertex_cover, rule::jumping(),
                                         file.sequence)) {
        s.report(issue_to_json(*issue));
        return exit_code::negative;
      }
      const auto ds = vc_seq_to_ds_seq(red, file.sequence);
      const auto j = sequence_to_json(ds, rule::all(1), condition::dominating_set);
      if (s.sequence_out.empty())
        s.report(j);
      else
        write_file(s.sequence_out, j.dump(2) + "\n");
    }
    return exit_code::ok;
  }
  if (kind == "normalize-relaxed") {
    const auto moves = relaxed_from_json(parse_json(read_file(s.relaxed_path), s.relaxed_path));
    if (auto issue = validate_relaxed_sequence(inst.graph, inst.start, inst.target, moves)) {
      s.report(issue_to_json(*issue));
      return exit_code::negative;
    }
    const auto seq = normalize_relaxed(inst.graph, inst.start, inst.target, moves);
    s.emit(sequence_to_json(seq, rule::jumping(), condition::vertex_cover));
    return exit_code::ok;
  }
  if (kind == "split-to-ts") {
    const auto clique = parse_vertex_list(s.clique_text);
    std::vector<int> rest;
    for (int v = 0; v < inst.graph.num_vertices(); ++v)
      if (!clique.contains(v))
        rest.push_back(v);
    const auto file = sequence_from_json(parse_json(read_file(s.sequence_path), s.sequence_path));
    const auto seq =
        split_to_token_sliding(inst.graph, clique, configuration(std::move(rest)), file.sequence);
    s.emit(sequence_to_json(seq, rule::sliding(), condition::independent_set));
    return exit_code::ok;
  }
  throw input_error("unknown reduction '" + kind + "'");
}

} // namespace detail

/// Command-line entry point. Diagnostics for negative answers go to `out` as
/// JSON; usage and input errors go to `err`.
inline int cli_main(int argc, const char *const *argv, std::ostream &out = std::cout,
                    std::ostream &err = std::cerr) {
  CLI::App app{"Token reconfiguration of vertex covers, dominating sets and independent sets"};
  app.require_subcommand(1);
  detail::cli_state s(out);
  std::string kind;

  auto add_instance = [&](CLI::App *cmd, bool required = true) {
    auto *opt = cmd->add_option("--instance,-i", s.instance_path, "Instance JSON");
    if (required)
      opt->required()->check(CLI::ExistingFile);
    cmd->add_option("--rule", s.rule_text, "Override the instance rule (e.g. tj:all:1, tt:1:3)");
    cmd->add_option("--condition", s.condition_text, "Override the condition (vc, ds, is, none)");
  };
  auto add_out = [&](CLI::App *cmd) {
    cmd->add_option("--out,-o", s.out_path, "Write JSON output to this file");
    cmd->add_option("--seed", s.seed, "Seed for randomized generation");
  };

  auto *solve = app.add_subcommand("solve", "Compute a reconfiguration sequence");
  add_instance(solve);
  add_out(solve);

  auto *verify = app.add_subcommand("verify", "Validate a sequence against an instance");
  add_instance(verify);
  add_out(verify);
  verify->add_option("--sequence,-s", s.sequence_path, "Sequence JSON")
      ->required()
      ->check(CLI::ExistingFile);

  auto *oracle = app.add_subcommand("oracle", "Exhaustive reachability");
  add_instance(oracle);
  add_out(oracle);
  oracle->add_flag("--shortest", s.shortest, "Report the shortest sequence length");

  auto *report = app.add_subcommand("report", "Components of the solution graph");
  add_instance(report);
  add_out(report);
  report->add_option("--k", s.size, "Solution size (default: the start's size)");

  auto *gen = app.add_subcommand("gen", "Generate a gadget or random instance");
  gen->add_option("kind", kind, "cycle-vc | cycle-ds | ds-gadget | is-gadget | t-gadget | random")
      ->required()
      ->check(CLI::IsMember(
          {"cycle-vc", "cycle-ds", "ds-gadget", "is-gadget", "t-gadget", "random"}));
  gen->add_option("--param,-p", s.param, "Gadget parameter (k, i or l)");
  gen->add_option("--n", s.vertices, "Vertices for random graphs");
  gen->add_option("--k", s.size, "Solution size for random instances");
  gen->add_option("--density", s.density, "Extra edge probability for random graphs");
  gen->add_option("--condition", s.condition_text, "Condition for random instances");
  add_out(gen);

  auto *reduce = app.add_subcommand("reduce", "Apply a reduction or sequence transformation");
  reduce->add_option("kind", kind, "vc-to-ds | vc-shortest | normalize-relaxed | split-to-ts")
      ->required()
      ->check(CLI::IsMember({"vc-to-ds", "vc-shortest", "normalize-relaxed", "split-to-ts"}));
  add_instance(reduce, false);
  add_out(reduce);
  reduce->add_option("--graph", s.graph_path, "Graph file (vc-shortest)");
  reduce->add_option("--k", s.cover_size, "Cover size (vc-shortest)");
  reduce->add_option("--ell", s.ell, "Length bound l (vc-shortest)");
  reduce->add_option("--cover", s.cover_text, "Comma-separated cover for the yes-schedule");
  reduce->add_option("--sequence,-s", s.sequence_path, "Sequence JSON to translate");
  reduce->add_option("--sequence-out", s.sequence_out, "Where to write a translated sequence");
  reduce->add_option("--relaxed", s.relaxed_path, "Relaxed sequence JSON (normalize-relaxed)");
  reduce->add_option("--clique", s.clique_text, "Comma-separated clique side (split-to-ts)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (*solve)
      return detail::run_solve(s);
    if (*verify)
      return detail::run_verify(s);
    if (*oracle)
      return detail::run_oracle(s);
    if (*report)
      return detail::run_report(s);
    if (*gen)
      return detail::run_gen(s, kind);
    if (*reduce) {
      if (kind == "vc-shortest" ? s.graph_path.empty() : s.instance_path.empty())
        throw input_error(kind == "vc-shortest" ? "--graph is required" : "--instance is required");
      return detail::run_reduce(s, kind);
    }
  } catch (const input_error &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const resource_error &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const contract_error &e) {
    s.report({{"error", e.what()}});
    return exit_code::negative;
  } catch (const move_error &e) {
    s.report({{"error", e.what()}});
    return exit_code::negative;
  }
  return exit_code::usage;
}

} // namespace reconf
