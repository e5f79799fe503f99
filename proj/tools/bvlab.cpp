// Command-line front end: reduce, decompose, solve, oracle, run, hunt, report.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "bvlab/harness.hpp"
#include "bvlab/incidence.hpp"
#include "bvlab/matcore.hpp"
#include "bvlab/oracle.hpp"
#include "bvlab/problems.hpp"
#include "bvlab/report.hpp"
#include "bvlab/runner.hpp"
#include "bvlab/solve.hpp"

using namespace bvlab;

namespace {

// Accepts "p/q", integers and plain decimals such as 0.25.
Rational parse_number(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("bad number '" + text + "'");
  }
  mpz_class den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  Rational q(mpz_class(whole.empty() ? "0" : whole) * den + mpz_class(frac), den);
  q.canonicalize();
  return q;
}

std::pair<std::string, std::string> split_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) return {text, text};
  return {text.substr(0, pos), text.substr(pos + 2)};
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

Caps caps_from(const std::string& text) {
  Caps caps = Caps::from_env();
  return text.empty() ? caps : Caps::parse(text, caps);
}

InstancePair load_pair(const std::string& path) { return pair_from_json(json::parse(read_text_file(path))); }

std::optional<ConstraintSystem> system_for(const std::string& model, const InstancePair& raw, const Caps& caps) {
  const InstancePair pair = raw.padded() ? raw : pad_pattern(raw);
  if (model == "relaxation" || model == "convex" || model == "cutloop") return build_relaxation(pair, Side::Left);
  if (model == "relaxation-right") return build_relaxation(pair, Side::Right);
  if (model == "factored") return build_factored_system(pair, incidence_factors(pair));
  if (model == "symmetric") return build_symmetric_lp(pair, SymmetricObjective::Count, caps).sys;
  const IncidencePair g = incidence_decompose(pair.G), s = incidence_decompose(pair.S);
  if (model == "incidence-symmetric") return build_incidence_symmetric(g, s, caps).sys;
  if (model == "incidence-necessary") return build_necessary_system(g, s, caps);
  if (model == "incidence-convex" || model == "incidence-lp") return build_incidence_convex_check(g, s).sys;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doubly stochastic relaxations of matrix-embedding problems"};
  app.require_subcommand(1);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Build the (G, S) pair of a problem instance");
  std::string r_problem, r_graph, r_pattern, r_out;
  std::size_t r_m = 0;
  bool r_pad = false;
  reduce->add_option("--problem", r_problem, "clique, hc, hp, matching, perfect-matching, subgi, gi, 2sat, 3sat, sat")
      ->required();
  reduce->add_option("--input,--graph", r_graph, "host graph-JSON, or DIMACS CNF for the SAT kinds");
  reduce->add_option("--pattern", r_pattern, "pattern graph-JSON (subgi, gi)");
  reduce->add_option("--m", r_m, "clique or matching size");
  reduce->add_flag("--pad", r_pad, "append isolated pattern vertices up to n");
  reduce->add_option("-o,--output", r_out, "output path (stdout if omitted)");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "BvN or incidence decomposition of a JSON matrix");
  std::string d_matrix, d_mode, d_side = "G", d_out;
  decompose->add_option("--input,--matrix", d_matrix, "matrix JSON, or a pair JSON (then --side picks G or S)")->required();
  decompose->add_option("--side", d_side, "G or S of a pair")->check(CLI::IsMember({"G", "S"}));
  decompose->add_option("--mode", d_mode, "bvn or incidence (default: incidence for pairs, bvn otherwise)")
      ->check(CLI::IsMember({"bvn", "incidence"}));
  decompose->add_option("-o,--output", d_out, "output path");

  // solve
  auto* solve = app.add_subcommand("solve", "Run one model on a pair");
  std::string s_model, s_pair, s_caps, s_out, s_export;
  std::size_t s_cut_iters = 50;
  bool s_no_heuristic = false, s_exhaustive = false;
  solve->add_option("--model", s_model, "model name")->required()->check(CLI::IsMember(model_names()));
  solve->add_option("--pair", s_pair, "pair JSON")->required();
  solve->add_option("--caps", s_caps, "key=value,... on top of BVLAB_CAPS");
  solve->add_option("--cut-iters", s_cut_iters, "cut loop iteration limit");
  solve->add_flag("--no-heuristic", s_no_heuristic, "skip the iterated-LP bound in norm decisions");
  solve->add_flag("--exhaustive-basis", s_exhaustive, "asymmetric model over all permutation pairs");
  solve->add_option("--export-system", s_export, "also write the model's constraint system as JSON");
  solve->add_option("-o,--output", s_out, "verdict JSON path");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Brute-force embedding search on a pair");
  std::string o_pair, o_problem, o_input, o_out;
  std::size_t o_m = 0;
  bool o_exhaustive = false;
  oracle->add_option("--pair", o_pair, "pair JSON");
  oracle->add_option("--problem", o_problem, "direct oracle: sat, hc, hp, clique, matching")
      ->check(CLI::IsMember({"sat", "hc", "hp", "clique", "matching"}));
  oracle->add_option("--input", o_input, "graph-JSON or DIMACS CNF for --problem");
  oracle->add_option("--m", o_m, "clique size or matched vertex count");
  oracle->add_flag("--exhaustive", o_exhaustive, "plain enumeration of all permutations (n <= 9)");
  oracle->add_option("-o,--output", o_out, "output path");

  // run
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  std::string x_config, x_out;
  bool x_serial = false;
  run->add_option("--config", x_config, "ExperimentConfig JSON")->required();
  run->add_option("-o,--output", x_out, "output directory (overrides the config)");
  run->add_flag("--serial", x_serial, "no instance-level threads");

  // hunt
  auto* hunt = app.add_subcommand("hunt", "Search for sufficiency breaches of a claim");
  std::string h_claim, h_sizes = "3..5", h_density = "0.2..0.8", h_out = "findings", h_caps, h_config;
  std::vector<std::string> h_problems;
  std::uint64_t h_seeds = 100, h_seed_start = 0;
  bool h_serial = false, h_no_heuristic = false;
  hunt->add_option("--claim", h_claim, "convex-sufficiency, asymmetric-sufficiency, incidence-convex-sufficiency")
      ->required()
      ->check(CLI::IsMember({"convex-sufficiency", "asymmetric-sufficiency", "incidence-convex-sufficiency"}));
  hunt->add_option("--config", h_config, "base ExperimentConfig JSON; flags given explicitly override it");
  hunt->add_option("--sizes", h_sizes, "n range, e.g. 3..5");
  hunt->add_option("--density", h_density, "arc probability range, e.g. 0.2..0.8");
  hunt->add_option("--seeds", h_seeds, "seeds per problem");
  hunt->add_option("--seed-start", h_seed_start, "first seed");
  hunt->add_option("--problems", h_problems, "problem kinds (default subgi)");
  hunt->add_option("--caps", h_caps, "key=value,... on top of BVLAB_CAPS");
  hunt->add_flag("--serial", h_serial, "no instance-level threads");
  hunt->add_flag("--no-heuristic", h_no_heuristic, "skip the iterated-LP bound in norm decisions");
  hunt->add_option("-o,--output", h_out, "output directory");

  // report
  auto* report = app.add_subcommand("report", "Summarize a records JSONL file");
  std::string p_path, p_csv;
  report->add_option("records", p_path, "records.jsonl")->required();
  report->add_option("--csv", p_csv, "also write CSV tables here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reduce) {
      InstancePair pair;
      auto graph = [&](const std::string& path) {
        if (path.empty()) throw std::invalid_argument("--input is required for " + r_problem);
        return parse_graph(read_text_file(path));
      };
      if (r_problem == "clique") {
        pair = build_clique_pair(graph(r_graph), r_m);
      } else if (r_problem == "hc") {
        pair = build_hc_pair(graph(r_graph));
      } else if (r_problem == "hp") {
        pair = build_hp_pair(graph(r_graph));
      } else if (r_problem == "matching" || r_problem == "perfect-matching") {
        const DigraphInstance g = graph(r_graph);
        pair = build_matching_pair(g, r_problem == "perfect-matching" && r_m == 0 ? g.n : r_m, r_problem == "perfect-matching");
      } else if (r_problem == "subgi" || r_problem == "gi") {
        if (r_pattern.empty()) throw std::invalid_argument("--pattern is required for " + r_problem);
        pair = build_subgi_pair(graph(r_graph), parse_graph(read_text_file(r_pattern)),
                                r_problem == "gi" ? Relation::Equal : Relation::Cover);
      } else if (r_problem == "2sat" || r_problem == "3sat" || r_problem == "sat") {
        if (r_graph.empty()) throw std::invalid_argument("--input is required for " + r_problem);
        const CnfFormula f = parse_cnf(read_text_file(r_graph));
        pair = r_problem == "sat" ? build_sat_pair(f).pair : build_ksat_pair(f, r_problem == "2sat" ? 2 : 3).pair;
      } else {
        throw std::invalid_argument("unknown problem '" + r_problem + "'");
      }
      if (r_pad && !pair.padded()) pair = pad_pattern(pair);
      emit(r_out, pair_to_json(pair).dump(2) + "\n");
    } else if (*decompose) {
      const json in = json::parse(read_text_file(d_matrix));
      const bool is_pair = in.contains("G");
      const RatMatrix m = is_pair ? pair_from_json(in).*(d_side == "G" ? &InstancePair::G : &InstancePair::S) : matrix_from_json(in);
      const std::string mode = !d_mode.empty() ? d_mode : is_pair ? "incidence" : "bvn";
      ordered_json out;
      if (mode == "bvn") {
        const BvnDecomposition d = bvn_decompose(m);
        out["terms"] = ordered_json::array();
        for (const auto& t : d.terms) out["terms"].push_back({{"coefficient", rational_to_json(t.coefficient)}, {"perm", perm_to_json(t.perm)}});
        out["count"] = d.terms.size();
        out["bound"] = (m.rows() - 1) * (m.rows() - 1) + 1;
      } else {
        out = incidence_to_json(incidence_decompose(m));
      }
      emit(d_out, out.dump(2) + "\n");
    } else if (*solve) {
      const InstancePair pair = load_pair(s_pair);
      RunOptions opts;
      opts.caps = caps_from(s_caps);
      opts.cut_iters = s_cut_iters;
      opts.norm_heuristic = !s_no_heuristic;
      opts.generator = s_exhaustive ? BasisGenerator::Exhaustive : BasisGenerator::GreedyPoly;
      const ModelResult res = run_model(s_model, pair, opts);
      ordered_json out = model_result_to_json(res);
      out["witness"] = rationals_to_json(res.witness);
      out["substitution_ok"] = substitute_witness(pair, res, opts);
      emit(s_out, out.dump(2) + "\n");
      if (!s_export.empty()) {
        const auto sys = system_for(s_model, pair, opts.caps);
        if (!sys) throw std::invalid_argument("model " + s_model + " has no single constraint system to export");
        write_text_file(s_export, sys->to_json().dump(2) + "\n");
      }
      return res.verdict == Verdict::Error ? 1 : 0;
    } else if (*oracle) {
      OracleVerdict v;
      if (!o_problem.empty()) {
        if (o_input.empty()) throw std::invalid_argument("--input is required with --problem");
        const std::string text = read_text_file(o_input);
        if (o_problem == "sat") v = sat_oracle(parse_cnf(text));
        if (o_problem == "hc") v = hc_oracle(parse_graph(text));
        if (o_problem == "hp") v = hp_oracle(parse_graph(text));
        if (o_problem == "clique") v = clique_oracle(parse_graph(text), o_m);
        if (o_problem == "matching") v = matching_oracle(parse_graph(text), o_m);
      } else {
        if (o_pair.empty()) throw std::invalid_argument("give --pair or --problem");
        const InstancePair pair = load_pair(o_pair);
        v = o_exhaustive ? subgi_oracle_exhaustive(pair) : subgi_oracle(pair);
      }
      emit(o_out, verdict_to_json(v).dump(2) + "\n");
    } else if (*run) {
      ExperimentConfig cfg = config_from_json(json::parse(read_text_file(x_config)));
      if (!x_out.empty()) cfg.output = x_out;
      if (x_serial) cfg.parallel = false;
      const ExperimentResult res = run_experiment(cfg);
      std::cout << render_text(summarize(res.records));
    } else if (*hunt) {
      ExperimentConfig cfg = h_config.empty() ? ExperimentConfig{} : config_from_json(json::parse(read_text_file(h_config)));
      if (h_config.empty() || hunt->count("--sizes")) {
        const auto [lo, hi] = split_range(h_sizes);
        cfg.n_min = std::stoul(lo);
        cfg.n_max = std::stoul(hi);
      }
      if (h_config.empty() || hunt->count("--density")) {
        const auto [lo, hi] = split_range(h_density);
        cfg.density_min = parse_number(lo);
        cfg.density_max = parse_number(hi);
      }
      if (h_config.empty() || hunt->count("--seeds")) cfg.seeds = h_seeds;
      if (hunt->count("--seed-start")) cfg.seed_start = h_seed_start;
      if (!h_problems.empty()) cfg.problems = h_problems;
      if (!h_caps.empty() || h_config.empty()) cfg.run.caps = caps_from(h_caps);
      if (h_no_heuristic) cfg.run.norm_heuristic = false;
      if (h_serial) cfg.parallel = false;
      cfg.validate();
      const HuntResult res = hunt_counterexamples(cfg, claim_from_string(h_claim), h_out);
      std::cout << res.report;
    } else if (*report) {
      const Report rep = report_file(p_path);
      std::cout << render_text(rep);
      if (!p_csv.empty()) write_text_file(p_csv, render_csv(rep));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
