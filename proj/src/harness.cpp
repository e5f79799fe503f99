#include "bvlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bvlab/oracle.hpp"
#include "bvlab/problems.hpp"
#include "bvlab/random.hpp"
#include "bvlab/report.hpp"

namespace bvlab {

const std::vector<std::string>& problem_kinds() {
  static const std::vector<std::string> kinds{"subgi", "gi",   "clique", "hc",   "hp",
                                              "matching", "perfect-matching", "2sat", "3sat", "sat"};
  return kinds;
}

namespace {

bool is_sat_kind(const std::string& p) { return p == "2sat" || p == "3sat" || p == "sat"; }

// Brute-force graph oracles stop at 10 vertices, the exhaustive re-check at 9.
constexpr std::size_t kMaxGraphSize = 9;

std::string padded_seed(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06llu", static_cast<unsigned long long>(seed));
  return buf;
}

std::size_t size_for(const ExperimentConfig& cfg, std::uint64_t seed) {
  const std::uint64_t span = cfg.n_max - cfg.n_min + 1;
  return cfg.n_min + static_cast<std::size_t>(seed % span);
}

// Five evenly spaced densities; consecutive seeds walk the sizes first.
Rational density_for(const ExperimentConfig& cfg, std::uint64_t seed) {
  const std::uint64_t span = cfg.n_max - cfg.n_min + 1;
  const long t = static_cast<long>((seed / span) % 5);
  Rational d = cfg.density_min + (cfg.density_max - cfg.density_min) * ratio(t, 4);
  return d;
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[draw_below(rng, i)]);
  return p;
}

ordered_json opt_json(const std::optional<bool>& v) {
  if (!v) return nullptr;
  return *v ? "YES" : "NO";
}

std::optional<bool> opt_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  const std::string s = j.get<std::string>();
  if (s == "YES") return true;
  if (s == "NO") return false;
  throw std::invalid_argument("expected YES, NO or null");
}

}  // namespace

void ExperimentConfig::validate() const {
  for (const auto& p : problems) {
    if (std::find(problem_kinds().begin(), problem_kinds().end(), p) == problem_kinds().end()) {
      throw std::invalid_argument("unknown problem kind '" + p + "'");
    }
  }
  for (const auto& m : models) {
    if (!is_model_name(m)) throw std::invalid_argument("unknown model '" + m + "'");
  }
  if (n_min < 2 || n_min > n_max) throw std::invalid_argument("size range must satisfy 2 <= min <= max");
  if (n_max > kMaxGraphSize) throw std::invalid_argument("sizes above 9 exceed the oracle caps");
  if (density_min < 0 || density_max > 1 || density_min > density_max) {
    throw std::invalid_argument("density range must lie in [0, 1]");
  }
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["problems"] = c.problems;
  j["sizes"] = {c.n_min, c.n_max};
  j["density"] = {rational_to_json(c.density_min), rational_to_json(c.density_max)};
  j["seed_start"] = c.seed_start;
  j["seeds"] = c.seeds;
  j["models"] = c.models;
  j["caps"] = c.run.caps.to_string();
  j["cut_iters"] = c.run.cut_iters;
  j["norm_heuristic"] = c.run.norm_heuristic;
  j["generator"] = to_string(c.run.generator);
  j["output"] = c.output;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  if (j.contains("problems")) c.problems = j.at("problems").get<std::vector<std::string>>();
  if (j.contains("sizes")) {
    c.n_min = j.at("sizes").at(0).get<std::size_t>();
    c.n_max = j.at("sizes").at(1).get<std::size_t>();
  }
  if (j.contains("density")) {
    c.density_min = rational_from_json(j.at("density").at(0));
    c.density_max = rational_from_json(j.at("density").at(1));
  }
  if (j.contains("seed_start")) c.seed_start = j.at("seed_start").get<std::uint64_t>();
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::uint64_t>();
  if (j.contains("models")) c.models = j.at("models").get<std::vector<std::string>>();
  if (j.contains("caps")) c.run.caps = Caps::parse(j.at("caps").get<std::string>());
  if (j.contains("cut_iters")) c.run.cut_iters = j.at("cut_iters").get<std::size_t>();
  if (j.contains("norm_heuristic")) c.run.norm_heuristic = j.at("norm_heuristic").get<bool>();
  if (j.contains("generator")) {
    const std::string g = j.at("generator").get<std::string>();
    if (g == "GREEDY-POLY") {
      c.run.generator = BasisGenerator::GreedyPoly;
    } else if (g == "EXHAUSTIVE") {
      c.run.generator = BasisGenerator::Exhaustive;
    } else {
      throw std::invalid_argument("unknown generator '" + g + "'");
    }
  }
  if (j.contains("output")) c.output = j.at("output").get<std::string>();
  c.validate();
  return c;
}

GeneratedInstance generate_instance(const ExperimentConfig& cfg, const std::string& problem, std::uint64_t seed) {
  GeneratedInstance inst;
  inst.problem = problem;
  inst.seed = seed;
  inst.id = problem + "-s" + padded_seed(seed);
  inst.size = size_for(cfg, seed);
  inst.density = density_for(cfg, seed);
  Rng rng(mix_seed(fnv1a(problem), seed));
  const std::size_t n = inst.size;
  const Rational& d = inst.density;

  if (problem == "subgi") {
    const DigraphInstance g = gen_random_digraph(n, d, rng(), {true, false});
    const std::size_t m = 1 + draw_below(rng, n);
    const DigraphInstance s = gen_random_digraph(m, d / 2, rng(), {true, false});
    inst.pair = build_subgi_pair(g, s, Relation::Cover);
    inst.source = {{"host", graph_to_json(g)}, {"pattern", graph_to_json(s)}};
  } else if (problem == "gi") {
    const DigraphInstance g = gen_random_digraph(n, d, rng(), {true, false});
    const RatMatrix ga = g.adjacency();
    const auto p = random_permutation(rng, n);
    RatMatrix sa(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sa(p[i], p[j]) = ga(i, j);
    const bool toggle = draw_below(rng, 2) == 1;
    if (toggle) {
      const std::size_t i = draw_below(rng, n), j = draw_below(rng, n);
      sa(i, j) = sa(i, j) == 0 ? 1 : 0;
    }
    const DigraphInstance s = DigraphInstance::from_adjacency(sa);
    inst.pair = build_subgi_pair(g, s, Relation::Equal);
    inst.direct = !toggle;
    inst.source = {{"host", graph_to_json(g)}, {"pattern", graph_to_json(s)}, {"toggled", toggle}};
  } else if (problem == "clique") {
    const DigraphInstance g = gen_random_digraph(n, d, rng(), {false, true});
    const std::size_t m = n >= 3 ? 3 + draw_below(rng, n - 2) : 2;
    inst.pair = build_clique_pair(g, m);
    inst.direct = clique_oracle(g, m).yes;
    inst.source = {{"graph", graph_to_json(g)}, {"m", m}};
  } else if (problem == "hc" || problem == "hp") {
    const DigraphInstance g = gen_random_digraph(n, d, rng(), {false, false});
    inst.pair = problem == "hc" ? build_hc_pair(g) : build_hp_pair(g);
    inst.direct = problem == "hc" ? hc_oracle(g).yes : hp_oracle(g).yes;
    inst.source = {{"graph", graph_to_json(g)}};
  } else if (problem == "matching" || problem == "perfect-matching") {
    const bool perfect = problem == "perfect-matching";
    const std::size_t nn = perfect && n % 2 == 1 ? (n + 1 <= cfg.n_max ? n + 1 : n - 1) : n;
    inst.size = nn;
    const DigraphInstance g = gen_random_digraph(nn, d, rng(), {false, true});
    const std::size_t m = perfect ? nn : 2 * (1 + draw_below(rng, nn / 2));
    inst.pair = build_matching_pair(g, m, perfect);
    inst.direct = matching_oracle(g, m).yes;
    inst.source = {{"graph", graph_to_json(g)}, {"m", m}};
  } else if (is_sat_kind(problem)) {
    const unsigned k = problem == "2sat" ? 2 : problem == "3sat" ? 3 : 0;
    const std::size_t vars = std::clamp<std::size_t>(n, k == 3 ? 3 : 2, 4);
    const std::size_t clauses = 2 + draw_below(rng, 4);
    CnfFormula f;
    if (k != 0) {
      f = gen_random_cnf(vars, clauses, k, rng());
    } else {
      f.num_vars = vars;
      for (std::size_t c = 0; c < clauses; ++c) {
        const std::size_t width = 1 + draw_below(rng, 3);
        f.clauses.push_back(gen_random_cnf(vars, 1, width, rng()).clauses.front());
      }
    }
    inst.pair = k != 0 ? build_ksat_pair(f, k).pair : build_sat_pair(f).pair;
    inst.direct = sat_oracle(f).yes;
    inst.source = {{"cnf", emit_cnf(f)}};
  } else {
    throw std::invalid_argument("unknown problem kind '" + problem + "'");
  }
  return inst;
}

std::optional<bool> InstanceSummary::reduction_agrees() const {
  if (!oracle || !direct) return std::nullopt;
  return *oracle == *direct;
}

std::optional<bool> VerdictRecord::agrees() const {
  if (!oracle || (verdict != Verdict::Yes && verdict != Verdict::No)) return std::nullopt;
  return (verdict == Verdict::Yes) == *oracle;
}

ordered_json record_to_json(const VerdictRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["problem"] = r.problem;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["m"] = r.m;
  j["density"] = rational_to_json(r.density);
  j["model"] = r.model;
  j["verdict"] = to_string(r.verdict);
  j["oracle"] = opt_json(r.oracle);
  const auto agree = r.agrees();
  j["agree"] = agree ? ordered_json(*agree) : ordered_json(nullptr);
  j["witness_digest"] = r.witness_digest;
  j["iterations"] = r.iterations;
  if (r.cuts) j["cuts"] = *r.cuts;
  if (r.alpha) j["alpha"] = *r.alpha;
  if (!r.note.empty()) j["note"] = r.note;
  j["details"] = r.details;
  return j;
}

VerdictRecord record_from_json(const json& j) {
  VerdictRecord r;
  r.id = j.at("id").get<std::string>();
  r.problem = j.at("problem").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n = j.at("n").get<std::size_t>();
  r.m = j.at("m").get<std::size_t>();
  r.density = rational_from_json(j.at("density"));
  r.model = j.at("model").get<std::string>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.oracle = opt_from_json(j.at("oracle"));
  r.witness_digest = j.value("witness_digest", "");
  r.iterations = j.value("iterations", std::size_t{0});
  if (j.contains("cuts")) r.cuts = j.at("cuts").get<std::size_t>();
  if (j.contains("alpha")) r.alpha = j.at("alpha").get<std::size_t>();
  r.note = j.value("note", "");
  if (j.contains("details")) r.details = ordered_json::parse(j.at("details").dump());
  return r;
}

ordered_json summary_to_json(const InstanceSummary& s) {
  ordered_json j;
  j["id"] = s.id;
  j["problem"] = s.problem;
  j["seed"] = s.seed;
  j["n"] = s.n;
  j["m"] = s.m;
  j["density"] = rational_to_json(s.density);
  j["oracle"] = opt_json(s.oracle);
  j["direct"] = opt_json(s.direct);
  const auto agree = s.reduction_agrees();
  j["reduction_agree"] = agree ? ordered_json(*agree) : ordered_json(nullptr);
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

std::string witness_digest(const std::vector<Rational>& witness) {
  if (witness.empty()) return "";
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(rationals_to_json(witness).dump())));
  return buf;
}

namespace {

struct InstanceOutput {
  InstanceSummary summary;
  std::vector<VerdictRecord> records;
};

InstanceOutput run_instance(const ExperimentConfig& cfg, const std::string& problem, std::uint64_t seed) {
  InstanceOutput out;
  InstanceSummary& s = out.summary;
  s.problem = problem;
  s.seed = seed;
  s.id = problem + "-s" + padded_seed(seed);
  s.density = density_for(cfg, seed);
  std::optional<GeneratedInstance> inst;
  try {
    inst = generate_instance(cfg, problem, seed);
  } catch (const std::exception& e) {
    s.note = std::string("generation failed: ") + e.what();
    return out;
  }
  s.n = inst->pair.n();
  s.m = inst->pair.m;
  s.direct = inst->direct;
  try {
    s.oracle = subgi_oracle(inst->pair, {false}).yes;
  } catch (const std::exception& e) {
    s.note = std::string("oracle: ") + e.what();
  }

  RunOptions opts = cfg.run;
  if (cfg.parallel) opts.parallel = false;
  for (const auto& model : cfg.models) {
    const auto t0 = std::chrono::steady_clock::now();
    const ModelResult res = run_model(model, inst->pair, opts);
    const auto t1 = std::chrono::steady_clock::now();
    VerdictRecord r;
    r.id = s.id;
    r.problem = problem;
    r.seed = seed;
    r.n = s.n;
    r.m = s.m;
    r.density = s.density;
    r.model = model;
    r.verdict = res.verdict;
    r.oracle = s.oracle;
    r.witness_digest = witness_digest(res.witness);
    r.iterations = res.iterations;
    r.cuts = res.cuts;
    r.alpha = res.alpha;
    r.note = res.note;
    r.details = res.details;
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    out.records.push_back(std::move(r));
  }
  return out;
}

void write_lines(const std::string& path, const std::vector<ordered_json>& lines) {
  std::string text;
  for (const auto& l : lines) text += l.dump() + "\n";
  write_text_file(path, text);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::pair<std::string, std::uint64_t>> jobs;
  for (const auto& p : cfg.problems)
    for (std::uint64_t s = 0; s < cfg.seeds; ++s) jobs.emplace_back(p, cfg.seed_start + s);
  std::sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) {
    return a.first + "-s" + padded_seed(a.second) < b.first + "-s" + padded_seed(b.second);
  });
  jobs.erase(std::unique(jobs.begin(), jobs.end()), jobs.end());

  std::vector<InstanceOutput> outputs(jobs.size());
  const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) if (cfg.parallel)
  for (long i = 0; i < count; ++i) outputs[i] = run_instance(cfg, jobs[i].first, jobs[i].second);

  ExperimentResult result;
  for (auto& o : outputs) {
    result.instances.push_back(std::move(o.summary));
    for (auto& r : o.records) result.records.push_back(std::move(r));
  }
  if (!cfg.output.empty()) write_experiment(result, cfg.output);
  return result;
}

void write_experiment(const ExperimentResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<ordered_json> records, instances, timing;
  for (const auto& r : result.records) {
    records.push_back(record_to_json(r));
    ordered_json t;
    t["id"] = r.id;
    t["model"] = r.model;
    t["seconds"] = r.seconds;
    timing.push_back(std::move(t));
  }
  for (const auto& s : result.instances) instances.push_back(summary_to_json(s));
  write_lines(dir + "/records.jsonl", records);
  write_lines(dir + "/instances.jsonl", instances);
  write_lines(dir + "/timing.jsonl", timing);
}

std::string to_string(Claim c) {
  switch (c) {
    case Claim::ConvexSufficiency:
      return "convex-sufficiency";
    case Claim::AsymmetricSufficiency:
      return "asymmetric-sufficiency";
    case Claim::IncidenceConvexSufficiency:
      return "incidence-convex-sufficiency";
  }
  return "?";
}

Claim claim_from_string(const std::string& s) {
  if (s == "convex-sufficiency") return Claim::ConvexSufficiency;
  if (s == "asymmetric-sufficiency") return Claim::AsymmetricSufficiency;
  if (s == "incidence-convex-sufficiency") return Claim::IncidenceConvexSufficiency;
  throw std::invalid_argument("unknown claim '" + s + "'");
}

std::vector<std::string> claim_models(Claim c) {
  switch (c) {
    case Claim::ConvexSufficiency:
      return {"convex", "relaxation"};
    case Claim::AsymmetricSufficiency:
      return {"asymmetric"};
    case Claim::IncidenceConvexSufficiency:
      return {"incidence-convex", "incidence-lp"};
  }
  return {};
}

BreachCheck verify_breach(const InstancePair& pair, const std::string& model, const RunOptions& options) {
  BreachCheck c;
  c.result = run_model(model, pair, options);
  c.model_yes = c.result.verdict == Verdict::Yes;
  if (!c.model_yes) return c;
  try {
    c.slow_oracle_no = !subgi_oracle_exhaustive(pair).yes;
  } catch (const CapExceeded&) {
    c.slow_oracle_no = false;
  }
  c.substitution_ok = !c.result.witness.empty() && substitute_witness(pair, c.result, options);
  return c;
}

namespace {

std::string densities_swept(const ExperimentConfig& cfg) {
  std::string out;
  const std::uint64_t span = cfg.n_max - cfg.n_min + 1;
  for (std::uint64_t t = 0; t < 5; ++t) {
    if (!out.empty()) out += ", ";
    out += to_string(density_for(cfg, t * span));
  }
  return out;
}

}  // namespace

HuntResult hunt_counterexamples(ExperimentConfig cfg, Claim claim, const std::string& out_dir) {
  HuntResult hunt;
  hunt.claim = claim;
  cfg.models = claim_models(claim);
  cfg.output.clear();
  hunt.experiment = run_experiment(cfg);
  RunOptions opts = cfg.run;
  opts.parallel = false;

  for (const auto& r : hunt.experiment.records) {
    if (r.verdict != Verdict::Yes || !r.oracle || *r.oracle) continue;
    const GeneratedInstance inst = generate_instance(cfg, r.problem, r.seed);
    const BreachCheck check = verify_breach(inst.pair, r.model, opts);
    const std::string digest = witness_digest(check.result.witness);
    std::string why;
    if (!check.model_yes) why = "model verdict did not reproduce";
    else if (!check.slow_oracle_no) why = "exhaustive oracle found an embedding";
    else if (!check.substitution_ok) why = "witness failed substitution";
    else if (digest != r.witness_digest) why = "witness digest changed on rerun";
    if (!why.empty()) {
      hunt.rejected.push_back(r.id + "/" + r.model + ": " + why);
      continue;
    }
    hunt.findings.push_back({r.id, r.model, r.seed, r.problem, digest, check});
  }

  std::ostringstream rep;
  rep << "claim " << to_string(claim) << "\n";
  rep << "models:";
  for (const auto& m : cfg.models) rep << " " << m;
  rep << "\nproblems:";
  for (const auto& p : cfg.problems) rep << " " << p;
  rep << "\nsizes " << cfg.n_min << ".." << cfg.n_max << ", densities " << densities_swept(cfg) << ", seeds "
      << cfg.seed_start << ".." << cfg.seed_start + cfg.seeds - 1 << "\n";
  rep << "instances " << hunt.experiment.instances.size() << ", records " << hunt.experiment.records.size() << "\n";
  rep << "verified breaches " << hunt.findings.size() << ", rejected candidates " << hunt.rejected.size() << "\n";
  for (const auto& rj : hunt.rejected) rep << "  rejected " << rj << "\n";
  if (hunt.findings.empty()) rep << "no breach found over the swept sizes and densities\n";
  for (const auto& f : hunt.findings) rep << "  breach " << f.id << " " << f.model << "\n";
  rep << "\n" << render_text(summarize(hunt.experiment.records));
  hunt.report = rep.str();

  if (!out_dir.empty()) {
    write_experiment(hunt.experiment, out_dir);
    std::vector<ordered_json> lines;
    for (const auto& f : hunt.findings) {
      const GeneratedInstance inst = generate_instance(cfg, f.problem, f.seed);
      const std::string dir = out_dir + "/findings/" + f.id + "-" + f.model;
      std::filesystem::create_directories(dir);
      write_text_file(dir + "/pair.json", pair_to_json(inst.pair).dump(2) + "\n");
      ExperimentConfig one = cfg;
      one.problems = {f.problem};
      one.seed_start = f.seed;
      one.seeds = 1;
      one.models = {f.model};
      write_text_file(dir + "/config.json", config_to_json(one).dump(2) + "\n");
      ordered_json fj;
      fj["id"] = f.id;
      fj["claim"] = to_string(claim);
      fj["model"] = f.model;
      fj["problem"] = f.problem;
      fj["seed"] = f.seed;
      fj["model_verdict"] = "YES";
      fj["oracle_verdict"] = "NO";
      fj["slow_oracle_no"] = f.check.slow_oracle_no;
      fj["substitution_ok"] = f.check.substitution_ok;
      fj["witness_digest"] = f.witness_digest;
      fj["source"] = inst.source;
      fj["result"] = model_result_to_json(f.check.result);
      fj["witness"] = rationals_to_json(f.check.result.witness);
      write_text_file(dir + "/finding.json", fj.dump(2) + "\n");
      ordered_json line;
      line["id"] = f.id;
      line["model"] = f.model;
      line["claim"] = to_string(claim);
      line["witness_digest"] = f.witness_digest;
      line["path"] = "findings/" + f.id + "-" + f.model;
      lines.push_back(std::move(line));
    }
    write_lines(out_dir + "/findings.jsonl", lines);
    write_text_file(out_dir + "/report.txt", hunt.report);
  }
  return hunt;
}

}  // namespace bvlab
