#include <doctest.h>

#include <filesystem>

#include "bvlab/harness.hpp"
#include "bvlab/report.hpp"

using namespace bvlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bvlab-unit-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config round trip and validation") {
  ExperimentConfig c;
  c.problems = {"clique", "hc"};
  c.n_min = 4;
  c.n_max = 6;
  c.density_min = Rational(1, 10);
  c.seeds = 7;
  c.models = {"relaxation", "symmetric"};
  c.run.caps.symmetric_n = 5;
  c.run.generator = BasisGenerator::Exhaustive;
  const auto j = config_to_json(c);
  const auto back = config_from_json(json::parse(j.dump()));
  CHECK(config_to_json(back).dump() == j.dump());

  ExperimentConfig bad;
  bad.problems = {"tsp"};
  CHECK_THROWS(bad.validate());
  bad = {};
  bad.models = {"nope"};
  CHECK_THROWS(bad.validate());
  bad = {};
  bad.n_max = 12;
  CHECK_THROWS(bad.validate());
  bad = {};
  bad.density_max = Rational(3, 2);
  CHECK_THROWS(bad.validate());
}

TEST_CASE("zero seeds give empty output") {
  ExperimentConfig c;
  c.seeds = 0;
  c.output = scratch("empty").string();
  const auto r = run_experiment(c);
  CHECK(r.records.empty());
  CHECK(r.instances.empty());
  CHECK(read_text_file(c.output + "/records.jsonl").empty());
  fs::remove_all(c.output);
}

TEST_CASE("generation is deterministic and ids are zero padded") {
  ExperimentConfig c;
  c.problems = {"hc"};
  const auto a = generate_instance(c, "hc", 42);
  const auto b = generate_instance(c, "hc", 42);
  CHECK(a.id == "hc-s000042");
  CHECK(pair_to_json(a.pair).dump() == pair_to_json(b.pair).dump());
  CHECK(a.source.dump() == b.source.dump());
  for (const auto& p : problem_kinds()) CHECK_NOTHROW(generate_instance(c, p, 3));
}

TEST_CASE("experiment output is byte identical across runs and thread modes") {
  ExperimentConfig c;
  c.problems = {"subgi", "clique"};
  c.seeds = 12;
  c.models = {"relaxation", "convex", "cutloop"};
  c.output = scratch("det-a").string();
  run_experiment(c);
  ExperimentConfig d = c;
  d.output = scratch("det-b").string();
  d.parallel = false;
  run_experiment(d);
  for (const char* f : {"/records.jsonl", "/instances.jsonl"}) {
    const std::string x = read_text_file(c.output + f);
    CHECK_FALSE(x.empty());
    CHECK(x == read_text_file(d.output + f));
  }
  fs::remove_all(c.output);
  fs::remove_all(d.output);
}

TEST_CASE("clique experiment records") {
  ExperimentConfig c;
  c.problems = {"clique"};
  c.n_min = 3;
  c.n_max = 4;
  c.seeds = 10;
  c.models = {"relaxation", "convex", "cutloop"};
  const auto r = run_experiment(c);
  REQUIRE(r.instances.size() == 10);
  CHECK(r.records.size() == 30);
  for (const auto& s : r.instances) {
    REQUIRE(s.reduction_agrees());
    CHECK(*s.reduction_agrees());
  }
  for (std::size_t i = 0; i + 1 < r.records.size(); ++i) CHECK(r.records[i].id <= r.records[i + 1].id);
  for (const auto& rec : r.records) {
    if (rec.model == "relaxation" && rec.oracle && *rec.oracle) CHECK(rec.verdict == Verdict::Yes);
    if (rec.model == "cutloop" && rec.verdict == Verdict::Yes) CHECK(*rec.oracle);
    const auto back = record_from_json(json::parse(record_to_json(rec).dump()));
    CHECK(json::parse(record_to_json(back).dump()) == json::parse(record_to_json(rec).dump()));
  }
}

TEST_CASE("report tables") {
  VerdictRecord yes;
  yes.id = "a";
  yes.model = "convex";
  yes.verdict = Verdict::Yes;
  yes.oracle = true;
  VerdictRecord no = yes;
  no.id = "b";
  no.oracle = false;
  const auto rep = summarize({yes, no});
  REQUIRE(rep.splits.size() == 2);
  CHECK(rep.splits[0].oracle == "YES");
  CHECK(rep.splits[1].oracle == "NO");
  CHECK(rep.models[0].false_yes == 1);
  CHECK(render_text(rep).find("note: convex") != std::string::npos);
  CHECK(render_csv(rep).rfind("model,oracle,instances", 0) == 0);

  const fs::path dir = scratch("report");
  fs::create_directories(dir);
  write_text_file((dir / "r.jsonl").string(),
                  record_to_json(yes).dump() + "\n{not json\n\n" + record_to_json(no).dump() + "\n{\"id\":1}\n");
  const auto fr = report_file((dir / "r.jsonl").string());
  CHECK(fr.records == 2);
  CHECK(fr.malformed == 2);
  fs::remove_all(dir);
}

TEST_CASE("breach verification on the two-vertex example") {
  const RatMatrix swap = RatMatrix::from_rows({{0, 1}, {1, 0}});
  const InstancePair ex{swap, RatMatrix::identity(2), 2, Relation::Cover, "subgi"};
  const auto c = verify_breach(ex, "relaxation", {});
  CHECK(c.model_yes);
  CHECK(c.slow_oracle_no);
  CHECK(c.substitution_ok);
  CHECK(c.verified());
  const auto cv = verify_breach(ex, "convex", {});
  CHECK_FALSE(cv.model_yes);
  CHECK_FALSE(cv.verified());
}

TEST_CASE("hunt persists verified findings") {
  ExperimentConfig c;
  c.problems = {"subgi"};
  c.n_min = 2;
  c.n_max = 3;
  c.seeds = 40;
  const fs::path dir = scratch("hunt");
  const auto h = hunt_counterexamples(c, Claim::ConvexSufficiency, dir.string());
  CHECK(fs::exists(dir / "records.jsonl"));
  CHECK(fs::exists(dir / "findings.jsonl"));
  CHECK(read_text_file((dir / "report.txt").string()) == h.report);
  CHECK(h.report.find("claim convex-sufficiency") != std::string::npos);
  CHECK_FALSE(h.findings.empty());
  for (const auto& f : h.findings) {
    CHECK(f.check.verified());
    const fs::path fd = dir / "findings" / (f.id + "-" + f.model);
    CHECK(fs::exists(fd / "pair.json"));
    CHECK(fs::exists(fd / "finding.json"));
    // the embedded config alone reproduces the instance
    const auto cfg = config_from_json(json::parse(read_text_file((fd / "config.json").string())));
    const auto inst = generate_instance(cfg, f.problem, f.seed);
    CHECK(pair_to_json(inst.pair).dump(2) + "\n" == read_text_file((fd / "pair.json").string()));
  }
  CHECK(claim_from_string(to_string(Claim::AsymmetricSufficiency)) == Claim::AsymmetricSufficiency);
  CHECK_THROWS(claim_from_string("other"));
  fs::remove_all(dir);
}
