#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "ease/cli.hpp"
#include "ease/dataset.hpp"
#include "ease/graph.hpp"
#include "ease/partition.hpp"
#include "ease/predict.hpp"
#include "ease/procsim.hpp"
#include "ease/rmat.hpp"
#include "ease/select.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using ease::run_command;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t line_count(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  return j;
}

// one heavily scaled-down pipeline shared by every case in this suite
struct Pipeline {
  oracle::TempDir dir{"cli"};
  std::string graphs = dir.file("graphs");
  std::string ring = dir.file("ring.txt");
  std::string quality = dir.file("quality.csv");
  std::string runtime = dir.file("runtime.csv");
  std::string suite = dir.file("suite.json");
  std::string comparison = dir.file("comparison.json");
  int gen_rc = -1, ds_rc = -1, tr_rc = -1, sel_rc = -1;

  Pipeline() {
    gen_rc = run_command({"generate", "--preset", "small", "--scale", "8192", "--out-dir",
                          graphs, "--seed", "1", "--jobs", "1"});
    if (gen_rc == 0)
      ds_rc = run_command({"dataset", "--suite-manifest", graphs + "/manifest.csv",
                           "--partitioners", "1ds,dbh", "--ks", "4", "--runtime-k", "4",
                           "--workloads", "pagerank,cc", "--out-quality", quality,
                           "--out-runtime", runtime, "--skip-log", dir.file("skips.log"),
                           "--seed", "1", "--jobs", "1"});
    if (ds_rc == 0)
      tr_rc = run_command({"train", "--dataset", quality, "--runtime-dataset", runtime,
                           "--model", "knn", "--folds", "5", "--out", suite, "--seed", "1"});
    if (tr_rc == 0)
      sel_rc = run_command({"select", "--suite", suite, "--quality-dataset", quality,
                            "--runtime-dataset", runtime, "--goal", "e2e", "--report",
                            comparison, "--seed", "1"});
    std::ofstream r(ring);
    for (int v = 0; v < 20; ++v) r << v << ' ' << (v + 1) % 20 << '\n';
  }
};

const Pipeline& pipeline() {
  static const Pipeline p;
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate writes the full suite and its manifest") {
  const Pipeline& p = pipeline();
  REQUIRE(p.gen_rc == 0);
  REQUIRE(fs::exists(p.graphs + "/manifest.csv"));
  const auto entries = ease::read_manifest(p.graphs + "/manifest.csv");
  CHECK(entries.size() == 297);  // 33 shapes x 9 mixing-matrix combos
  for (std::size_t i = 0; i < entries.size(); i += 60) {
    CHECK(fs::exists(entries[i].path));
    CHECK(entries[i].num_edges > 0);
  }
}

TEST_CASE("dataset covers every manifest graph") {
  const Pipeline& p = pipeline();
  REQUIRE(p.ds_rc == 0);
  CHECK(line_count(p.quality) == 297 * 2 + 1);       // one k, two partitioners
  CHECK(line_count(p.runtime) == 297 * 2 * 2 + 1);   // two workloads
  CHECK(line_count(p.dir.file("skips.log")) == 0);   // k=4 is feasible everywhere
}

TEST_CASE("train produces a loadable suite") {
  const Pipeline& p = pipeline();
  REQUIRE(p.tr_rc == 0);
  const ease::PredictorSuite s = ease::load_suite(p.suite);
  CHECK(s.quality.size() == 5);
  CHECK(s.partition_time.has_value());
  CHECK(s.processing.size() == 2);
  CHECK(s.grid_model == "knn");
  CHECK_FALSE(s.choices.empty());
}

TEST_CASE("select evaluates strategies over the datasets") {
  const Pipeline& p = pipeline();
  REQUIRE(p.sel_rc == 0);
  const ease::StrategyComparison cmp = ease::load_comparison(p.comparison);
  CHECK(cmp.goal == ease::SelectionGoal::end_to_end);
  CHECK(cmp.cells.size() == 297 * 2);
  CHECK(cmp.hit_rate >= 0.0);
  CHECK(cmp.hit_rate <= 1.0);
  for (std::size_t i = 0; i < cmp.cells.size(); i += 100) {
    const ease::StrategyCell& c = cmp.cells[i];
    CHECK(c.s_o <= c.s_ps);
    CHECK(c.s_ps <= c.s_w);
  }
}

TEST_CASE("report renders the comparison in both formats") {
  const Pipeline& p = pipeline();
  REQUIRE(p.sel_rc == 0);
  const std::string text = p.dir.file("report.txt");
  CHECK(run_command({"report", "--comparison", p.comparison, "--format", "text", "--out",
                     text}) == 0);
  CHECK(slurp(text).find("strategy comparison") != std::string::npos);

  const std::string csv = p.dir.file("report.csv");
  CHECK(run_command({"report", "--comparison", p.comparison, "--format", "csv", "--out",
                     csv}) == 0);
  CHECK(line_count(csv) == 297 * 2 + 1);
  CHECK(run_command({"report", "--comparison", p.comparison, "--format", "xml"}) == 1);
}

TEST_CASE("partition and simulate agree with the library on a hand graph") {
  const Pipeline& p = pipeline();
  const std::string assign = p.dir.file("ring-assign.csv");
  const std::string metrics = p.dir.file("ring-metrics.json");
  REQUIRE(run_command({"partition", "--graph", p.ring, "--partitioner", "dbh", "--k", "4",
                       "--seed", "5", "--out", assign, "--metrics-out", metrics}) == 0);

  const ease::Graph g = ease::load_edge_list(p.ring);
  const ease::PartitionResult pr = ease::partition(g, "dbh", 4, 5, 1.05);
  const ease::QualityMetrics q = ease::compute_quality(g, pr.partitioning);
  const nlohmann::json mj = load_json(metrics);
  CHECK(mj["rf"].get<double>() == q.rf);
  CHECK(mj["k"].get<std::uint32_t>() == 4);
  CHECK(ease::load_assignment(assign) == pr.partitioning.assignment);

  const std::string result = p.dir.file("ring-sim.json");
  REQUIRE(run_command({"simulate", "--graph", p.ring, "--assignment", assign, "--algorithm",
                       "pagerank", "--k", "4", "--out", result}) == 0);
  ease::WorkloadSpec spec = ease::parse_workload("pagerank");
  const ease::ProcessingResult res = ease::run_workload(g, pr.partitioning, spec);
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << res.output_digest;
  const nlohmann::json sj = load_json(result);
  CHECK(sj["output_digest"].get<std::string>() == hex.str());
  CHECK(sj["cost_total"].get<double>() == res.cost_total);
}

TEST_CASE("properties, predict and single-graph select compose") {
  const Pipeline& p = pipeline();
  REQUIRE(p.tr_rc == 0);
  const std::string props = p.dir.file("ring-props.json");
  REQUIRE(run_command({"properties", "--graph", p.ring, "--level", "advanced", "--out",
                       props}) == 0);
  const nlohmann::json pj = load_json(props);
  CHECK(pj["mean_degree"].get<double>() == 2.0);  // every ring vertex has degree 2
  CHECK(pj["avg_triangles"].get<double>() == 0.0);

  const std::string pred = p.dir.file("prediction.json");
  REQUIRE(run_command({"predict", "--suite", p.suite, "--graph-properties", props,
                       "--partitioner", "dbh", "--k", "4", "--algorithm", "pagerank", "--out",
                       pred, "--seed", "2"}) == 0);
  const nlohmann::json dj = load_json(pred);
  CHECK(dj["quality"]["rf"].get<double>() >= 1.0);
  CHECK(dj["quality"]["rf"].get<double>() <= 4.0);
  CHECK(dj["partition_time"].get<double>() >= 0.0);
  CHECK(dj["processing"].get<double>() >= 0.0);
  CHECK(dj["end_to_end"].get<double>() ==
        dj["partition_time"].get<double>() + dj["processing"].get<double>());
  CHECK(dj["iterations"].get<int>() == 10);

  const std::string sel = p.dir.file("selection.json");
  REQUIRE(run_command({"select", "--suite", p.suite, "--graph", p.ring, "--k", "4",
                       "--algorithm", "pagerank", "--goal", "processing", "--partitioners",
                       "1ds,dbh", "--report", sel}) == 0);
  const nlohmann::json sj = load_json(sel);
  CHECK(sj["rows"].size() == 2);
  const std::string chosen = sj["chosen"].get<std::string>();
  CHECK((chosen == "1ds" || chosen == "dbh"));
  CHECK(sj["graph_id"] == "ring");
}

TEST_CASE("the seed environment variable mirrors --seed") {
  const Pipeline& p = pipeline();
  const std::string with_flag = p.dir.file("seeded-flag.json");
  const std::string with_env = p.dir.file("seeded-env.json");
  REQUIRE(run_command({"partition", "--graph", p.ring, "--partitioner", "1dd", "--k", "4",
                       "--seed", "5", "--out", p.dir.file("sf.csv"), "--metrics-out",
                       with_flag}) == 0);
  REQUIRE(setenv("EASE_SEED", "5", 1) == 0);
  const int rc = run_command({"partition", "--graph", p.ring, "--partitioner", "1dd", "--k",
                              "4", "--out", p.dir.file("se.csv"), "--metrics-out", with_env});
  unsetenv("EASE_SEED");
  REQUIRE(rc == 0);
  CHECK(slurp(with_flag) == slurp(with_env));

  REQUIRE(setenv("EASE_SEED", "not-a-number", 1) == 0);
  const int bad = run_command({"partition", "--graph", p.ring, "--partitioner", "1dd", "--k",
                               "4", "--out", p.dir.file("sx.csv")});
  unsetenv("EASE_SEED");
  CHECK(bad == 2);
}

TEST_CASE("failures map to the documented exit codes") {
  const Pipeline& p = pipeline();
  CHECK(run_command({"frobnicate"}) == 2);                       // unknown subcommand
  CHECK(run_command({"partition", "--k", "4"}) == 2);            // missing required flag
  CHECK(run_command({"partition", "--graph", p.ring, "--partitioner", "metis", "--k",
                     "4"}) == 1);                                // unknown partitioner
  CHECK(run_command({"partition", "--graph", p.dir.file("absent.txt"), "--partitioner",
                     "1ds", "--k", "4"}) == 1);                  // missing input file
  CHECK(run_command({"train", "--dataset", p.quality, "--target", "bogus", "--model",
                     "knn"}) == 1);                              // unknown target column
}

TEST_CASE("single-target training fits one bundle from a csv column") {
  const Pipeline& p = pipeline();
  REQUIRE(p.ds_rc == 0);
  const std::string model = p.dir.file("model.json");
  REQUIRE(run_command({"train", "--dataset", p.quality, "--target", "rf", "--model", "knn",
                       "--out", model, "--seed", "3"}) == 0);
  const nlohmann::json mj = load_json(model);
  CHECK(mj["target"] == "rf");
  CHECK(mj["kind"] == "knn");
  CHECK(mj.contains("choice"));
  CHECK(mj["cv_mape"].get<double>() >= 0.0);

  // processing-time column needs the workload filter
  CHECK(run_command({"train", "--dataset", p.runtime, "--target", "target", "--model",
                     "knn"}) == 1);
  REQUIRE(run_command({"train", "--dataset", p.runtime, "--target", "target", "--workload",
                       "cc", "--model", "knn", "--out", p.dir.file("cc-model.json"),
                       "--seed", "3"}) == 0);
}

}  // TEST_SUITE
