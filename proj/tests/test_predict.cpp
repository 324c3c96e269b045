#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ease/dataset.hpp"
#include "ease/predict.hpp"
#include "oracles.hpp"

using namespace ease;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Fixture {
  std::vector<Graph> graphs;
  std::vector<QualityRow> quality;
  std::vector<RuntimeRow> runtime;
  PredictorSuite suite;
  GraphProperties probe_props;
};

// small but real training corpus: 4 graphs x 3 partitioners, trained once
const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture fx;
    for (std::uint64_t s = 1; s <= 4; ++s)
      fx.graphs.push_back(oracle::random_graph(s, 40 + 5 * s, 120 + 30 * s));
    std::vector<SuiteGraph> suite;
    for (std::size_t i = 0; i < 4; ++i)
      suite.push_back({"g-" + std::to_string(i), i % 2 ? "rmat-c1" : "rmat-c2",
                       &fx.graphs[i]});
    DatasetOptions opt;
    opt.partitioners = {"1ds", "dbh", "crvc"};
    opt.ks = {2, 4, 8};
    opt.runtime_k = 2;
    opt.workloads = {"pagerank", "cc"};
    opt.seed = 5;
    fx.quality = build_quality_dataset(suite, opt);
    fx.runtime = build_runtime_dataset(suite, opt);

    TrainOptions topt;
    topt.model = "knn";
    topt.seed = 17;
    fx.suite = train_suite(fx.quality, fx.runtime, topt);
    fx.probe_props = compute_properties(fx.graphs[0], FeatureLevel::advanced);
    return fx;
  }();
  return f;
}

// polyridge suite over crafted rows; rf slope picks the clamp direction
PredictorSuite linear_suite(double slope) {
  std::vector<QualityRow> rows(12);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].mean_degree = static_cast<double>(i);
    rows[i].density = 0.01 * static_cast<double>(i);
    rows[i].partitioner = i % 2 ? "dbh" : "1ds";
    rows[i].k = 2 + static_cast<std::uint32_t>(i % 3);
    const double y = 20.0 + slope * static_cast<double>(i);
    rows[i].rf = y;
    rows[i].b_edge = rows[i].b_v = rows[i].b_src = rows[i].b_dst = y;
  }
  const ml::ModelSpec spec{"polyridge", {{"degree", 1.0}, {"lambda", 1e-6}}};
  PredictorSuite s;
  s.feature_level = "advanced";
  for (const std::string& t : quality_targets()) {
    const bool rf_target = t == "rf";
    const std::string level = rf_target ? "advanced" : "basic";
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) y[i] = rows[i].rf;
    s.quality[t] = ml::fit_bundle(spec, quality_feature_matrix(rows, level, rf_target), y, 0,
                                  t, level);
  }
  return s;
}

}  // namespace

TEST_SUITE("predict") {

TEST_CASE("training yields one bundle per component with the right schemas") {
  const PredictorSuite& s = fixture().suite;
  CHECK(s.quality.size() == 5);
  for (const std::string& t : quality_targets()) {
    REQUIRE(s.quality.count(t) == 1);
    CHECK(s.quality.at(t).target == t);
    CHECK(s.choices.count("quality:" + t) == 1);
  }
  CHECK(s.quality.at("rf").feature_level == "advanced");
  CHECK(s.quality.at("b_edge").feature_level == "basic");
  REQUIRE(s.partition_time.has_value());
  CHECK(s.choices.count("partition_time") == 1);
  CHECK(s.processing.size() == 2);
  CHECK(s.processing.count("pagerank") == 1);
  CHECK(s.processing.count("cc") == 1);
  CHECK(s.choices.size() == 5 + 1 + 2);
  for (const auto& [name, c] : s.choices) {
    CHECK_FALSE(c.spec_id.empty());
    CHECK(c.cv_mape >= 0.0);
  }

  // the rf schema carries clustering features and k; processing carries no k
  const auto& rf_names = s.quality.at("rf").encoder.in_names;
  CHECK(std::count(rf_names.begin(), rf_names.end(), "avg_lcc") == 1);
  CHECK(std::count(rf_names.begin(), rf_names.end(), "k") == 1);
  const auto& be_names = s.quality.at("b_edge").encoder.in_names;
  CHECK(std::count(be_names.begin(), be_names.end(), "avg_lcc") == 0);
  const auto& proc_names = s.processing.at("cc").encoder.in_names;
  CHECK(std::count(proc_names.begin(), proc_names.end(), "k") == 0);
  CHECK(std::count(proc_names.begin(), proc_names.end(), "rf") == 1);
}

TEST_CASE("suites serialize deterministically and round-trip") {
  oracle::TempDir dir("suite");
  const Fixture& fx = fixture();
  save_suite(dir.file("a.json"), fx.suite);
  save_suite(dir.file("b.json"), fx.suite);
  CHECK(slurp(dir.file("a.json")) == slurp(dir.file("b.json")));

  TrainOptions topt;
  topt.model = "knn";
  topt.seed = 17;
  save_suite(dir.file("c.json"), train_suite(fx.quality, fx.runtime, topt));
  CHECK(slurp(dir.file("a.json")) == slurp(dir.file("c.json")));

  const PredictorSuite back = load_suite(dir.file("a.json"));
  CHECK(back.quality_rows.size() == fx.suite.quality_rows.size());
  CHECK(back.runtime_rows.size() == fx.suite.runtime_rows.size());
  CHECK(back.seed == fx.suite.seed);
  CHECK(back.grid_model == "knn");
  for (const char* part : {"1ds", "dbh", "crvc"}) {
    const QualityMetrics a = predict_quality(fx.suite, fx.probe_props, part, 4);
    const QualityMetrics b = predict_quality(back, fx.probe_props, part, 4);
    CHECK(a.rf == b.rf);
    CHECK(a.b_edge == b.b_edge);
    CHECK(predict_partition_time(fx.suite, fx.probe_props, part) ==
          predict_partition_time(back, fx.probe_props, part));
  }
  CHECK(predict_processing_time(fx.suite, "cc", fx.probe_props,
                                predict_quality(fx.suite, fx.probe_props, "dbh", 2), 1) ==
        predict_processing_time(back, "cc", fx.probe_props,
                                predict_quality(back, fx.probe_props, "dbh", 2), 1));
}

TEST_CASE("quality predictions are clamped to their definitional bounds") {
  GraphProperties far;
  far.mean_degree = 1000.0;  // far outside the crafted training range

  const PredictorSuite down = linear_suite(-1.0);  // extrapolates deeply negative
  const QualityMetrics qd = predict_quality(down, far, "1ds", 4);
  CHECK(qd.rf == 1.0);
  CHECK(qd.b_edge == 1.0);
  CHECK(qd.b_v == 1.0);
  CHECK(qd.b_src == 1.0);
  CHECK(qd.b_dst == 1.0);

  const PredictorSuite up = linear_suite(1.0);  // extrapolates far above k
  const QualityMetrics qu = predict_quality(up, far, "1ds", 4);
  CHECK(qu.rf == 4.0);        // capped at k
  CHECK(qu.b_edge > 100.0);   // balances have no upper clamp

  CHECK_THROWS(predict_quality(down, far, "ne", 4));  // unseen partitioner

  PredictorSuite missing = down;
  missing.quality.erase("b_v");
  CHECK_THROWS(predict_quality(missing, far, "1ds", 4));
}

TEST_CASE("partition time predictions are nonnegative and need a model") {
  const Fixture& fx = fixture();
  for (const char* part : {"1ds", "dbh", "crvc"})
    CHECK(predict_partition_time(fx.suite, fx.probe_props, part) >= 0.0);

  TrainOptions topt;
  topt.model = "knn";
  topt.seed = 17;
  topt.train_partition_time = false;
  topt.train_processing = false;
  const PredictorSuite quality_only = train_suite(fx.quality, fx.runtime, topt);
  CHECK_THROWS(predict_partition_time(quality_only, fx.probe_props, "1ds"));
  CHECK_THROWS(predict_processing_time(quality_only, "cc", fx.probe_props, {}, 1));
}

TEST_CASE("processing time scales with iterations only for fixed-iteration workloads") {
  const Fixture& fx = fixture();
  const QualityMetrics q = predict_quality(fx.suite, fx.probe_props, "dbh", 2);
  const double pr1 = predict_processing_time(fx.suite, "pagerank", fx.probe_props, q, 1);
  const double pr7 = predict_processing_time(fx.suite, "pagerank", fx.probe_props, q, 7);
  CHECK(pr7 == 7.0 * pr1);
  CHECK_THROWS(predict_processing_time(fx.suite, "pagerank", fx.probe_props, q, 0));

  const double cc1 = predict_processing_time(fx.suite, "cc", fx.probe_props, q, 1);
  const double cc7 = predict_processing_time(fx.suite, "cc", fx.probe_props, q, 7);
  CHECK(cc1 == cc7);  // convergence workloads ignore the multiplier

  CHECK_THROWS(predict_processing_time(fx.suite, "bogus", fx.probe_props, q, 1));
}

TEST_CASE("enriching with no rows and the same seed is an identity") {
  oracle::TempDir dir("enrich");
  const Fixture& fx = fixture();
  const PredictorSuite again = enrich_and_retrain(fx.suite, {}, fx.suite.seed);
  save_suite(dir.file("orig.json"), fx.suite);
  save_suite(dir.file("again.json"), again);
  CHECK(slurp(dir.file("orig.json")) == slurp(dir.file("again.json")));
}

TEST_CASE("enriching with new rows retrains quality and keeps time models") {
  const Fixture& fx = fixture();
  std::vector<QualityRow> extra(fx.quality.begin(), fx.quality.begin() + 6);
  for (QualityRow& r : extra) r.graph_id = "fresh-" + r.graph_id;
  const PredictorSuite enriched = enrich_and_retrain(fx.suite, extra, 99);
  CHECK(enriched.quality_rows.size() == fx.suite.quality_rows.size() + 6);
  CHECK(enriched.seed == 99);
  // time predictors are carried over unchanged
  CHECK(predict_partition_time(enriched, fx.probe_props, "dbh") ==
        predict_partition_time(fx.suite, fx.probe_props, "dbh"));
  CHECK(enriched.choices.at("partition_time").spec_id ==
        fx.suite.choices.at("partition_time").spec_id);
}

TEST_CASE("error heatmap groups by graph type and partitioner") {
  const Fixture& fx = fixture();
  const auto heat = error_heatmap(fx.suite, fx.quality);
  REQUIRE(heat.size() == 5);
  for (const std::string& t : quality_targets()) {
    REQUIRE(heat.count(t) == 1);
    const auto& cells = heat.at(t);
    CHECK(cells.size() == 2 * 3);  // graph types x partitioners
    std::size_t total = 0;
    for (const HeatmapCell& c : cells) {
      total += c.count;
      CHECK(c.mape >= 0.0);
    }
    CHECK(total == fx.quality.size());
  }

  // recompute one cell against the raw bundle predictions
  const ml::ModelBundle& bundle = fx.suite.quality.at("rf");
  const HeatmapCell& cell = heat.at("rf").front();
  std::vector<QualityRow> sub;
  for (const QualityRow& r : fx.quality)
    if (r.graph_type == cell.graph_type && r.partitioner == cell.partitioner) sub.push_back(r);
  REQUIRE(sub.size() == cell.count);
  const auto pred = bundle.predict(quality_feature_matrix(sub, bundle.feature_level, true));
  std::vector<double> actual(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) actual[i] = sub[i].rf;
  CHECK(cell.mape == doctest::Approx(ml::mape(actual, pred)).epsilon(1e-12));

  CHECK(error_heatmap(fx.suite, {}).empty());
}

}  // TEST_SUITE
