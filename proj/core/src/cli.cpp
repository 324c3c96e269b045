#include "ease/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ease/dataset.hpp"
#include "ease/graph.hpp"
#include "ease/hashing.hpp"
#include "ease/ml.hpp"
#include "ease/partition.hpp"
#include "ease/predict.hpp"
#include "ease/procsim.hpp"
#include "ease/properties.hpp"
#include "ease/rmat.hpp"
#include "ease/select.hpp"
#include "ease/version.hpp"
#include "csv_io.hpp"
#include "internal_util.hpp"

namespace ease {
namespace {

namespace fs = std::filesystem;

constexpr std::uint32_t kUnsetU32 = 0xffffffffu;

std::uint64_t env_seed() {
  const char* s = std::getenv("EASE_SEED");
  if (!s || !*s) return 0;
  try {
    return detail::parse_u64(s);
  } catch (...) {
    throw std::runtime_error("EASE_SEED must be an unsigned integer");
  }
}

unsigned default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

void ensure_parent(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

std::string resolved(const std::string& flag, const std::string& fallback) {
  return flag.empty() ? fallback : flag;
}

// Manifest graph paths resolve as written, falling back to the manifest's own
// directory so a moved suite directory stays loadable.
std::string resolve_graph_path(const std::string& manifest, const std::string& graph) {
  if (fs::path(graph).is_absolute() || fs::exists(graph)) return graph;
  const fs::path alt = fs::path(manifest).parent_path() / fs::path(graph).filename();
  if (fs::exists(alt)) return alt.string();
  return graph;
}

std::uint32_t default_iterations(Algorithm a) {
  switch (a) {
    case Algorithm::pagerank:
    case Algorithm::label_propagation:
      return 10;
    case Algorithm::synthetic:
      return 5;
    default:
      return 0;
  }
}

WorkloadSpec make_workload(const std::string& algorithm, std::uint32_t iterations,
                           std::uint32_t s, std::uint64_t seed) {
  WorkloadSpec spec;
  spec.algorithm = parse_algorithm(algorithm);
  spec.iterations = iterations == kUnsetU32 ? default_iterations(spec.algorithm) : iterations;
  spec.s = s;
  spec.seed = seed;
  return spec;
}

struct GenerateArgs {
  std::string preset = "small";
  std::uint64_t scale = 1;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
};

int cmd_generate(const GenerateArgs& a, const PipelineConfig& cfg) {
  SuitePreset preset;
  if (a.preset == "small") preset = SuitePreset::small_suite;
  else if (a.preset == "large") preset = SuitePreset::large_suite;
  else throw std::runtime_error("unknown preset: " + a.preset + " (expected small or large)");

  const std::string out_dir = resolved(a.out_dir, cfg.graphs_dir());
  fs::create_directories(out_dir);
  const std::vector<RmatConfig> configs = rmat_training_suite(preset, a.seed, a.scale);
  std::vector<ManifestEntry> entries(configs.size());
  detail::parallel_for(configs.size(), a.jobs, [&](std::size_t i) {
    const RmatConfig& rc = configs[i];
    const Graph g = generate_rmat(rc);
    const std::string path = out_dir + "/" + rc.id + ".txt";
    save_edge_list(g, path);
    entries[i] = {rc.id,           graph_type_from_id(rc.id),
                  rc.a,            rc.b,
                  rc.c,            rc.d,
                  rc.num_vertices, rc.num_edges,
                  rc.seed,         path};
  });
  write_manifest(out_dir + "/manifest.csv", entries);
  std::cerr << "generated " << entries.size() << " graphs (preset=" << a.preset
            << " scale=" << a.scale << " seed=" << a.seed << ") into " << out_dir << "\n";
  return 0;
}

struct PropertiesArgs {
  std::string graph;
  std::string level = "advanced";
  std::uint64_t num_vertices = 0;
  std::string out;
  std::uint64_t seed = 0;
};

int cmd_properties(const PropertiesArgs& a, const PipelineConfig& cfg) {
  LoadOptions lo;
  lo.num_vertices = a.num_vertices;
  const Graph g = load_edge_list(a.graph, lo);
  const GraphProperties props = compute_properties(g, parse_feature_level(a.level));
  const std::string out = resolved(a.out, cfg.out_dir + "/properties.json");
  ensure_parent(out);
  save_properties(out, props, a.seed);
  std::cerr << "properties (" << a.level << ") for " << a.graph << " -> " << out << "\n";
  return 0;
}

struct PartitionArgs {
  std::string graph;
  std::string partitioner;
  std::uint32_t k = 4;
  std::uint64_t seed = 0;
  double alpha = 1.05;
  std::uint64_t num_vertices = 0;
  std::string out;
  std::string metrics_out;
};

int cmd_partition(const PartitionArgs& a, const PipelineConfig& cfg) {
  LoadOptions lo;
  lo.num_vertices = a.num_vertices;
  const Graph g = load_edge_list(a.graph, lo);
  const PartitionResult r = partition(g, a.partitioner, a.k, a.seed, a.alpha);
  const QualityMetrics q = compute_quality(g, r.partitioning);
  const std::string out = resolved(a.out, cfg.out_dir + "/assignment.csv");
  const std::string metrics_out = resolved(a.metrics_out, cfg.out_dir + "/metrics.json");
  ensure_parent(out);
  save_assignment(r.partitioning, out);
  ensure_parent(metrics_out);
  save_partition_metrics(metrics_out, r.partitioning, q, static_cast<double>(r.work_units));
  std::cerr << "partitioned " << g.num_edges() << " edges with " << a.partitioner
            << " k=" << a.k << " rf=" << q.rf << " work_units=" << r.work_units
            << " wall_ms=" << r.wall_ms << "\n";
  return 0;
}

struct SimulateArgs {
  std::string graph;
  std::string assignment;
  std::string algorithm;
  std::uint32_t iterations = kUnsetU32;
  std::uint32_t s = 1;
  std::uint32_t k = 0;
  std::uint64_t num_vertices = 0;
  std::uint64_t seed = 0;
  std::string cost_model;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, const PipelineConfig& cfg) {
  LoadOptions lo;
  lo.num_vertices = a.num_vertices;
  const Graph g = load_edge_list(a.graph, lo);
  Partitioning p;
  p.assignment = load_assignment(a.assignment);
  if (p.assignment.size() != g.num_edges())
    throw std::runtime_error("assignment length does not match the graph's edge count");
  std::uint32_t max_id = 0;
  for (const std::uint32_t id : p.assignment) max_id = std::max(max_id, id);
  p.k = a.k ? a.k : max_id + 1;
  if (max_id >= p.k) throw std::runtime_error("assignment contains a partition id >= k");
  p.partitioner = "external";
  p.seed = a.seed;
  const WorkloadSpec spec = make_workload(a.algorithm, a.iterations, a.s, a.seed);
  const CostModel cost = a.cost_model.empty() ? CostModel{} : load_cost_model(a.cost_model);
  const ProcessingResult r = run_workload(g, p, spec, cost);
  const std::string out = resolved(a.out, cfg.out_dir + "/result.json");
  ensure_parent(out);
  save_processing_result(out, r, spec, a.seed);
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(r.output_digest));
  std::cerr << "simulated " << workload_id(spec) << ": cost_total=" << r.cost_total
            << " iterations=" << r.iterations_executed << " digest=" << digest << "\n";
  return 0;
}

struct DatasetArgs {
  std::string suite_manifest;
  std::vector<std::string> partitioners;
  std::vector<std::uint32_t> ks;
  std::uint32_t runtime_k = 4;
  std::vector<std::string> workloads;
  std::string out_quality;
  std::string out_runtime;
  std::string skip_log;
  double alpha = 1.05;
  double alpha_e = 1.0, alpha_v = 0.1, beta = 0.05;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
};

int cmd_dataset(const DatasetArgs& a, const PipelineConfig& cfg) {
  const std::string manifest = resolved(a.suite_manifest, cfg.manifest_path());
  const std::vector<ManifestEntry> entries = read_manifest(manifest);
  if (entries.empty()) throw std::runtime_error("empty manifest: " + manifest);

  DatasetOptions opt;
  opt.partitioners = a.partitioners;
  if (!a.ks.empty()) opt.ks = a.ks;
  else opt.ks = {cfg.ks.begin(), cfg.ks.end()};
  opt.runtime_k = a.runtime_k;
  if (!a.workloads.empty()) opt.workloads = a.workloads;
  opt.cost = {a.alpha_e, a.alpha_v, a.beta};
  opt.alpha = a.alpha;
  opt.seed = a.seed;

  std::vector<std::vector<QualityRow>> quality(entries.size());
  std::vector<std::vector<RuntimeRow>> runtime(entries.size());
  std::vector<std::vector<std::string>> skips(entries.size());
  detail::parallel_for(entries.size(), a.jobs, [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    LoadOptions lo;
    lo.num_vertices = e.num_vertices;
    const Graph g = load_edge_list(resolve_graph_path(manifest, e.path), lo);
    const SuiteGraph sg{e.config_id, e.graph_type, &g};
    append_dataset_rows(sg, opt, &quality[i], &runtime[i], &skips[i]);
  });

  std::vector<QualityRow> all_quality;
  std::vector<RuntimeRow> all_runtime;
  std::vector<std::string> all_skips;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    all_quality.insert(all_quality.end(), quality[i].begin(), quality[i].end());
    all_runtime.insert(all_runtime.end(), runtime[i].begin(), runtime[i].end());
    all_skips.insert(all_skips.end(), skips[i].begin(), skips[i].end());
  }

  const std::string out_quality = resolved(a.out_quality, cfg.quality_path());
  const std::string out_runtime = resolved(a.out_runtime, cfg.runtime_path());
  ensure_parent(out_quality);
  write_quality_csv(out_quality, all_quality);
  ensure_parent(out_runtime);
  write_runtime_csv(out_runtime, all_runtime);
  if (!a.skip_log.empty()) {
    ensure_parent(a.skip_log);
    std::ofstream log(a.skip_log);
    if (!log) throw std::runtime_error("cannot open for writing: " + a.skip_log);
    for (const std::string& s : all_skips) log << s << '\n';
  } else {
    for (const std::string& s : all_skips) std::cerr << "skipped " << s << "\n";
  }
  std::cerr << "dataset: " << all_quality.size() << " quality rows -> " << out_quality << ", "
            << all_runtime.size() << " runtime rows -> " << out_runtime << " ("
            << all_skips.size() << " cells skipped)\n";
  return 0;
}

struct TrainArgs {
  std::string dataset;
  std::string runtime_dataset;
  std::string target;
  std::string workload;
  std::string features = "advanced";
  std::string model = "auto";
  std::size_t folds = 5;
  std::string out;
  std::uint64_t seed = 0;
};

std::vector<double> quality_column(const std::vector<QualityRow>& rows,
                                   const std::string& target) {
  std::vector<double> y;
  y.reserve(rows.size());
  for (const QualityRow& r : rows) {
    if (target == "rf") y.push_back(r.rf);
    else if (target == "b_edge") y.push_back(r.b_edge);
    else if (target == "b_v") y.push_back(r.b_v);
    else if (target == "b_src") y.push_back(r.b_src);
    else y.push_back(r.b_dst);
  }
  return y;
}

int cmd_train(const TrainArgs& a, const PipelineConfig& cfg) {
  if (a.target.empty()) {
    // full predictor suite from the two datasets
    const std::string qpath = resolved(a.dataset, cfg.quality_path());
    const std::string rpath = resolved(a.runtime_dataset, cfg.runtime_path());
    const std::vector<QualityRow> quality = read_quality_csv(qpath);
    const std::vector<RuntimeRow> runtime = read_runtime_csv(rpath);
    TrainOptions topt;
    topt.feature_level = a.features;
    topt.model = a.model;
    topt.folds = a.folds;
    topt.seed = a.seed;
    const PredictorSuite suite = train_suite(quality, runtime, topt);
    const std::string out = resolved(a.out, cfg.suite_path());
    ensure_parent(out);
    save_suite(out, suite);
    for (const auto& [component, choice] : suite.choices)
      std::cerr << "component " << component << ": " << choice.spec_id
                << " (cv mape=" << choice.cv_mape << ")\n";
    std::cerr << "trained suite (" << suite.quality.size() << " quality targets, "
              << suite.processing.size() << " workloads) -> " << out << "\n";
    return 0;
  }

  // single-bundle mode; --target names a dataset column
  const std::string path = resolved(a.dataset, cfg.quality_path());
  const detail::CsvTable table = detail::read_csv(path);
  if (std::find(table.header.begin(), table.header.end(), a.target) == table.header.end())
    throw std::runtime_error("target column not found: " + a.target);

  ml::FeatureMatrix x;
  std::vector<double> y;
  const auto& qt = quality_targets();
  if (std::find(qt.begin(), qt.end(), a.target) != qt.end()) {
    const std::vector<QualityRow> rows = read_quality_csv(path);
    x = quality_feature_matrix(rows, a.features, a.target == "rf");
    y = quality_column(rows, a.target);
  } else if (a.target == "partition_time_ms") {
    const std::vector<RuntimeRow> rows = read_runtime_csv(path);
    // one cell per (graph, partitioner, k); runtime rows repeat it per workload
    std::set<std::tuple<std::string, std::string, std::uint32_t>> seen;
    std::vector<RuntimeRow> cells;
    for (const RuntimeRow& r : rows)
      if (seen.insert({r.graph_id, r.partitioner, r.k}).second) cells.push_back(r);
    x = partition_time_feature_matrix(cells);
    for (const RuntimeRow& r : cells) y.push_back(r.partition_time_ms);
  } else if (a.target == "target") {
    if (a.workload.empty())
      throw std::runtime_error("--target target needs --workload to pick processing rows");
    const std::vector<RuntimeRow> rows = read_runtime_csv(path);
    std::vector<RuntimeRow> filtered;
    for (const RuntimeRow& r : rows)
      if (r.workload == a.workload) filtered.push_back(r);
    if (filtered.empty()) throw std::runtime_error("no rows for workload: " + a.workload);
    x = processing_feature_matrix(filtered);
    for (const RuntimeRow& r : filtered) y.push_back(r.target);
  } else {
    throw std::runtime_error("target not trainable: " + a.target +
                             " (expected rf, b_edge, b_v, b_src, b_dst, partition_time_ms or "
                             "target)");
  }

  const std::vector<ml::ModelSpec> grid = ml::default_grid(a.model);
  const ml::GridResult gr = ml::grid_search(grid, x, y, a.folds, a.seed);
  const ml::ModelBundle bundle =
      ml::fit_bundle(gr.best, x, y, hash_u64(a.seed, 1), a.target, a.features);
  nlohmann::json j = bundle.to_json();
  j["seed"] = a.seed;
  j["choice"] = gr.best.id();
  j["cv_mape"] = gr.best_mean_mape;
  const std::string out = resolved(a.out, cfg.model_path());
  ensure_parent(out);
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open for writing: " + out);
  f << j.dump(2) << '\n';
  f.close();
  if (!f) throw std::runtime_error("write failed: " + out);
  std::cerr << "trained " << a.target << " on " << y.size() << " rows: " << gr.best.id()
            << " (cv mape=" << gr.best_mean_mape << ") -> " << out << "\n";
  return 0;
}

struct PredictArgs {
  std::string suite;
  std::string graph_properties;
  std::string partitioner;
  std::uint32_t k = 4;
  std::string algorithm;
  std::uint32_t iterations = kUnsetU32;
  std::uint32_t s = 1;
  std::string out;
  std::uint64_t seed = 0;
};

int cmd_predict(const PredictArgs& a, const PipelineConfig& cfg) {
  const PredictorSuite suite = load_suite(resolved(a.suite, cfg.suite_path()));
  const GraphProperties props = load_properties(a.graph_properties);
  const QualityMetrics q = predict_quality(suite, props, a.partitioner, a.k);
  nlohmann::json j;
  j["partitioner"] = a.partitioner;
  j["k"] = a.k;
  j["quality"] = {{"rf", q.rf},
                  {"b_edge", q.b_edge},
                  {"b_v", q.b_v},
                  {"b_src", q.b_src},
                  {"b_dst", q.b_dst}};
  if (suite.partition_time)
    j["partition_time"] = predict_partition_time(suite, props, a.partitioner);
  if (!a.algorithm.empty()) {
    const WorkloadSpec spec = make_workload(a.algorithm, a.iterations, a.s, a.seed);
    const std::string wid = workload_id(spec);
    const double proc = predict_processing_time(suite, wid, props, q, spec.iterations);
    j["workload"] = wid;
    j["iterations"] = spec.iterations;
    j["processing"] = proc;
    if (suite.partition_time)
      j["end_to_end"] = j["partition_time"].get<double>() + proc;
  }
  std::cout << j.dump(2) << "\n";
  if (!a.out.empty()) {
    j["tool_version"] = kToolVersion;
    j["schema_version"] = kSchemaVersion;
    j["seed"] = a.seed;
    ensure_parent(a.out);
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot open for writing: " + a.out);
    f << j.dump(2) << '\n';
    f.close();
    if (!f) throw std::runtime_error("write failed: " + a.out);
  }
  return 0;
}

struct SelectArgs {
  std::string suite;
  std::string graph;
  std::uint64_t num_vertices = 0;
  std::uint32_t k = 4;
  std::string algorithm = "pagerank";
  std::uint32_t iterations = kUnsetU32;
  std::uint32_t s = 1;
  std::string goal = "processing";
  std::vector<std::string> partitioners;
  std::string quality_dataset;
  std::string runtime_dataset;
  bool random_draw = false;
  std::string report;
  std::uint64_t seed = 0;
};

int cmd_select(const SelectArgs& a, const PipelineConfig& cfg) {
  const PredictorSuite suite = load_suite(resolved(a.suite, cfg.suite_path()));
  const SelectionGoal goal = parse_goal(a.goal);

  if (!a.graph.empty()) {
    // rank partitioners for one graph
    LoadOptions lo;
    lo.num_vertices = a.num_vertices;
    const Graph g = load_edge_list(a.graph, lo);
    const GraphProperties props =
        compute_properties(g, parse_feature_level(suite.feature_level));
    const WorkloadSpec spec = make_workload(a.algorithm, a.iterations, a.s, a.seed);
    SelectionReport report =
        select_partitioner(suite, props, a.k, spec, goal, a.partitioners);
    report.graph_id = fs::path(a.graph).stem().string();
    const std::string out = resolved(a.report, cfg.selection_path());
    ensure_parent(out);
    save_selection_report(out, report, a.seed);
    std::cout << "chosen " << report.chosen << "\n";
    for (const SelectionRow& r : report.rows) {
      char line[160];
      std::snprintf(line, sizeof(line), "  %-10s objective=%.3f processing=%.3f partition=%.3f\n",
                    r.partitioner.c_str(), r.predicted_objective, r.predicted_processing,
                    r.predicted_partition_time);
      std::cout << line;
    }
    std::cerr << "selection report -> " << out << "\n";
    return 0;
  }

  // evaluation mode over measured rows
  const std::vector<QualityRow> quality =
      read_quality_csv(resolved(a.quality_dataset, cfg.quality_path()));
  const std::vector<RuntimeRow> runtime =
      read_runtime_csv(resolved(a.runtime_dataset, cfg.runtime_path()));
  EvaluateOptions eopt;
  eopt.goal = goal;
  eopt.random_single_draw = a.random_draw;
  eopt.seed = a.seed;
  const StrategyComparison cmp = evaluate_strategies_from_rows(suite, quality, runtime, eopt);
  const std::string out = resolved(a.report, cfg.comparison_path());
  ensure_parent(out);
  save_comparison(out, cmp, a.seed);
  std::cout << render_comparison_text(cmp);
  std::cerr << "comparison report -> " << out << "\n";
  return 0;
}

struct ReportArgs {
  std::string comparison;
  std::string format = "text";
  std::string out;
};

int cmd_report(const ReportArgs& a, const PipelineConfig& cfg) {
  const StrategyComparison cmp = load_comparison(resolved(a.comparison, cfg.comparison_path()));
  std::string rendered;
  if (a.format == "text") rendered = render_comparison_text(cmp);
  else if (a.format == "csv") rendered = render_comparison_csv(cmp);
  else throw std::runtime_error("unknown format: " + a.format + " (expected text or csv)");
  if (a.out.empty()) {
    std::cout << rendered;
  } else {
    ensure_parent(a.out);
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot open for writing: " + a.out);
    f << rendered;
    f.close();
    if (!f) throw std::runtime_error("write failed: " + a.out);
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
  PipelineConfig cfg;
  int status = 0;
  CLI::App app{"vertex-cut partitioner benchmark and selection pipeline"};
  app.require_subcommand(1);
  app.add_option("--out-dir", cfg.out_dir, "artifact directory (default ease-out)");

  std::uint64_t seed_default = 0;
  try {
    seed_default = env_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const unsigned jobs_default = default_jobs();

  GenerateArgs gen;
  gen.seed = seed_default;
  gen.jobs = jobs_default;
  CLI::App* gen_cmd = app.add_subcommand("generate", "generate an R-MAT training suite");
  gen_cmd->add_option("--preset", gen.preset, "small|large");
  gen_cmd->add_option("--scale", gen.scale, "divide every |V| and |E| by this factor");
  gen_cmd->add_option("--out-dir", gen.out_dir, "graph directory");
  gen_cmd->add_option("--seed", gen.seed, "base seed");
  gen_cmd->add_option("--jobs", gen.jobs, "worker threads");
  gen_cmd->callback([&]() { status = cmd_generate(gen, cfg); });

  PropertiesArgs prop;
  prop.seed = seed_default;
  CLI::App* prop_cmd = app.add_subcommand("properties", "compute graph features");
  prop_cmd->add_option("--graph", prop.graph, "edge list file")->required();
  prop_cmd->add_option("--level", prop.level, "simple|basic|advanced");
  prop_cmd->add_option("--num-vertices", prop.num_vertices,
                       "declared vertex count (keeps isolated vertices)");
  prop_cmd->add_option("--out", prop.out, "properties JSON path");
  prop_cmd->add_option("--seed", prop.seed, "seed recorded in the artifact");
  prop_cmd->callback([&]() { status = cmd_properties(prop, cfg); });

  PartitionArgs part;
  part.seed = seed_default;
  CLI::App* part_cmd = app.add_subcommand("partition", "run one partitioner");
  part_cmd->add_option("--graph", part.graph, "edge list file")->required();
  part_cmd->add_option("--partitioner", part.partitioner, "partitioner id")->required();
  part_cmd->add_option("--k", part.k, "partition count")->required();
  part_cmd->add_option("--seed", part.seed, "partitioning seed");
  part_cmd->add_option("--alpha", part.alpha, "balance bound");
  part_cmd->add_option("--num-vertices", part.num_vertices, "declared vertex count");
  part_cmd->add_option("--out", part.out, "assignment CSV path");
  part_cmd->add_option("--metrics-out", part.metrics_out, "metrics JSON path");
  part_cmd->callback([&]() { status = cmd_partition(part, cfg); });

  SimulateArgs sim;
  sim.seed = seed_default;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "simulate one workload");
  sim_cmd->add_option("--graph", sim.graph, "edge list file")->required();
  sim_cmd->add_option("--assignment", sim.assignment, "assignment CSV")->required();
  sim_cmd->add_option("--algorithm", sim.algorithm,
                      "pagerank|cc|sssp|kcores|label_propagation|synthetic")
      ->required();
  sim_cmd->add_option("--iterations", sim.iterations, "iteration count (fixed-iteration only)");
  sim_cmd->add_option("--s", sim.s, "synthetic state width");
  sim_cmd->add_option("--k", sim.k, "partition count (default: max id + 1)");
  sim_cmd->add_option("--num-vertices", sim.num_vertices, "declared vertex count");
  sim_cmd->add_option("--seed", sim.seed, "workload seed (sssp source)");
  sim_cmd->add_option("--cost-model", sim.cost_model, "cost model JSON");
  sim_cmd->add_option("--out", sim.out, "result JSON path");
  sim_cmd->callback([&]() { status = cmd_simulate(sim, cfg); });

  DatasetArgs ds;
  ds.seed = seed_default;
  ds.jobs = jobs_default;
  CLI::App* ds_cmd = app.add_subcommand("dataset", "build quality and runtime datasets");
  ds_cmd->add_option("--suite-manifest", ds.suite_manifest, "manifest CSV from generate");
  ds_cmd->add_option("--partitioners", ds.partitioners, "comma separated ids (default all)")
      ->delimiter(',');
  ds_cmd->add_option("--ks", ds.ks, "comma separated partition counts")->delimiter(',');
  ds_cmd->add_option("--runtime-k", ds.runtime_k, "k used for workload rows");
  ds_cmd->add_option("--workloads", ds.workloads, "comma separated workload ids")
      ->delimiter(',');
  ds_cmd->add_option("--out-quality", ds.out_quality, "quality CSV path");
  ds_cmd->add_option("--out-runtime", ds.out_runtime, "runtime CSV path");
  ds_cmd->add_option("--skip-log", ds.skip_log, "skipped-cell log path (default stderr)");
  ds_cmd->add_option("--alpha", ds.alpha, "balance bound");
  ds_cmd->add_option("--alpha-e", ds.alpha_e, "cost per active edge");
  ds_cmd->add_option("--alpha-v", ds.alpha_v, "cost per active vertex replica");
  ds_cmd->add_option("--beta", ds.beta, "cost per message unit");
  ds_cmd->add_option("--seed", ds.seed, "base seed");
  ds_cmd->add_option("--jobs", ds.jobs, "worker threads");
  ds_cmd->callback([&]() { status = cmd_dataset(ds, cfg); });

  TrainArgs tr;
  tr.seed = seed_default;
  CLI::App* tr_cmd = app.add_subcommand("train", "train predictors (suite or single target)");
  tr_cmd->add_option("--dataset", tr.dataset, "quality CSV (or the CSV holding --target)");
  tr_cmd->add_option("--runtime-dataset", tr.runtime_dataset, "runtime CSV (suite mode)");
  tr_cmd->add_option("--target", tr.target,
                     "dataset column to fit; omit to train the full suite");
  tr_cmd->add_option("--workload", tr.workload, "workload filter for --target target");
  tr_cmd->add_option("--features", tr.features, "simple|basic|advanced");
  tr_cmd->add_option("--model", tr.model, "auto|knn|polyridge|rf|gbt");
  tr_cmd->add_option("--folds", tr.folds, "cross-validation folds");
  tr_cmd->add_option("--out", tr.out, "output JSON path");
  tr_cmd->add_option("--seed", tr.seed, "training seed");
  tr_cmd->callback([&]() { status = cmd_train(tr, cfg); });

  PredictArgs pr;
  pr.seed = seed_default;
  CLI::App* pr_cmd = app.add_subcommand("predict", "predict quality and cost for one case");
  pr_cmd->add_option("--suite", pr.suite, "trained suite JSON");
  pr_cmd->add_option("--graph-properties", pr.graph_properties, "properties JSON")->required();
  pr_cmd->add_option("--partitioner", pr.partitioner, "partitioner id")->required();
  pr_cmd->add_option("--k", pr.k, "partition count")->required();
  pr_cmd->add_option("--algorithm", pr.algorithm, "workload algorithm (optional)");
  pr_cmd->add_option("--iterations", pr.iterations, "iteration count");
  pr_cmd->add_option("--s", pr.s, "synthetic state width");
  pr_cmd->add_option("--out", pr.out, "also write the prediction JSON here");
  pr_cmd->add_option("--seed", pr.seed, "seed recorded in the artifact");
  pr_cmd->callback([&]() { status = cmd_predict(pr, cfg); });

  SelectArgs sel;
  sel.seed = seed_default;
  CLI::App* sel_cmd =
      app.add_subcommand("select", "pick a partitioner (or evaluate the strategy)");
  sel_cmd->add_option("--suite", sel.suite, "trained suite JSON");
  sel_cmd->add_option("--graph", sel.graph, "edge list file (omit to evaluate on datasets)");
  sel_cmd->add_option("--num-vertices", sel.num_vertices, "declared vertex count");
  sel_cmd->add_option("--k", sel.k, "partition count");
  sel_cmd->add_option("--algorithm", sel.algorithm, "workload algorithm");
  sel_cmd->add_option("--iterations", sel.iterations, "iteration count");
  sel_cmd->add_option("--s", sel.s, "synthetic state width");
  sel_cmd->add_option("--goal", sel.goal, "processing|e2e");
  sel_cmd->add_option("--partitioners", sel.partitioners, "candidate ids (default all)")
      ->delimiter(',');
  sel_cmd->add_option("--quality-dataset", sel.quality_dataset, "quality CSV (evaluation mode)");
  sel_cmd->add_option("--runtime-dataset", sel.runtime_dataset, "runtime CSV (evaluation mode)");
  sel_cmd->add_flag("--random-draw", sel.random_draw,
                    "random baseline draws one partitioner instead of averaging");
  sel_cmd->add_option("--report", sel.report, "report JSON path");
  sel_cmd->add_option("--seed", sel.seed, "selection seed");
  sel_cmd->callback([&]() { status = cmd_select(sel, cfg); });

  ReportArgs rep;
  CLI::App* rep_cmd = app.add_subcommand("report", "render a strategy comparison");
  rep_cmd->add_option("--comparison", rep.comparison, "comparison JSON");
  rep_cmd->add_option("--format", rep.format, "text|csv");
  rep_cmd->add_option("--out", rep.out, "write here instead of stdout");
  rep_cmd->callback([&]() { status = cmd_report(rep, cfg); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}

int run_command(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(args);
}

}  // namespace ease
