#include "ease/predict.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ease/hashing.hpp"
#include "ease/procsim.hpp"
#include "ease/version.hpp"

namespace ease {

namespace {

std::uint64_t component_seed(std::uint64_t base, const std::string& name) {
  return hash_u64(base, hash_str(name));
}

std::vector<double> quality_target_column(const std::vector<QualityRow>& rows,
                                          const std::string& target) {
  std::vector<double> y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const QualityRow& r = rows[i];
    if (target == "rf") y[i] = r.rf;
    else if (target == "b_edge") y[i] = r.b_edge;
    else if (target == "b_v") y[i] = r.b_v;
    else if (target == "b_src") y[i] = r.b_src;
    else if (target == "b_dst") y[i] = r.b_dst;
    else throw std::invalid_argument("unknown quality target: " + target);
  }
  return y;
}

// one row per (graph, partitioner, k); runtime rows repeat the partitioning
// across workloads
std::vector<RuntimeRow> dedupe_cells(const std::vector<RuntimeRow>& rows) {
  std::vector<RuntimeRow> out;
  std::set<std::tuple<std::string, std::string, std::uint32_t>> seen;
  for (const RuntimeRow& r : rows)
    if (seen.insert({r.graph_id, r.partitioner, r.k}).second) out.push_back(r);
  return out;
}

}  // namespace

ml::FeatureMatrix quality_feature_matrix(const std::vector<QualityRow>& rows,
                                         const std::string& level, bool rf_target) {
  const std::size_t n = rows.size();
  std::vector<double> md(n), de(n), is(n), os(n), tri(n), lcc(n), k(n);
  std::vector<std::string> part(n);
  for (std::size_t i = 0; i < n; ++i) {
    md[i] = rows[i].mean_degree;
    de[i] = rows[i].density;
    is[i] = rows[i].indeg_skew;
    os[i] = rows[i].outdeg_skew;
    tri[i] = rows[i].avg_triangles;
    lcc[i] = rows[i].avg_lcc;
    k[i] = static_cast<double>(rows[i].k);
    part[i] = rows[i].partitioner;
  }
  ml::FeatureMatrix x;
  x.add_numeric("mean_degree", std::move(md));
  x.add_numeric("density", std::move(de));
  x.add_numeric("indeg_skew", std::move(is));
  x.add_numeric("outdeg_skew", std::move(os));
  if (rf_target && level == "advanced") {
    x.add_numeric("avg_triangles", std::move(tri));
    x.add_numeric("avg_lcc", std::move(lcc));
  }
  x.add_numeric("k", std::move(k));
  x.add_categorical("partitioner", std::move(part));
  return x;
}

ml::FeatureMatrix partition_time_feature_matrix(const std::vector<RuntimeRow>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> ne(n), nv(n), md(n), de(n), is(n), os(n);
  std::vector<std::string> part(n);
  for (std::size_t i = 0; i < n; ++i) {
    ne[i] = static_cast<double>(rows[i].num_edges);
    nv[i] = static_cast<double>(rows[i].num_vertices);
    md[i] = rows[i].mean_degree;
    de[i] = rows[i].density;
    is[i] = rows[i].indeg_skew;
    os[i] = rows[i].outdeg_skew;
    part[i] = rows[i].partitioner;
  }
  ml::FeatureMatrix x;
  x.add_numeric("num_edges", std::move(ne));
  x.add_numeric("num_vertices", std::move(nv));
  x.add_numeric("mean_degree", std::move(md));
  x.add_numeric("density", std::move(de));
  x.add_numeric("indeg_skew", std::move(is));
  x.add_numeric("outdeg_skew", std::move(os));
  x.add_categorical("partitioner", std::move(part));
  return x;
}

ml::FeatureMatrix processing_feature_matrix(const std::vector<RuntimeRow>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> ne(n), nv(n), rf(n), be(n), bv(n), bs(n), bd(n);
  for (std::size_t i = 0; i < n; ++i) {
    ne[i] = static_cast<double>(rows[i].num_edges);
    nv[i] = static_cast<double>(rows[i].num_vertices);
    rf[i] = rows[i].rf;
    be[i] = rows[i].b_edge;
    bv[i] = rows[i].b_v;
    bs[i] = rows[i].b_src;
    bd[i] = rows[i].b_dst;
  }
  ml::FeatureMatrix x;
  x.add_numeric("num_edges", std::move(ne));
  x.add_numeric("num_vertices", std::move(nv));
  x.add_numeric("rf", std::move(rf));
  x.add_numeric("b_edge", std::move(be));
  x.add_numeric("b_v", std::move(bv));
  x.add_numeric("b_src", std::move(bs));
  x.add_numeric("b_dst", std::move(bd));
  return x;
}

PredictorSuite train_suite(const std::vector<QualityRow>& quality_rows,
                           const std::vector<RuntimeRow>& runtime_rows,
                           const TrainOptions& opt) {
  PredictorSuite suite;
  suite.feature_level = opt.feature_level;
  suite.grid_model = opt.model;
  suite.seed = opt.seed;
  suite.quality_rows = quality_rows;
  suite.runtime_rows = runtime_rows;

  const std::vector<ml::ModelSpec> grid = ml::default_grid(opt.model);
  const std::vector<std::string>& targets = opt.targets.empty() ? quality_targets() : opt.targets;

  for (const std::string& target : targets) {
    if (quality_rows.empty()) throw std::invalid_argument("quality dataset is empty");
    const bool rf_target = target == "rf";
    const std::string level = rf_target ? opt.feature_level : "basic";
    const ml::FeatureMatrix x = quality_feature_matrix(quality_rows, level, rf_target);
    const std::vector<double> y = quality_target_column(quality_rows, target);
    const std::uint64_t seed = component_seed(opt.seed, "quality:" + target);
    const ml::GridResult gr = ml::grid_search(grid, x, y, opt.folds, seed);
    suite.quality[target] =
        ml::fit_bundle(gr.best, x, y, hash_u64(seed, 1), target, level);
    suite.choices["quality:" + target] = {gr.best.id(), gr.best_mean_mape};
  }

  if (opt.train_partition_time) {
    if (runtime_rows.empty()) throw std::invalid_argument("runtime dataset is empty");
    const std::vector<RuntimeRow> cells = dedupe_cells(runtime_rows);
    const ml::FeatureMatrix x = partition_time_feature_matrix(cells);
    std::vector<double> y(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) y[i] = cells[i].partition_time_ms;
    const std::uint64_t seed = component_seed(opt.seed, "partition_time");
    const ml::GridResult gr = ml::grid_search(grid, x, y, opt.folds, seed);
    suite.partition_time =
        ml::fit_bundle(gr.best, x, y, hash_u64(seed, 1), "partition_time_ms", "basic");
    suite.choices["partition_time"] = {gr.best.id(), gr.best_mean_mape};
  }

  if (opt.train_processing) {
    if (runtime_rows.empty()) throw std::invalid_argument("runtime dataset is empty");
    std::vector<std::string> workloads;
    for (const RuntimeRow& r : runtime_rows)
      if (std::find(workloads.begin(), workloads.end(), r.workload) == workloads.end())
        workloads.push_back(r.workload);
    std::sort(workloads.begin(), workloads.end());
    for (const std::string& w : workloads) {
      std::vector<RuntimeRow> sub;
      for (const RuntimeRow& r : runtime_rows)
        if (r.workload == w) sub.push_back(r);
      const ml::FeatureMatrix x = processing_feature_matrix(sub);
      std::vector<double> y(sub.size());
      for (std::size_t i = 0; i < sub.size(); ++i) y[i] = sub[i].target;
      const std::uint64_t seed = component_seed(opt.seed, "processing:" + w);
      const ml::GridResult gr = ml::grid_search(grid, x, y, opt.folds, seed);
      suite.processing[w] = ml::fit_bundle(gr.best, x, y, hash_u64(seed, 1), w, "basic");
      suite.choices["processing:" + w] = {gr.best.id(), gr.best_mean_mape};
    }
  }
  return suite;
}

PredictorSuite train_suite(const std::vector<QualityRow>& quality_rows,
                           const std::vector<RuntimeRow>& runtime_rows,
                           const std::string& feature_level, std::uint64_t seed) {
  TrainOptions opt;
  opt.feature_level = feature_level;
  opt.seed = seed;
  return train_suite(quality_rows, runtime_rows, opt);
}

QualityMetrics predict_quality(const PredictorSuite& suite, const GraphProperties& props,
                               const std::string& partitioner, std::uint32_t k) {
  QualityRow probe;
  probe.mean_degree = props.mean_degree;
  probe.density = props.density;
  probe.indeg_skew = props.indeg_skew;
  probe.outdeg_skew = props.outdeg_skew;
  probe.avg_triangles = props.avg_triangles;
  probe.avg_lcc = props.avg_lcc;
  probe.partitioner = partitioner;
  probe.k = k;

  QualityMetrics q;
  for (const std::string& target : quality_targets()) {
    const auto it = suite.quality.find(target);
    if (it == suite.quality.end())
      throw std::invalid_argument("suite has no quality model for target " + target);
    const ml::ModelBundle& bundle = it->second;
    const ml::FeatureMatrix x =
        quality_feature_matrix({probe}, bundle.feature_level, target == "rf");
    double v = bundle.predict(x)[0];
    v = std::max(v, 1.0);
    if (target == "rf") q.rf = std::min(v, static_cast<double>(k));
    else if (target == "b_edge") q.b_edge = v;
    else if (target == "b_v") q.b_v = v;
    else if (target == "b_src") q.b_src = v;
    else q.b_dst = v;
  }
  return q;
}

double predict_partition_time(const PredictorSuite& suite, const GraphProperties& props,
                              const std::string& partitioner) {
  if (!suite.partition_time)
    throw std::invalid_argument("suite has no partitioning-time model");
  RuntimeRow probe;
  probe.num_edges = props.num_edges;
  probe.num_vertices = props.num_vertices;
  probe.mean_degree = props.mean_degree;
  probe.density = props.density;
  probe.indeg_skew = props.indeg_skew;
  probe.outdeg_skew = props.outdeg_skew;
  probe.partitioner = partitioner;
  const double v = suite.partition_time->predict(partition_time_feature_matrix({probe}))[0];
  return std::max(v, 0.0);
}

double predict_processing_time(const PredictorSuite& suite, const std::string& workload,
                               const GraphProperties& props, const QualityMetrics& quality,
                               std::uint32_t iterations) {
  const auto it = suite.processing.find(workload);
  if (it == suite.processing.end())
    throw std::invalid_argument("suite has no processing-time model for workload " + workload);
  RuntimeRow probe;
  probe.num_edges = props.num_edges;
  probe.num_vertices = props.num_vertices;
  probe.rf = quality.rf;
  probe.b_edge = quality.b_edge;
  probe.b_v = quality.b_v;
  probe.b_src = quality.b_src;
  probe.b_dst = quality.b_dst;
  const double v = std::max(it->second.predict(processing_feature_matrix({probe}))[0], 0.0);
  if (fixed_iteration(parse_workload(workload).algorithm)) {
    if (iterations < 1)
      throw std::invalid_argument("fixed-iteration workload needs iterations >= 1");
    return v * static_cast<double>(iterations);
  }
  return v;
}

PredictorSuite enrich_and_retrain(const PredictorSuite& suite,
                                  const std::vector<QualityRow>& extra_rows, std::uint64_t seed) {
  PredictorSuite out = suite;
  out.seed = seed;
  out.quality_rows.insert(out.quality_rows.end(), extra_rows.begin(), extra_rows.end());
  sort_rows(out.quality_rows);

  const std::vector<ml::ModelSpec> grid = ml::default_grid(suite.grid_model);
  for (auto& [target, bundle] : out.quality) {
    const bool rf_target = target == "rf";
    const std::string level = bundle.feature_level;
    const ml::FeatureMatrix x = quality_feature_matrix(out.quality_rows, level, rf_target);
    const std::vector<double> y = quality_target_column(out.quality_rows, target);
    const std::uint64_t cseed = component_seed(seed, "quality:" + target);
    const ml::GridResult gr = ml::grid_search(grid, x, y, 5, cseed);
    bundle = ml::fit_bundle(gr.best, x, y, hash_u64(cseed, 1), target, level);
    out.choices["quality:" + target] = {gr.best.id(), gr.best_mean_mape};
  }
  return out;
}

std::map<std::string, std::vector<HeatmapCell>> error_heatmap(
    const PredictorSuite& suite, const std::vector<QualityRow>& rows) {
  std::map<std::string, std::vector<HeatmapCell>> out;
  if (rows.empty()) return out;
  constexpr double kEps = 1e-10;
  for (const auto& [target, bundle] : suite.quality) {
    const bool rf_target = target == "rf";
    const ml::FeatureMatrix x = quality_feature_matrix(rows, bundle.feature_level, rf_target);
    const std::vector<double> pred = bundle.predict(x);
    const std::vector<double> y = quality_target_column(rows, target);
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> cells;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto& [acc, cnt] = cells[{rows[i].graph_type, rows[i].partitioner}];
      acc += std::abs(y[i] - pred[i]) / (std::abs(y[i]) + kEps);
      ++cnt;
    }
    std::vector<HeatmapCell> list;
    for (const auto& [key, val] : cells)
      list.push_back({key.first, key.second, val.second,
                      val.first / static_cast<double>(val.second)});
    out[target] = std::move(list);
  }
  return out;
}

namespace {

nlohmann::json quality_rows_to_json(const std::vector<QualityRow>& rows) {
  nlohmann::json j;
  const std::size_t n = rows.size();
  std::vector<std::string> gid(n), gtype(n), part(n);
  std::vector<std::uint64_t> nv(n), ne(n), seed(n);
  std::vector<std::uint32_t> k(n);
  std::vector<double> md(n), de(n), is(n), os(n), tri(n), lcc(n), pt(n), rf(n), be(n), bv(n),
      bs(n), bd(n);
  for (std::size_t i = 0; i < n; ++i) {
    const QualityRow& r = rows[i];
    gid[i] = r.graph_id;
    gtype[i] = r.graph_type;
    part[i] = r.partitioner;
    nv[i] = r.num_vertices;
    ne[i] = r.num_edges;
    seed[i] = r.seed;
    k[i] = r.k;
    md[i] = r.mean_degree;
    de[i] = r.density;
    is[i] = r.indeg_skew;
    os[i] = r.outdeg_skew;
    tri[i] = r.avg_triangles;
    lcc[i] = r.avg_lcc;
    pt[i] = r.partition_time_ms;
    rf[i] = r.rf;
    be[i] = r.b_edge;
    bv[i] = r.b_v;
    bs[i] = r.b_src;
    bd[i] = r.b_dst;
  }
  j["graph_id"] = gid;
  j["graph_type"] = gtype;
  j["partitioner"] = part;
  j["num_vertices"] = nv;
  j["num_edges"] = ne;
  j["seed"] = seed;
  j["k"] = k;
  j["mean_degree"] = md;
  j["density"] = de;
  j["indeg_skew"] = is;
  j["outdeg_skew"] = os;
  j["avg_triangles"] = tri;
  j["avg_lcc"] = lcc;
  j["partition_time_ms"] = pt;
  j["rf"] = rf;
  j["b_edge"] = be;
  j["b_v"] = bv;
  j["b_src"] = bs;
  j["b_dst"] = bd;
  return j;
}

std::vector<QualityRow> quality_rows_from_json(const nlohmann::json& j) {
  const auto gid = j.at("graph_id").get<std::vector<std::string>>();
  std::vector<QualityRow> rows(gid.size());
  const auto gtype = j.at("graph_type").get<std::vector<std::string>>();
  const auto part = j.at("partitioner").get<std::vector<std::string>>();
  const auto nv = j.at("num_vertices").get<std::vector<std::uint64_t>>();
  const auto ne = j.at("num_edges").get<std::vector<std::uint64_t>>();
  const auto seed = j.at("seed").get<std::vector<std::uint64_t>>();
  const auto k = j.at("k").get<std::vector<std::uint32_t>>();
  const auto md = j.at("mean_degree").get<std::vector<double>>();
  const auto de = j.at("density").get<std::vector<double>>();
  const auto is = j.at("indeg_skew").get<std::vector<double>>();
  const auto os = j.at("outdeg_skew").get<std::vector<double>>();
  const auto tri = j.at("avg_triangles").get<std::vector<double>>();
  const auto lcc = j.at("avg_lcc").get<std::vector<double>>();
  const auto pt = j.at("partition_time_ms").get<std::vector<double>>();
  const auto rf = j.at("rf").get<std::vector<double>>();
  const auto be = j.at("b_edge").get<std::vector<double>>();
  const auto bv = j.at("b_v").get<std::vector<double>>();
  const auto bs = j.at("b_src").get<std::vector<double>>();
  const auto bd = j.at("b_dst").get<std::vector<double>>();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].graph_id = gid[i];
    rows[i].graph_type = gtype[i];
    rows[i].partitioner = part[i];
    rows[i].num_vertices = nv[i];
    rows[i].num_edges = ne[i];
    rows[i].seed = seed[i];
    rows[i].k = k[i];
    rows[i].mean_degree = md[i];
    rows[i].density = de[i];
    rows[i].indeg_skew = is[i];
    rows[i].outdeg_skew = os[i];
    rows[i].avg_triangles = tri[i];
    rows[i].avg_lcc = lcc[i];
    rows[i].partition_time_ms = pt[i];
    rows[i].rf = rf[i];
    rows[i].b_edge = be[i];
    rows[i].b_v = bv[i];
    rows[i].b_src = bs[i];
    rows[i].b_dst = bd[i];
  }
  return rows;
}

nlohmann::json runtime_rows_to_json(const std::vector<RuntimeRow>& rows) {
  nlohmann::json j;
  const std::size_t n = rows.size();
  std::vector<std::string> gid(n), gtype(n), part(n), wl(n), tk(n);
  std::vector<std::uint64_t> nv(n), ne(n), seed(n);
  std::vector<std::uint32_t> k(n), iters(n);
  std::vector<double> md(n), de(n), is(n), os(n), pt(n), rf(n), be(n), bv(n), bs(n), bd(n), tg(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RuntimeRow& r = rows[i];
    gid[i] = r.graph_id;
    gtype[i] = r.graph_type;
    part[i] = r.partitioner;
    wl[i] = r.workload;
    tk[i] = r.target_kind;
    nv[i] = r.num_vertices;
    ne[i] = r.num_edges;
    seed[i] = r.seed;
    k[i] = r.k;
    iters[i] = r.iterations;
    md[i] = r.mean_degree;
    de[i] = r.density;
    is[i] = r.indeg_skew;
    os[i] = r.outdeg_skew;
    pt[i] = r.partition_time_ms;
    rf[i] = r.rf;
    be[i] = r.b_edge;
    bv[i] = r.b_v;
    bs[i] = r.b_src;
    bd[i] = r.b_dst;
    tg[i] = r.target;
  }
  j["graph_id"] = gid;
  j["graph_type"] = gtype;
  j["partitioner"] = part;
  j["workload"] = wl;
  j["target_kind"] = tk;
  j["num_vertices"] = nv;
  j["num_edges"] = ne;
  j["seed"] = seed;
  j["k"] = k;
  j["iterations"] = iters;
  j["mean_degree"] = md;
  j["density"] = de;
  j["indeg_skew"] = is;
  j["outdeg_skew"] = os;
  j["partition_time_ms"] = pt;
  j["rf"] = rf;
  j["b_edge"] = be;
  j["b_v"] = bv;
  j["b_src"] = bs;
  j["b_dst"] = bd;
  j["target"] = tg;
  return j;
}

std::vector<RuntimeRow> runtime_rows_from_json(const nlohmann::json& j) {
  const auto gid = j.at("graph_id").get<std::vector<std::string>>();
  std::vector<RuntimeRow> rows(gid.size());
  const auto gtype = j.at("graph_type").get<std::vector<std::string>>();
  const auto part = j.at("partitioner").get<std::vector<std::string>>();
  const auto wl = j.at("workload").get<std::vector<std::string>>();
  const auto tk = j.at("target_kind").get<std::vector<std::string>>();
  const auto nv = j.at("num_vertices").get<std::vector<std::uint64_t>>();
  const auto ne = j.at("num_edges").get<std::vector<std::uint64_t>>();
  const auto seed = j.at("seed").get<std::vector<std::uint64_t>>();
  const auto k = j.at("k").get<std::vector<std::uint32_t>>();
  const auto iters = j.at("iterations").get<std::vector<std::uint32_t>>();
  const auto md = j.at("mean_degree").get<std::vector<double>>();
  const auto de = j.at("density").get<std::vector<double>>();
  const auto is = j.at("indeg_skew").get<std::vector<double>>();
  const auto os = j.at("outdeg_skew").get<std::vector<double>>();
  const auto pt = j.at("partition_time_ms").get<std::vector<double>>();
  const auto rf = j.at("rf").get<std::vector<double>>();
  const auto be = j.at("b_edge").get<std::vector<double>>();
  const auto bv = j.at("b_v").get<std::vector<double>>();
  const auto bs = j.at("b_src").get<std::vector<double>>();
  const auto bd = j.at("b_dst").get<std::vector<double>>();
  const auto tg = j.at("target").get<std::vector<double>>();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].graph_id = gid[i];
    rows[i].graph_type = gtype[i];
    rows[i].partitioner = part[i];
    rows[i].workload = wl[i];
    rows[i].target_kind = tk[i];
    rows[i].num_vertices = nv[i];
    rows[i].num_edges = ne[i];
    rows[i].seed = seed[i];
    rows[i].k = k[i];
    rows[i].iterations = iters[i];
    rows[i].mean_degree = md[i];
    rows[i].density = de[i];
    rows[i].indeg_skew = is[i];
    rows[i].outdeg_skew = os[i];
    rows[i].partition_time_ms = pt[i];
    rows[i].rf = rf[i];
    rows[i].b_edge = be[i];
    rows[i].b_v = bv[i];
    rows[i].b_src = bs[i];
    rows[i].b_dst = bd[i];
    rows[i].target = tg[i];
  }
  return rows;
}

}  // namespace

void save_suite(const std::string& path, const PredictorSuite& suite) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = suite.seed;
  j["feature_level"] = suite.feature_level;
  j["grid_model"] = suite.grid_model;
  nlohmann::json choices = nlohmann::json::object();
  for (const auto& [name, c] : suite.choices)
    choices[name] = {{"spec", c.spec_id}, {"cv_mape", c.cv_mape}};
  j["choices"] = std::move(choices);
  nlohmann::json quality = nlohmann::json::object();
  for (const auto& [target, bundle] : suite.quality) quality[target] = bundle.to_json();
  j["quality"] = std::move(quality);
  j["partition_time"] = suite.partition_time ? suite.partition_time->to_json()
                                             : nlohmann::json(nullptr);
  nlohmann::json processing = nlohmann::json::object();
  for (const auto& [w, bundle] : suite.processing) processing[w] = bundle.to_json();
  j["processing"] = std::move(processing);
  j["quality_rows"] = quality_rows_to_json(suite.quality_rows);
  j["runtime_rows"] = runtime_rows_to_json(suite.runtime_rows);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

PredictorSuite load_suite(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  in >> j;
  PredictorSuite suite;
  suite.seed = j.at("seed").get<std::uint64_t>();
  suite.feature_level = j.at("feature_level").get<std::string>();
  suite.grid_model = j.at("grid_model").get<std::string>();
  for (const auto& [name, c] : j.at("choices").items())
    suite.choices[name] = {c.at("spec").get<std::string>(), c.at("cv_mape").get<double>()};
  for (const auto& [target, b] : j.at("quality").items())
    suite.quality[target] = ml::ModelBundle::from_json(b);
  if (!j.at("partition_time").is_null())
    suite.partition_time = ml::ModelBundle::from_json(j.at("partition_time"));
  for (const auto& [w, b] : j.at("processing").items())
    suite.processing[w] = ml::ModelBundle::from_json(b);
  suite.quality_rows = quality_rows_from_json(j.at("quality_rows"));
  suite.runtime_rows = runtime_rows_from_json(j.at("runtime_rows"));
  return suite;
}

}  // namespace ease
