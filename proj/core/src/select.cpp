#include "ease/select.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include <nlohmann/json.hpp>

#include "ease/hashing.hpp"
#include "ease/properties.hpp"
#include "ease/version.hpp"
#include "internal_util.hpp"

namespace ease {

std::string goal_name(SelectionGoal goal) {
  return goal == SelectionGoal::processing ? "processing" : "end_to_end";
}

SelectionGoal parse_goal(const std::string& name) {
  if (name == "processing") return SelectionGoal::processing;
  if (name == "e2e" || name == "end_to_end") return SelectionGoal::end_to_end;
  throw std::invalid_argument("unknown goal: " + name + " (expected processing or e2e)");
}

SelectionReport select_partitioner(const PredictorSuite& suite, const GraphProperties& props,
                                   std::uint32_t k, const WorkloadSpec& workload,
                                   SelectionGoal goal, std::vector<std::string> partitioners) {
  if (partitioners.empty()) partitioners = registered_partitioners();
  std::sort(partitioners.begin(), partitioners.end());
  partitioners.erase(std::unique(partitioners.begin(), partitioners.end()), partitioners.end());

  SelectionReport report;
  report.goal = goal;
  report.workload = workload_id(workload);
  report.k = k;
  report.iterations = workload.iterations;
  for (const std::string& pid : partitioners) {
    SelectionRow row;
    row.partitioner = pid;
    const QualityMetrics q = predict_quality(suite, props, pid, k);
    row.predicted_processing =
        predict_processing_time(suite, report.workload, props, q, workload.iterations);
    if (suite.partition_time) row.predicted_partition_time = predict_partition_time(suite, props, pid);
    else if (goal == SelectionGoal::end_to_end)
      throw std::invalid_argument("end-to-end goal needs a partitioning-time model in the suite");
    row.predicted_objective = row.predicted_processing;
    if (goal == SelectionGoal::end_to_end) row.predicted_objective += row.predicted_partition_time;
    report.rows.push_back(std::move(row));
  }
  if (report.rows.empty()) throw std::invalid_argument("no partitioners to rank");
  // rows are id-sorted, so strict < resolves ties to the smallest id
  std::size_t best = 0;
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (report.rows[i].predicted_objective < report.rows[best].predicted_objective) best = i;
  report.chosen = report.rows[best].partitioner;
  return report;
}

void save_selection_report(const std::string& path, const SelectionReport& report,
                           std::uint64_t seed) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = seed;
  j["goal"] = goal_name(report.goal);
  j["graph_id"] = report.graph_id;
  j["workload"] = report.workload;
  j["k"] = report.k;
  j["iterations"] = report.iterations;
  j["chosen"] = report.chosen;
  nlohmann::json rows = nlohmann::json::array();
  for (const SelectionRow& r : report.rows) {
    rows.push_back({{"partitioner", r.partitioner},
                    {"predicted_partition_time", r.predicted_partition_time},
                    {"predicted_processing", r.predicted_processing},
                    {"predicted_objective", r.predicted_objective}});
  }
  j["rows"] = std::move(rows);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

// Per-partitioner ground truth within one (graph, workload) cell.
struct TruthEntry {
  double objective = 0.0;
  double measured_rf = 0.0;
};

double true_objective(const RuntimeRow& r, SelectionGoal goal) {
  double t = r.target;
  if (r.target_kind == "cost_per_iteration") t *= static_cast<double>(r.iterations);
  if (goal == SelectionGoal::end_to_end) t += r.partition_time_ms;
  return t;
}

GraphProperties props_from_row(const QualityRow& r, const std::string& level) {
  GraphProperties p;
  p.num_edges = r.num_edges;
  p.num_vertices = r.num_vertices;
  p.mean_degree = r.mean_degree;
  p.density = r.density;
  p.indeg_skew = r.indeg_skew;
  p.outdeg_skew = r.outdeg_skew;
  p.avg_triangles = r.avg_triangles;
  p.avg_lcc = r.avg_lcc;
  p.level = parse_feature_level(level);
  return p;
}

void finalize_aggregates(StrategyComparison& cmp) {
  const double n = static_cast<double>(cmp.cells.size());
  if (n == 0.0) return;
  double ps = 0.0, o = 0.0, srf = 0.0, r = 0.0, w = 0.0, hits = 0.0;
  for (const StrategyCell& c : cmp.cells) {
    ps += c.s_ps;
    o += c.s_o;
    srf += c.s_srf;
    r += c.s_r;
    w += c.s_w;
    hits += c.hit ? 1.0 : 0.0;
  }
  cmp.mean_ps = ps / n;
  cmp.mean_o = o / n;
  cmp.mean_srf = srf / n;
  cmp.mean_r = r / n;
  cmp.mean_w = w / n;
  cmp.hit_rate = hits / n;
  const auto pct = [](double num, double den) { return den != 0.0 ? 100.0 * num / den : 0.0; };
  cmp.ps_of_o = pct(cmp.mean_ps, cmp.mean_o);
  cmp.ps_of_srf = pct(cmp.mean_ps, cmp.mean_srf);
  cmp.ps_of_r = pct(cmp.mean_ps, cmp.mean_r);
  cmp.ps_of_w = pct(cmp.mean_ps, cmp.mean_w);
  cmp.srf_of_o = pct(cmp.mean_srf, cmp.mean_o);
}

}  // namespace

StrategyComparison evaluate_strategies_from_rows(const PredictorSuite& suite,
                                                 const std::vector<QualityRow>& quality_rows,
                                                 const std::vector<RuntimeRow>& runtime_rows,
                                                 const EvaluateOptions& opt) {
  std::map<std::string, GraphProperties> props;
  for (const QualityRow& r : quality_rows)
    props.emplace(r.graph_id, props_from_row(r, suite.feature_level));

  // ordered map keeps the cell order deterministic: (graph_id, workload)
  std::map<std::pair<std::string, std::string>, std::vector<const RuntimeRow*>> cells;
  for (const RuntimeRow& r : runtime_rows) cells[{r.graph_id, r.workload}].push_back(&r);

  StrategyComparison cmp;
  cmp.goal = opt.goal;
  cmp.random_single_draw = opt.random_single_draw;
  for (const auto& [key, rows] : cells) {
    const auto pit = props.find(key.first);
    if (pit == props.end()) continue;  // no quality row carries this graph's features

    std::map<std::string, TruthEntry> truth;
    for (const RuntimeRow* r : rows)
      truth.emplace(r->partitioner, TruthEntry{true_objective(*r, opt.goal), r->rf});
    if (truth.empty()) continue;

    std::vector<std::string> ids;
    for (const auto& [pid, entry] : truth) ids.push_back(pid);

    WorkloadSpec spec = parse_workload(key.second);
    spec.iterations = rows.front()->iterations;
    const SelectionReport report =
        select_partitioner(suite, pit->second, rows.front()->k, spec, opt.goal, ids);

    StrategyCell cell;
    cell.graph_id = key.first;
    cell.workload = key.second;
    cell.chosen = report.chosen;
    cell.s_ps = truth.at(report.chosen).objective;

    cell.optimal = ids.front();
    double sum = 0.0;
    for (const auto& [pid, entry] : truth) {
      sum += entry.objective;
      if (entry.objective < truth.at(cell.optimal).objective) cell.optimal = pid;
      if (entry.objective > cell.s_w) cell.s_w = entry.objective;
    }
    cell.s_o = truth.at(cell.optimal).objective;
    cell.hit = cell.s_ps == cell.s_o;

    std::string smallest_rf = ids.front();
    for (const auto& [pid, entry] : truth)
      if (entry.measured_rf < truth.at(smallest_rf).measured_rf) smallest_rf = pid;
    cell.s_srf = truth.at(smallest_rf).objective;

    if (opt.random_single_draw) {
      std::mt19937_64 rng(hash_pair(opt.seed, hash_str(key.first), hash_str(key.second)));
      std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
      cell.s_r = truth.at(ids[pick(rng)]).objective;
    } else {
      cell.s_r = sum / static_cast<double>(ids.size());
    }
    cmp.cells.push_back(std::move(cell));
  }
  finalize_aggregates(cmp);
  return cmp;
}

StrategyComparison evaluate_strategies(const PredictorSuite& suite,
                                       const std::vector<SuiteGraph>& graphs,
                                       const std::vector<std::string>& partitioners,
                                       const std::vector<std::string>& workloads,
                                       std::uint32_t k, SelectionGoal goal,
                                       const CostModel& cost, std::uint64_t seed) {
  DatasetOptions opt;
  opt.partitioners = partitioners;
  opt.ks = {k};
  opt.runtime_k = k;
  opt.workloads = workloads;
  opt.cost = cost;
  opt.seed = seed;
  std::vector<QualityRow> quality;
  std::vector<RuntimeRow> runtime;
  for (const SuiteGraph& sg : graphs) append_dataset_rows(sg, opt, &quality, &runtime, nullptr);
  EvaluateOptions eopt;
  eopt.goal = goal;
  eopt.seed = seed;
  return evaluate_strategies_from_rows(suite, quality, runtime, eopt);
}

void save_comparison(const std::string& path, const StrategyComparison& cmp, std::uint64_t seed) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = seed;
  j["goal"] = goal_name(cmp.goal);
  j["random_single_draw"] = cmp.random_single_draw;
  j["mean_ps"] = cmp.mean_ps;
  j["mean_o"] = cmp.mean_o;
  j["mean_srf"] = cmp.mean_srf;
  j["mean_r"] = cmp.mean_r;
  j["mean_w"] = cmp.mean_w;
  j["hit_rate"] = cmp.hit_rate;
  j["ps_of_o"] = cmp.ps_of_o;
  j["ps_of_srf"] = cmp.ps_of_srf;
  j["ps_of_r"] = cmp.ps_of_r;
  j["ps_of_w"] = cmp.ps_of_w;
  j["srf_of_o"] = cmp.srf_of_o;
  nlohmann::json cells = nlohmann::json::array();
  for (const StrategyCell& c : cmp.cells) {
    cells.push_back({{"graph_id", c.graph_id},
                     {"workload", c.workload},
                     {"s_ps", c.s_ps},
                     {"s_o", c.s_o},
                     {"s_srf", c.s_srf},
                     {"s_r", c.s_r},
                     {"s_w", c.s_w},
                     {"chosen", c.chosen},
                     {"optimal", c.optimal},
                     {"hit", c.hit}});
  }
  j["cells"] = std::move(cells);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

StrategyComparison load_comparison(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  in >> j;
  StrategyComparison cmp;
  cmp.goal = parse_goal(j.at("goal").get<std::string>());
  cmp.random_single_draw = j.at("random_single_draw").get<bool>();
  cmp.mean_ps = j.at("mean_ps").get<double>();
  cmp.mean_o = j.at("mean_o").get<double>();
  cmp.mean_srf = j.at("mean_srf").get<double>();
  cmp.mean_r = j.at("mean_r").get<double>();
  cmp.mean_w = j.at("mean_w").get<double>();
  cmp.hit_rate = j.at("hit_rate").get<double>();
  cmp.ps_of_o = j.at("ps_of_o").get<double>();
  cmp.ps_of_srf = j.at("ps_of_srf").get<double>();
  cmp.ps_of_r = j.at("ps_of_r").get<double>();
  cmp.ps_of_w = j.at("ps_of_w").get<double>();
  cmp.srf_of_o = j.at("srf_of_o").get<double>();
  for (const auto& cj : j.at("cells")) {
    StrategyCell c;
    c.graph_id = cj.at("graph_id").get<std::string>();
    c.workload = cj.at("workload").get<std::string>();
    c.s_ps = cj.at("s_ps").get<double>();
    c.s_o = cj.at("s_o").get<double>();
    c.s_srf = cj.at("s_srf").get<double>();
    c.s_r = cj.at("s_r").get<double>();
    c.s_w = cj.at("s_w").get<double>();
    c.chosen = cj.at("chosen").get<std::string>();
    c.optimal = cj.at("optimal").get<std::string>();
    c.hit = cj.at("hit").get<bool>();
    cmp.cells.push_back(std::move(c));
  }
  return cmp;
}

std::string render_comparison_text(const StrategyComparison& cmp) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "strategy comparison  goal=%s  cells=%zu  hit_rate=%.1f%%\n",
                goal_name(cmp.goal).c_str(), cmp.cells.size(), 100.0 * cmp.hit_rate);
  out << buf;
  const auto line = [&](const char* name, double mean, double pct_of_o) {
    std::snprintf(buf, sizeof(buf), "  %-12s %16.3f %10.1f%%\n", name, mean, pct_of_o);
    out << buf;
  };
  std::snprintf(buf, sizeof(buf), "  %-12s %16s %11s\n", "strategy", "mean objective",
                "vs optimal");
  out << buf;
  const auto pct = [](double num, double den) { return den != 0.0 ? 100.0 * num / den : 0.0; };
  line("optimal", cmp.mean_o, 100.0);
  line("predicted", cmp.mean_ps, cmp.ps_of_o);
  line("smallest-rf", cmp.mean_srf, cmp.srf_of_o);
  line("random", cmp.mean_r, pct(cmp.mean_r, cmp.mean_o));
  line("worst", cmp.mean_w, pct(cmp.mean_w, cmp.mean_o));
  std::snprintf(buf, sizeof(buf),
                "predicted vs smallest-rf: %.1f%%  vs random: %.1f%%  vs worst: %.1f%%\n",
                cmp.ps_of_srf, cmp.ps_of_r, cmp.ps_of_w);
  out << buf;

  // per-workload breakdown
  std::map<std::string, std::array<double, 4>> by_wl;  // ps, o, r, hits
  std::map<std::string, std::size_t> counts;
  for (const StrategyCell& c : cmp.cells) {
    auto& a = by_wl[c.workload];
    a[0] += c.s_ps;
    a[1] += c.s_o;
    a[2] += c.s_r;
    a[3] += c.hit ? 1.0 : 0.0;
    counts[c.workload]++;
  }
  if (!by_wl.empty()) {
    std::snprintf(buf, sizeof(buf), "  %-16s %6s %10s %12s %12s\n", "workload", "cells",
                  "hit_rate", "ps/optimal", "ps/random");
    out << buf;
    for (const auto& [wl, a] : by_wl) {
      const double n = static_cast<double>(counts[wl]);
      std::snprintf(buf, sizeof(buf), "  %-16s %6zu %9.1f%% %11.1f%% %11.1f%%\n", wl.c_str(),
                    counts[wl], 100.0 * a[3] / n, pct(a[0], a[1]), pct(a[0], a[2]));
      out << buf;
    }
  }
  return out.str();
}

std::string render_comparison_csv(const StrategyComparison& cmp) {
  std::ostringstream out;
  out << "graph_id,workload,s_ps,s_o,s_srf,s_r,s_w,chosen,optimal,hit\n";
  for (const StrategyCell& c : cmp.cells) {
    out << c.graph_id << ',' << c.workload << ',' << detail::format_double(c.s_ps) << ','
        << detail::format_double(c.s_o) << ',' << detail::format_double(c.s_srf) << ','
        << detail::format_double(c.s_r) << ',' << detail::format_double(c.s_w) << ',' << c.chosen
        << ',' << c.optimal << ',' << (c.hit ? '1' : '0') << '\n';
  }
  return out.str();
}

}  // namespace ease
