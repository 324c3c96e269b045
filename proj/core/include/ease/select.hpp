// Partitioner selection on predicted objectives and the strategy benchmark
// (predictor-based choice vs optimal/worst/random/smallest-rf baselines).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ease/dataset.hpp"
#include "ease/predict.hpp"
#include "ease/procsim.hpp"

namespace ease {

enum class SelectionGoal { processing, end_to_end };

std::string goal_name(SelectionGoal goal);
SelectionGoal parse_goal(const std::string& name);   // "processing" | "e2e" | "end_to_end"

struct SelectionRow {
  std::string partitioner;
  double predicted_partition_time = 0.0;
  double predicted_processing = 0.0;
  double predicted_objective = 0.0;
};

struct SelectionReport {
  SelectionGoal goal = SelectionGoal::processing;
  std::string graph_id;
  std::string workload;
  std::uint32_t k = 0;
  std::uint32_t iterations = 0;
  std::vector<SelectionRow> rows;                    // ascending partitioner id
  std::string chosen;                                // argmin objective, ties -> smallest id
};

// Ranks `partitioners` (default: all registered) by predicted objective.
SelectionReport select_partitioner(const PredictorSuite& suite, const GraphProperties& props,
                                   std::uint32_t k, const WorkloadSpec& workload,
                                   SelectionGoal goal,
                                   std::vector<std::string> partitioners = {});

void save_selection_report(const std::string& path, const SelectionReport& report,
                           std::uint64_t seed);

struct StrategyCell {
  std::string graph_id;
  std::string workload;
  double s_ps = 0.0, s_o = 0.0, s_srf = 0.0, s_r = 0.0, s_w = 0.0;
  std::string chosen;                                // selector's pick
  std::string optimal;                               // true argmin
  bool hit = false;                                  // chosen achieves the optimal objective
};

struct StrategyComparison {
  SelectionGoal goal = SelectionGoal::processing;
  bool random_single_draw = false;
  std::vector<StrategyCell> cells;
  double mean_ps = 0.0, mean_o = 0.0, mean_srf = 0.0, mean_r = 0.0, mean_w = 0.0;
  double hit_rate = 0.0;
  // ratios of mean objectives, in percent
  double ps_of_o = 0.0, ps_of_srf = 0.0, ps_of_r = 0.0, ps_of_w = 0.0, srf_of_o = 0.0;
};

struct EvaluateOptions {
  SelectionGoal goal = SelectionGoal::processing;
  // S_R is the expectation over partitioners by default; this switches it to
  // one seeded uniform draw per cell.
  bool random_single_draw = false;
  std::uint64_t seed = 0;
};

// Ground truth from existing measured rows: one cell per (graph, workload),
// true objective per partitioner taken from the runtime rows (partition time
// plus processing cost for the end-to-end goal). Quality rows supply graph
// properties for the predictor; graphs without them are skipped.
StrategyComparison evaluate_strategies_from_rows(const PredictorSuite& suite,
                                                 const std::vector<QualityRow>& quality_rows,
                                                 const std::vector<RuntimeRow>& runtime_rows,
                                                 const EvaluateOptions& opt);

// Measures ground truth directly: partitions every test graph with every
// partitioner and simulates every workload, then delegates to the row-based
// evaluator.
StrategyComparison evaluate_strategies(const PredictorSuite& suite,
                                       const std::vector<SuiteGraph>& graphs,
                                       const std::vector<std::string>& partitioners,
                                       const std::vector<std::string>& workloads,
                                       std::uint32_t k, SelectionGoal goal,
                                       const CostModel& cost, std::uint64_t seed);

void save_comparison(const std::string& path, const StrategyComparison& cmp, std::uint64_t seed);
StrategyComparison load_comparison(const std::string& path);

std::string render_comparison_text(const StrategyComparison& cmp);
std::string render_comparison_csv(const StrategyComparison& cmp);

}  // namespace ease
