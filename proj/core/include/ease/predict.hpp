// The three trained predictor components (partitioning quality, partitioning
// time, processing time), the enrichment workflow, and per-(graph type x
// partitioner) error reporting.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ease/dataset.hpp"
#include "ease/ml.hpp"
#include "ease/partition.hpp"
#include "ease/properties.hpp"

namespace ease {

inline const std::vector<std::string>& quality_targets() {
  static const std::vector<std::string> t = {"rf", "b_edge", "b_v", "b_src", "b_dst"};
  return t;
}

struct ComponentChoice {
  std::string spec_id;
  double cv_mape = 0.0;
};

struct PredictorSuite {
  std::string feature_level = "advanced";              // used by the rf target only
  std::string grid_model = "auto";                     // grid family used for every component
  std::uint64_t seed = 0;
  std::map<std::string, ml::ModelBundle> quality;      // one bundle per quality target
  std::optional<ml::ModelBundle> partition_time;
  std::map<std::string, ml::ModelBundle> processing;   // workload id -> bundle
  std::map<std::string, ComponentChoice> choices;      // component -> grid-search winner
  // training rows are embedded so enrichment can retrain from scratch
  std::vector<QualityRow> quality_rows;
  std::vector<RuntimeRow> runtime_rows;
};

struct TrainOptions {
  std::string feature_level = "advanced";
  std::string model = "auto";                          // grid family, or "auto" for all
  std::size_t folds = 5;
  std::vector<std::string> targets;                    // empty = all quality targets
  bool train_partition_time = true;
  bool train_processing = true;
  std::uint64_t seed = 0;
};

PredictorSuite train_suite(const std::vector<QualityRow>& quality_rows,
                           const std::vector<RuntimeRow>& runtime_rows,
                           const TrainOptions& opt);
PredictorSuite train_suite(const std::vector<QualityRow>& quality_rows,
                           const std::vector<RuntimeRow>& runtime_rows,
                           const std::string& feature_level, std::uint64_t seed);

// Feature-matrix builders shared by training, prediction and tests. The
// processing schema deliberately has no k column; feeding one is rejected by
// the encoder's schema check.
ml::FeatureMatrix quality_feature_matrix(const std::vector<QualityRow>& rows,
                                         const std::string& level, bool rf_target);
ml::FeatureMatrix partition_time_feature_matrix(const std::vector<RuntimeRow>& rows);
ml::FeatureMatrix processing_feature_matrix(const std::vector<RuntimeRow>& rows);

// Predicted metrics are clamped to their definitional bounds: every metric
// >= 1 and rf <= k.
QualityMetrics predict_quality(const PredictorSuite& suite, const GraphProperties& props,
                               const std::string& partitioner, std::uint32_t k);

double predict_partition_time(const PredictorSuite& suite, const GraphProperties& props,
                              const std::string& partitioner);

// Fixed-iteration workloads: predicted per-iteration cost times `iterations`;
// convergence workloads ignore the argument and return predicted total cost.
double predict_processing_time(const PredictorSuite& suite, const std::string& workload,
                               const GraphProperties& props, const QualityMetrics& quality,
                               std::uint32_t iterations);

// Union of stored and extra quality rows, then a full quality retrain with
// the original grids. Time predictors are carried over unchanged.
PredictorSuite enrich_and_retrain(const PredictorSuite& suite,
                                  const std::vector<QualityRow>& extra_rows, std::uint64_t seed);

struct HeatmapCell {
  std::string graph_type;
  std::string partitioner;
  std::size_t count = 0;
  double mape = 0.0;
};

// MAPE per (graph type, partitioner) cell per quality target; cells with no
// test rows are absent from the result.
std::map<std::string, std::vector<HeatmapCell>> error_heatmap(const PredictorSuite& suite,
                                                              const std::vector<QualityRow>& rows);

void save_suite(const std::string& path, const PredictorSuite& suite);
PredictorSuite load_suite(const std::string& path);

}  // namespace ease
