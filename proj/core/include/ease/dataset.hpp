// Training-data production: partition every suite graph with every
// partitioner, measure quality, simulate workloads, and read/write the two
// dataset CSV schemas.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ease/graph.hpp"
#include "ease/partition.hpp"
#include "ease/procsim.hpp"
#include "ease/properties.hpp"

namespace ease {

struct QualityRow {
  std::string graph_id;
  std::string graph_type;
  std::uint64_t num_vertices = 0, num_edges = 0;
  double mean_degree = 0.0, density = 0.0, indeg_skew = 0.0, outdeg_skew = 0.0;
  double avg_triangles = 0.0, avg_lcc = 0.0;
  std::string partitioner;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  double partition_time_ms = 0.0;                      // deterministic work units
  double rf = 0.0, b_edge = 0.0, b_v = 0.0, b_src = 0.0, b_dst = 0.0;
};

struct RuntimeRow {
  std::string graph_id;
  std::string graph_type;
  std::uint64_t num_vertices = 0, num_edges = 0;
  double mean_degree = 0.0, density = 0.0, indeg_skew = 0.0, outdeg_skew = 0.0;
  std::string partitioner;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  double partition_time_ms = 0.0;
  double rf = 0.0, b_edge = 0.0, b_v = 0.0, b_src = 0.0, b_dst = 0.0;
  std::string workload;
  std::uint32_t iterations = 0;
  std::string target_kind;                             // cost_per_iteration | cost_total
  double target = 0.0;
};

struct DatasetOptions {
  std::vector<std::string> partitioners;               // empty = all registered
  std::vector<std::uint32_t> ks = {4, 8, 16, 32, 64, 128};
  std::uint32_t runtime_k = 4;
  std::vector<std::string> workloads = {"pagerank",      "cc",
                                        "sssp",          "kcores",
                                        "synthetic-low", "synthetic-high"};
  CostModel cost;
  double alpha = 1.05;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

// Deterministic per-cell seed; every partitioning in a dataset is
// reproducible from (base seed, graph id, partitioner, k) alone.
std::uint64_t dataset_cell_seed(std::uint64_t base_seed, const std::string& graph_id,
                                const std::string& partitioner, std::uint32_t k);

// One suite graph handed to the row builders.
struct SuiteGraph {
  std::string graph_id;
  std::string graph_type;
  const Graph* graph = nullptr;
};

// Appends rows for one graph. Quality rows cover opt.ks; runtime rows cover
// opt.runtime_k with one row per workload. Infeasible cells (capacity) are
// skipped and noted in skip_log as "graph_id,partitioner,k: reason".
void append_dataset_rows(const SuiteGraph& sg, const DatasetOptions& opt,
                         std::vector<QualityRow>* quality_out,
                         std::vector<RuntimeRow>* runtime_out,
                         std::vector<std::string>* skip_log);

std::vector<QualityRow> build_quality_dataset(const std::vector<SuiteGraph>& suite,
                                              const DatasetOptions& opt,
                                              std::vector<std::string>* skip_log = nullptr);

std::vector<RuntimeRow> build_runtime_dataset(const std::vector<SuiteGraph>& suite,
                                              const DatasetOptions& opt,
                                              std::vector<std::string>* skip_log = nullptr);

// Rows are sorted by (graph_id, partitioner, k[, workload]) before writing.
void sort_rows(std::vector<QualityRow>& rows);
void sort_rows(std::vector<RuntimeRow>& rows);
void write_quality_csv(const std::string& path, std::vector<QualityRow> rows);
void write_runtime_csv(const std::string& path, std::vector<RuntimeRow> rows);
std::vector<QualityRow> read_quality_csv(const std::string& path);
std::vector<RuntimeRow> read_runtime_csv(const std::string& path);

}  // namespace ease
