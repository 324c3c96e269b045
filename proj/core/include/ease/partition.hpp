// Vertex-cut edge partitioners and partitioning quality metrics.
//
// Catalog (ids as registered):
//   1ds, 1dd   hash of source / destination vertex
//   crvc       hash of the canonical (min, max) endpoint pair
//   2d         grid partitioning over a rows x cols factorization of k
//   dbh        hash of the endpoint with the smaller total degree
//   hdrf-1.0, hdrf-10, hdrf-100   highest-degree-replicated-first scoring
//   2ps        two-phase: streaming clustering, then cluster-aware placement
//   ne         neighborhood expansion with seeded restarts
// All hashing goes through ease/hashing.hpp seeded by the partition seed, so
// assignments are reproducible bit for bit.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ease/graph.hpp"

namespace ease {

struct Partitioning {
  std::uint32_t k = 0;
  double alpha = 1.05;
  std::string partitioner;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> assignment;  // one partition id per edge, in edge order
};

// rf is the mean number of partitions covering a vertex; the four balance
// metrics are max/avg over per-partition {edge count, cover, source cover,
// destination cover} sizes.
struct QualityMetrics {
  double rf = 0.0;
  double b_edge = 0.0;
  double b_v = 0.0;
  double b_src = 0.0;
  double b_dst = 0.0;
};

struct PartitionResult {
  Partitioning partitioning;
  double wall_ms = 0.0;        // measured wall clock, informational only
  std::uint64_t work_units = 0;  // deterministic count of elementary steps
};

// Degree and incidence structures shared across repeated partition calls on
// the same graph (k sweeps, partitioner sweeps).
struct GraphContext {
  std::vector<std::uint32_t> out_deg;
  std::vector<std::uint32_t> in_deg;
  std::vector<std::uint32_t> tot_deg;
  IncidenceView incidence;
  UndirectedView undirected;
};

GraphContext build_graph_context(const Graph& g);

std::vector<std::string> registered_partitioners();
bool is_registered_partitioner(const std::string& id);

// Runs the named partitioner. Requires 2 <= k <= |E|, alpha >= 1 and
// alpha*|E|/k >= 1. hdrf-*, 2ps and ne never exceed ceil(alpha*|E|/k) edges
// per partition; the stateless hash family is exempt from the bound.
PartitionResult partition(const Graph& g, const std::string& partitioner_id, std::uint32_t k,
                          std::uint64_t seed, double alpha = 1.05);
PartitionResult partition(const Graph& g, const GraphContext& ctx, const std::string& partitioner_id,
                          std::uint32_t k, std::uint64_t seed, double alpha = 1.05);

// Exact metrics from the cover sets of the given assignment. Vertices with no
// incident edge count toward |V| but belong to no cover set.
QualityMetrics compute_quality(const Graph& g, const Partitioning& p);

// Per-vertex replica sets as k-bit rows (words = ceil(k/64) per vertex), plus
// per-partition loads. Shared by quality metrics and the processing simulator.
struct CoverIndex {
  std::uint32_t k = 0;
  std::uint32_t words = 0;
  std::vector<std::uint64_t> bits;       // |V| * words
  std::vector<std::uint64_t> edge_load;  // per partition
  std::span<const std::uint64_t> row(VertexId v) const {
    return {bits.data() + static_cast<std::size_t>(v) * words, words};
  }
  std::uint32_t replicas(VertexId v) const;
  std::uint32_t master(VertexId v) const;  // lowest covering partition, k if none
};

CoverIndex build_cover_index(const Graph& g, const Partitioning& p);

// assignment artifact: one partition id per line, edge order, no comments.
void save_assignment(const Partitioning& p, const std::string& path);
std::vector<std::uint32_t> load_assignment(const std::string& path);

// metrics artifact with {tool_version, schema_version, seed} embedded.
void save_partition_metrics(const std::string& path, const Partitioning& p,
                            const QualityMetrics& q, double partition_time_ms);

}  // namespace ease
