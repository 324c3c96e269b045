// Synchronous master/mirror processing simulator over a vertex-cut partitioning.
//
// Vertex state is updated globally in a canonical order each superstep, so the
// algorithm output (and its digest) depends only on the graph and workload,
// never on the partitioning. The partitioning drives the cost model:
//   superstep cost = max_w(alpha_e * active_edges_w + alpha_v * active_vertices_w)
//                  + beta * max_w(message units sent + received by w)
// Every active vertex with r > 1 replicas syncs via (r - 1) mirror-to-master
// and (r - 1) master-to-mirror messages of msg_size units each; msg_size is
// 8 * s for the synthetic workload and 8 otherwise.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ease/partition.hpp"

namespace ease {

enum class Algorithm { pagerank, cc, sssp, kcores, label_propagation, synthetic };

struct WorkloadSpec {
  Algorithm algorithm = Algorithm::pagerank;
  std::uint32_t iterations = 0;  // fixed-iteration algorithms only; 0 = run to fixpoint
  std::uint32_t s = 1;           // synthetic message width multiplier
  std::uint64_t seed = 0;        // sssp source selector, see sssp_source()
};

// Canonical workload ids: pagerank, cc, sssp, kcores, label_propagation,
// synthetic-low (s=1), synthetic-high (s=10), synthetic-s<N> otherwise.
std::string workload_id(const WorkloadSpec& spec);
// Parses an id back into a spec with that workload's default iterations
// (pagerank 10, label_propagation 10, synthetic 5, fixpoint algorithms 0).
WorkloadSpec parse_workload(const std::string& id);
bool fixed_iteration(Algorithm a);
std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct CostModel {
  double alpha_e = 1.0;   // per active edge on a worker
  double alpha_v = 0.1;   // per active vertex replica on a worker
  double beta = 0.05;     // per message unit (one 8-byte value = 8 units)
};

void save_cost_model(const std::string& path, const CostModel& m, std::uint64_t seed);
CostModel load_cost_model(const std::string& path);

struct ProcessingResult {
  double cost_total = 0.0;
  double cost_compute = 0.0;  // alpha_e / alpha_v term summed over supersteps
  double cost_comm = 0.0;     // beta term summed over supersteps
  std::optional<double> cost_per_iteration;  // fixed-iteration algorithms only
  std::uint32_t iterations_executed = 0;
  double wall_ms = 0.0;          // informational, never serialized to artifacts
  std::uint64_t output_digest = 0;  // partitioning-invariant state hash
};

// Simulates the workload over the partitioned graph. workers must equal p.k
// (0 means "use p.k"). Fixed-iteration algorithms require iterations >= 1.
ProcessingResult run_workload(const Graph& g, const Partitioning& p, const WorkloadSpec& spec,
                              const CostModel& cost = {}, std::uint32_t workers = 0);

// Deterministic SSSP source: the seed indexes the ascending list of vertices
// with at least one outgoing edge, so the traversal never starts on a sink.
VertexId sssp_source(const Graph& g, std::uint64_t seed);

// Total message units for one synchronization of the active set: for every
// active vertex, (replicas - 1) values up and down at msg_size units each.
double replication_message_volume(const Graph& g, const Partitioning& p,
                                  const std::vector<bool>& active, double msg_size);

void save_processing_result(const std::string& path, const ProcessingResult& r,
                            const WorkloadSpec& spec, std::uint64_t seed);

}  // namespace ease
