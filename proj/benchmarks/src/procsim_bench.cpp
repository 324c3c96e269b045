// Simulator cost per workload on a fixed hash-partitioned R-MAT graph.
#include <benchmark/benchmark.h>

#include "ease/partition.hpp"
#include "ease/procsim.hpp"
#include "ease/rmat.hpp"

namespace {

const ease::Graph& bench_graph() {
  static const ease::Graph g = [] {
    ease::RmatConfig c;
    c.id = "bench";
    c.a = 0.57;
    c.b = 0.19;
    c.c = 0.19;
    c.d = 0.05;
    c.num_vertices = 1 << 13;
    c.num_edges = 1 << 16;
    c.seed = 11;
    return ease::generate_rmat(c);
  }();
  return g;
}

const ease::Partitioning& bench_partitioning() {
  static const ease::Partitioning p = ease::partition(bench_graph(), "1ds", 4, 42).partitioning;
  return p;
}

void bm_workload(benchmark::State& state, const std::string& workload) {
  const ease::Graph& g = bench_graph();
  const ease::Partitioning& p = bench_partitioning();
  const ease::WorkloadSpec spec = ease::parse_workload(workload);
  for (auto _ : state) {
    auto r = ease::run_workload(g, p, spec);
    benchmark::DoNotOptimize(r.cost_total);
  }
}

}  // namespace

int register_procsim_benches = [] {
  for (const char* w : {"pagerank", "cc", "sssp", "kcores", "label_propagation",
                        "synthetic-low", "synthetic-high"})
    benchmark::RegisterBenchmark((std::string("simulate/") + w).c_str(),
                                 [w](benchmark::State& s) { bm_workload(s, w); });
  return 0;
}();
