#include <fstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "ease/hashing.hpp"
#include "ease/procsim.hpp"
#include "oracles.hpp"

using namespace ease;

namespace {

// Partitioning with the given k; k=1 is all-zero, otherwise hash of edge index.
Partitioning hashed_partitioning(const Graph& g, std::uint32_t k) {
  Partitioning p;
  p.k = k;
  p.partitioner = "external";
  p.assignment.resize(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    p.assignment[e] = k == 1 ? 0 : static_cast<std::uint32_t>(hash_u64(k, e) % k);
  return p;
}

WorkloadSpec spec_for(const std::string& id, std::uint32_t iterations = 0) {
  WorkloadSpec spec = parse_workload(id);
  if (iterations > 0) spec.iterations = iterations;
  return spec;
}

}  // namespace

TEST_SUITE("procsim") {

TEST_CASE("workload ids round-trip with their default iteration counts") {
  CHECK(parse_workload("pagerank").iterations == 10);
  CHECK(parse_workload("label_propagation").iterations == 10);
  CHECK(parse_workload("synthetic-low").iterations == 5);
  CHECK(parse_workload("synthetic-low").s == 1);
  CHECK(parse_workload("synthetic-high").s == 10);
  CHECK(parse_workload("synthetic-s3").s == 3);
  CHECK(parse_workload("cc").iterations == 0);
  CHECK(parse_workload("sssp").iterations == 0);
  CHECK(parse_workload("kcores").iterations == 0);
  CHECK_THROWS(parse_workload("bogus"));

  WorkloadSpec s;
  s.algorithm = Algorithm::synthetic;
  s.s = 3;
  CHECK(workload_id(s) == "synthetic-s3");
  s.s = 1;
  CHECK(workload_id(s) == "synthetic-low");
  s.s = 10;
  CHECK(workload_id(s) == "synthetic-high");

  CHECK(fixed_iteration(Algorithm::pagerank));
  CHECK(fixed_iteration(Algorithm::label_propagation));
  CHECK(fixed_iteration(Algorithm::synthetic));
  CHECK_FALSE(fixed_iteration(Algorithm::cc));
  CHECK_FALSE(fixed_iteration(Algorithm::sssp));
  CHECK_FALSE(fixed_iteration(Algorithm::kcores));
}

TEST_CASE("cost model artifact round-trips") {
  oracle::TempDir dir("costmodel");
  CostModel m;
  m.alpha_e = 2.0;
  m.alpha_v = 0.25;
  m.beta = 0.125;
  save_cost_model(dir.file("cm.json"), m, 4);
  const CostModel back = load_cost_model(dir.file("cm.json"));
  CHECK(back.alpha_e == 2.0);
  CHECK(back.alpha_v == 0.25);
  CHECK(back.beta == 0.125);
}

TEST_CASE("argument validation") {
  const Graph g(3, {{0, 1}, {1, 2}});
  const Partitioning p = hashed_partitioning(g, 2);
  WorkloadSpec pr = spec_for("pagerank");
  CHECK_THROWS(run_workload(g, p, pr, {}, 3));  // workers != k
  pr.iterations = 0;
  CHECK_THROWS(run_workload(g, p, pr));
  WorkloadSpec syn = spec_for("synthetic-low");
  syn.s = 0;
  CHECK_THROWS(run_workload(g, p, syn));
}

TEST_CASE("pagerank on a 3-cycle keeps uniform ranks and ignores the partitioning") {
  const Graph g(3, {{0, 1}, {1, 2}, {2, 0}});
  const auto r1 = run_workload(g, hashed_partitioning(g, 1), spec_for("pagerank"));
  const auto r3 = run_workload(g, hashed_partitioning(g, 3), spec_for("pagerank"));
  CHECK(r1.output_digest == r3.output_digest);

  const auto replica = oracle::pagerank_replica(g, 10);
  CHECK(r1.output_digest == oracle::state_digest("pagerank", 3, replica));
  for (double v : replica) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("pagerank matches an independent power iteration") {
  for (std::uint64_t seed : {4, 5}) {
    const Graph g = oracle::random_graph(seed, 60, 300);
    const auto res = run_workload(g, hashed_partitioning(g, 4), spec_for("pagerank"));
    const auto replica = oracle::pagerank_replica(g, 10);
    REQUIRE(res.output_digest == oracle::state_digest("pagerank", 60, replica));
    const auto gather = oracle::pagerank_gather(g, 10);
    for (std::size_t v = 0; v < replica.size(); ++v)
      CHECK(std::abs(replica[v] - gather[v]) <= 1e-6);
  }
}

TEST_CASE("cc labels two disjoint edges with their component minima") {
  const Graph g(4, {{0, 1}, {2, 3}});
  const auto res = run_workload(g, hashed_partitioning(g, 2), spec_for("cc"));
  const auto labels = oracle::cc_labels(g);
  CHECK(labels == std::vector<std::uint32_t>{0, 0, 2, 2});
  CHECK(res.output_digest == oracle::state_digest("cc", 4, labels));
  CHECK(res.iterations_executed == 2);  // one to settle, one to detect the fixpoint
  CHECK_FALSE(res.cost_per_iteration.has_value());
}

TEST_CASE("cc matches union-find on random graphs") {
  for (std::uint64_t seed : {6, 7}) {
    const Graph g = oracle::random_graph(seed, 80, 160);  // sparse enough to disconnect
    const auto res = run_workload(g, hashed_partitioning(g, 4), spec_for("cc"));
    CHECK(res.output_digest == oracle::state_digest("cc", 80, oracle::cc_labels(g)));
  }
}

TEST_CASE("sssp walks the path graph and never starts on a sink") {
  const Graph path(3, {{0, 1}, {1, 2}});
  const auto res = run_workload(path, hashed_partitioning(path, 2), spec_for("sssp"));
  CHECK(res.output_digest ==
        oracle::state_digest("sssp", 3, std::vector<std::uint32_t>{0, 1, 2}));

  const Graph fork(3, {{0, 1}, {0, 2}, {2, 1}});
  CHECK(sssp_source(fork, 0) == 0);  // candidates are {0, 2}
  CHECK(sssp_source(fork, 1) == 2);
  CHECK(sssp_source(fork, 5) == 2);
}

TEST_CASE("sssp distances match BFS, unreachable stays at the sentinel") {
  for (std::uint64_t seed : {8, 9}) {
    const Graph g = oracle::random_graph(seed, 70, 140);
    WorkloadSpec spec = spec_for("sssp");
    spec.seed = seed;
    const auto res = run_workload(g, hashed_partitioning(g, 4), spec);
    const auto dist = oracle::bfs_distances(g, sssp_source(g, seed));
    CHECK(res.output_digest == oracle::state_digest("sssp", 70, dist));
  }
}

TEST_CASE("kcores removes exactly the sub-threshold periphery") {
  // triangle plus pendant: threshold ceil(2*4/4) = 2 removes only the pendant
  const Graph g(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  const auto res = run_workload(g, hashed_partitioning(g, 2), spec_for("kcores"));
  const auto alive = oracle::kcore_alive(g, 2);
  CHECK(alive == std::vector<std::uint32_t>{1, 1, 1, 0});
  CHECK(res.output_digest == oracle::state_digest("kcores", 4, alive));

  for (std::uint64_t seed : {10, 11}) {
    const Graph r = oracle::random_graph(seed, 60, 240);
    const std::uint64_t kc =
        static_cast<std::uint64_t>(std::ceil(2.0 * double(r.num_edges()) / 60.0));
    const auto rr = run_workload(r, hashed_partitioning(r, 4), spec_for("kcores"));
    CHECK(rr.output_digest == oracle::state_digest("kcores", 60, oracle::kcore_alive(r, kc)));
  }
}

TEST_CASE("label propagation matches the synchronous most-frequent rule") {
  for (std::uint64_t seed : {12, 13}) {
    const Graph g = oracle::random_graph(seed, 50, 200);
    const auto res = run_workload(g, hashed_partitioning(g, 4), spec_for("label_propagation"));
    CHECK(res.output_digest ==
          oracle::state_digest("label_propagation", 50, oracle::label_prop(g, 10)));
  }
}

TEST_CASE("synthetic state follows the wrapping recurrence") {
  const Graph g = oracle::random_graph(14, 40, 160);
  for (const char* id : {"synthetic-low", "synthetic-high", "synthetic-s3"}) {
    const WorkloadSpec spec = spec_for(id);
    const auto res = run_workload(g, hashed_partitioning(g, 4), spec);
    CHECK(res.output_digest ==
          oracle::state_digest("synthetic", 40, oracle::synthetic_state(g, spec.s, 5)));
  }
}

TEST_CASE("output digest is invariant across partitionings for every workload") {
  const Graph g = oracle::random_graph(15, 50, 300);
  for (const char* id :
       {"pagerank", "cc", "sssp", "kcores", "label_propagation", "synthetic-low"}) {
    const WorkloadSpec spec = spec_for(id, fixed_iteration(parse_workload(id).algorithm) ? 3 : 0);
    const auto r1 = run_workload(g, hashed_partitioning(g, 1), spec);
    const auto r2 = run_workload(g, hashed_partitioning(g, 2), spec);
    const auto r8 = run_workload(g, hashed_partitioning(g, 8), spec);
    CHECK(r1.output_digest == r2.output_digest);
    CHECK(r2.output_digest == r8.output_digest);
    CHECK(r1.iterations_executed == r8.iterations_executed);
  }
}

TEST_CASE("hand-checked superstep cost accounting") {
  // two mutual edges split across two workers: both vertices replicated
  const Graph g(2, {{0, 1}, {1, 0}});
  Partitioning p;
  p.k = 2;
  p.assignment = {0, 1};

  auto res = run_workload(g, p, spec_for("pagerank", 1));
  // compute: 1 active edge + 0.1 * 2 active replicas on each worker
  CHECK(res.cost_compute == doctest::Approx(1.2));
  // each replicated vertex: master sends/receives 2*8, mirror 2*8 -> 32 per worker
  CHECK(res.cost_comm == doctest::Approx(0.05 * 32));
  CHECK(res.cost_total == doctest::Approx(1.2 + 1.6));
  REQUIRE(res.cost_per_iteration.has_value());
  CHECK(*res.cost_per_iteration == doctest::Approx(2.8));

  // synthetic width 10 multiplies only the message units
  auto wide = run_workload(g, p, spec_for("synthetic-high", 1));
  CHECK(wide.cost_compute == doctest::Approx(1.2));
  CHECK(wide.cost_comm == doctest::Approx(0.05 * 320));

  // no replication: a lone edge on worker 0 costs compute only
  const Graph lone(2, {{0, 1}});
  Partitioning q;
  q.k = 2;
  q.assignment = {0};
  auto quiet = run_workload(lone, q, spec_for("pagerank", 1));
  CHECK(quiet.cost_compute == doctest::Approx(1.2));
  CHECK(quiet.cost_comm == 0.0);
}

TEST_CASE("fixed-iteration costs scale linearly") {
  const Graph g = oracle::random_graph(16, 40, 200);
  const Partitioning p = hashed_partitioning(g, 4);
  const auto ten = run_workload(g, p, spec_for("pagerank", 10));
  const auto twenty = run_workload(g, p, spec_for("pagerank", 20));
  CHECK(twenty.cost_total == doctest::Approx(2.0 * ten.cost_total).epsilon(1e-12));
  CHECK(*twenty.cost_per_iteration == doctest::Approx(*ten.cost_per_iteration).epsilon(1e-12));
  CHECK(ten.cost_total ==
        doctest::Approx(10.0 * *ten.cost_per_iteration).epsilon(1e-12));
}

TEST_CASE("identical runs produce identical costs") {
  const Graph g = oracle::random_graph(17, 40, 200);
  const Partitioning p = hashed_partitioning(g, 4);
  const auto a = run_workload(g, p, spec_for("cc"));
  const auto b = run_workload(g, p, spec_for("cc"));
  CHECK(a.cost_total == b.cost_total);
  CHECK(a.cost_compute == b.cost_compute);
  CHECK(a.cost_comm == b.cost_comm);
  CHECK(a.output_digest == b.output_digest);
}

TEST_CASE("replication message volume from replica counts") {
  const Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Partitioning p;
  p.k = 2;
  p.assignment = {0, 0, 1, 1};
  // covers: v0 and v2 on both partitions, v1 and v3 on one
  CHECK(replication_message_volume(g, p, std::vector<bool>(4, true), 8.0) ==
        doctest::Approx(32.0));
  std::vector<bool> only_v0 = {true, false, false, false};
  CHECK(replication_message_volume(g, p, only_v0, 8.0) == doctest::Approx(16.0));
  Partitioning one;
  one.k = 1;
  one.assignment.assign(4, 0);
  CHECK(replication_message_volume(g, one, std::vector<bool>(4, true), 8.0) == 0.0);
  CHECK_THROWS(replication_message_volume(g, p, std::vector<bool>(3, true), 8.0));
}

TEST_CASE("processing result artifact embeds provenance and the digest") {
  oracle::TempDir dir("procres");
  const Graph g(3, {{0, 1}, {1, 2}, {2, 0}});
  const WorkloadSpec spec = spec_for("pagerank");
  const auto res = run_workload(g, hashed_partitioning(g, 2), spec);
  save_processing_result(dir.file("r.json"), res, spec, 21);
  std::ifstream in(dir.file("r.json"));
  nlohmann::json j;
  in >> j;
  for (const char* key : {"tool_version", "schema_version", "seed", "workload", "cost_total",
                          "cost_compute", "cost_comm", "cost_per_iteration", "output_digest",
                          "iterations_executed"})
    CHECK(j.contains(key));
  CHECK(j["workload"] == "pagerank");
  CHECK(j["output_digest"].get<std::string>().size() == 16);
  CHECK_FALSE(j.contains("wall_ms"));
}

}  // TEST_SUITE
