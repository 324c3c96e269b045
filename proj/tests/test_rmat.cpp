#include <set>

#include "doctest.h"
#include "ease/properties.hpp"
#include "ease/rmat.hpp"
#include "oracles.hpp"

using namespace ease;

namespace {

RmatConfig config(double a, double b, double c, double d, std::uint64_t v, std::uint64_t e,
                  std::uint64_t seed) {
  RmatConfig cfg;
  cfg.id = "test";
  cfg.a = a;
  cfg.b = b;
  cfg.c = c;
  cfg.d = d;
  cfg.num_vertices = v;
  cfg.num_edges = e;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("rmat") {

TEST_CASE("validate rejects bad probabilities and sizes") {
  CHECK_NOTHROW(config(0.25, 0.25, 0.25, 0.25, 8, 4, 1).validate());
  CHECK_THROWS_AS(config(0.5, 0.25, 0.25, 0.25, 8, 4, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(config(-0.1, 0.5, 0.35, 0.25, 8, 4, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(config(0.25, 0.25, 0.25, 0.25, 0, 4, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(config(0.25, 0.25, 0.25, 0.25, 8, 0, 1).validate(), std::invalid_argument);
}

TEST_CASE("generation is deterministic and respects the requested shape") {
  const auto cfg = config(0.45, 0.16, 0.34, 0.05, 1 << 10, 5000, 42);
  const Graph g1 = generate_rmat(cfg);
  const Graph g2 = generate_rmat(cfg);
  CHECK(g1.num_vertices() == cfg.num_vertices);
  CHECK(g1.num_edges() == cfg.num_edges);
  REQUIRE(g1.num_edges() == g2.num_edges());
  for (std::size_t e = 0; e < g1.num_edges(); ++e) CHECK(g1.edges()[e] == g2.edges()[e]);
}

TEST_CASE("non-power-of-two vertex counts stay inside the id range") {
  const auto cfg = config(0.55, 0.06, 0.34, 0.05, 600, 3000, 9);
  const Graph g = generate_rmat(cfg);
  CHECK(g.num_vertices() == 600);
  CHECK(g.num_edges() == 3000);
  for (const Edge& e : g.edges()) {
    CHECK(e.src < 600);
    CHECK(e.dst < 600);
  }
}

TEST_CASE("skew tracks the a parameter") {
  // combo C4 (a=0.60) concentrates edges harder than C1 (a=0.35)
  const Graph c1 = generate_rmat(config(0.35, 0.26, 0.34, 0.05, 1 << 10, 10000, 3));
  const Graph c4 = generate_rmat(config(0.60, 0.01, 0.34, 0.05, 1 << 10, 10000, 3));
  const auto p1 = compute_properties(c1, FeatureLevel::basic);
  const auto p4 = compute_properties(c4, FeatureLevel::basic);
  CHECK(p4.indeg_skew > p1.indeg_skew);

  const Graph flat = generate_rmat(config(0.25, 0.25, 0.25, 0.25, 1 << 10, 10000, 3));
  const auto pf = compute_properties(flat, FeatureLevel::basic);
  CHECK(std::abs(pf.indeg_skew) < 0.5);
}

TEST_CASE("parameter combos: nine rows, d fixed at 0.05, rows sum to 1") {
  const auto& combos = rmat_param_combos();
  REQUIRE(combos.size() == 9);
  for (const auto& row : combos) {
    CHECK(row[3] == doctest::Approx(0.05));
    CHECK(row[0] + row[1] + row[2] + row[3] == doctest::Approx(1.0));
  }
}

TEST_CASE("training suites have the documented cardinalities") {
  const auto small = rmat_training_suite(SuitePreset::small_suite, 7);
  const auto large = rmat_training_suite(SuitePreset::large_suite, 7);
  CHECK(small.size() == 297);
  CHECK(large.size() == 180);
  CHECK(rmat_small_shapes().size() == 33);
  CHECK(rmat_large_shapes().size() == 20);

  std::set<std::pair<std::uint64_t, std::uint64_t>> shapes;
  std::set<std::string> ids;
  for (const auto& cfg : small) {
    CHECK(cfg.d == doctest::Approx(0.05));
    CHECK_NOTHROW(cfg.validate());
    shapes.insert({cfg.num_vertices, cfg.num_edges});
    ids.insert(cfg.id);
  }
  CHECK(shapes.size() == 33);
  CHECK(ids.size() == 297);  // ids are unique
}

TEST_CASE("scale divides sizes and floors at 2 vertices / 1 edge") {
  const auto base = rmat_training_suite(SuitePreset::small_suite, 7);
  const auto scaled = rmat_training_suite(SuitePreset::small_suite, 7, 64);
  REQUIRE(scaled.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(scaled[i].num_vertices == std::max<std::uint64_t>(2, base[i].num_vertices / 64));
    CHECK(scaled[i].num_edges == std::max<std::uint64_t>(1, base[i].num_edges / 64));
  }
  const auto floored = rmat_training_suite(SuitePreset::small_suite, 7, ~0ULL);
  for (const auto& cfg : floored) {
    CHECK(cfg.num_vertices == 2);
    CHECK(cfg.num_edges == 1);
  }
}

TEST_CASE("suite seeds derive from the config id, not the position") {
  const auto s1 = rmat_training_suite(SuitePreset::small_suite, 7);
  const auto s2 = rmat_training_suite(SuitePreset::small_suite, 8);
  CHECK(s1[0].seed != s2[0].seed);
  const auto again = rmat_training_suite(SuitePreset::small_suite, 7);
  CHECK(s1[5].seed == again[5].seed);
}

TEST_CASE("graph_type_from_id extracts the combo tag") {
  CHECK(graph_type_from_id("small-004-c5-v512-e15625") == "rmat-c5");
  CHECK(graph_type_from_id("large-000-c1-v1800000-e100000000") == "rmat-c1");
  CHECK(graph_type_from_id("wiki-talk") == "custom");
}

TEST_CASE("density decreases as vertices grow at fixed edge count") {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_edges;
  for (const auto& [e, v] : rmat_small_shapes()) by_edges[e].push_back(v);
  for (auto& [e, vs] : by_edges) {
    std::sort(vs.begin(), vs.end());
    for (std::size_t i = 1; i < vs.size(); ++i) {
      const double d0 = double(e) / (double(vs[i - 1]) * (vs[i - 1] - 1.0));
      const double d1 = double(e) / (double(vs[i]) * (vs[i] - 1.0));
      CHECK(d1 < d0);
    }
  }
}

TEST_CASE("manifest round-trips") {
  oracle::TempDir dir("manifest");
  std::vector<ManifestEntry> entries(2);
  entries[0] = {"small-000-c1-v512-e15625", "rmat-c1", 0.35, 0.26, 0.34, 0.05,
                512,                        15625,     11,   "graphs/a.txt"};
  entries[1] = {"small-001-c2-v512-e15625", "rmat-c2", 0.45, 0.16, 0.34, 0.05,
                512,                        15625,     12,   "graphs/b.txt"};
  write_manifest(dir.file("manifest.csv"), entries);
  const auto back = read_manifest(dir.file("manifest.csv"));
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].config_id == entries[i].config_id);
    CHECK(back[i].graph_type == entries[i].graph_type);
    CHECK(back[i].a == entries[i].a);
    CHECK(back[i].d == entries[i].d);
    CHECK(back[i].num_vertices == entries[i].num_vertices);
    CHECK(back[i].num_edges == entries[i].num_edges);
    CHECK(back[i].seed == entries[i].seed);
    CHECK(back[i].path == entries[i].path);
  }
}

}  // TEST_SUITE
