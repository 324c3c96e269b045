// R-MAT generator and the two fixed training suites of (|V|, |E|) shapes
// crossed with nine (a, b, c, d) quadrant-probability combos.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ease/graph.hpp"

namespace ease {

struct RmatConfig {
  std::string id;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  std::uint64_t num_vertices = 0;
  std::uint64_t num_edges = 0;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on non-positive sizes, probabilities outside
  // [0, 1], or a+b+c+d deviating from 1 by more than 1e-9.
  void validate() const;
};

// Recursive quadrant descent with the same (a, b, c, d) at every level.
// Duplicate edges and self-loops are kept. When num_vertices is a power of two
// the descent runs over exactly log2(|V|) levels; otherwise edges are drawn on
// the next power-of-two grid and redrawn until both endpoints fall inside
// [0, |V|), which keeps arbitrary vertex counts generable from the same seed.
Graph generate_rmat(const RmatConfig& config);

enum class SuitePreset { small_suite, large_suite };

// Nine (a, b, c, d) parameter combos; d is 0.05 everywhere.
const std::array<std::array<double, 4>, 9>& rmat_param_combos();

// (|E|, |V|) shape lists: 33 combos for the small suite, 20 for the large one.
const std::vector<std::pair<std::uint64_t, std::uint64_t>>& rmat_small_shapes();
const std::vector<std::pair<std::uint64_t, std::uint64_t>>& rmat_large_shapes();

// Full cross product of shapes and parameter combos: 297 (small) or 180 (large)
// configs. scale divides every |V| and |E| (floors at 2 vertices / 1 edge);
// per-config seeds are derived from base_seed and the config id.
std::vector<RmatConfig> rmat_training_suite(SuitePreset preset,
                                            std::uint64_t base_seed,
                                            std::uint64_t scale = 1);

// Manifest rows tie generated graphs on disk to their configs.
struct ManifestEntry {
  std::string config_id;
  std::string graph_type;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  std::uint64_t num_vertices = 0;
  std::uint64_t num_edges = 0;
  std::uint64_t seed = 0;
  std::string path;
};

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(const std::string& path);

// Graph-type tag from a suite config id, e.g. "small-004-c5-v512-e15625" ->
// "rmat-c5". Ids without a combo marker map to "custom".
std::string graph_type_from_id(const std::string& config_id);

}  // namespace ease
