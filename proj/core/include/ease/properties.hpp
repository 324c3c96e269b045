// Graph-level features at three escalating cost levels.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ease/graph.hpp"

namespace ease {

enum class FeatureLevel { simple, basic, advanced };

std::string feature_level_name(FeatureLevel level);
FeatureLevel parse_feature_level(const std::string& name);

struct GraphProperties {
  std::uint64_t num_edges = 0;
  std::uint64_t num_vertices = 0;
  // basic and above
  double mean_degree = 0.0;   // 2|E| / |V|
  double density = 0.0;       // |E| / (|V| * (|V| - 1))
  double indeg_skew = 0.0;    // Pearson first skewness of the in-degree multiset
  double outdeg_skew = 0.0;
  // advanced only
  double avg_triangles = 0.0; // mean per-vertex triangle count
  double avg_lcc = 0.0;       // mean local clustering coefficient
  FeatureLevel level = FeatureLevel::simple;
};

// simple: counts only. basic: adds mean degree, density and degree skews.
// advanced: adds triangle and clustering averages computed on the symmetrized
// deduplicated view with self-loops removed; both average over all |V| vertices.
GraphProperties compute_properties(const Graph& g, FeatureLevel level);

// (mean - mode) / sigma over the multiset; sigma is the population standard
// deviation, mode is the smallest value attaining the maximum frequency and
// the result is 0 when sigma is 0.
double pearson_first_skewness(const std::vector<std::uint32_t>& values);

// JSON artifact I/O ({tool_version, schema_version, seed} embedded on save).
void save_properties(const std::string& path, const GraphProperties& props, std::uint64_t seed);
GraphProperties load_properties(const std::string& path);

}  // namespace ease
