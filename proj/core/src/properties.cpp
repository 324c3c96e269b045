#include "ease/properties.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ease/version.hpp"

namespace ease {

std::string feature_level_name(FeatureLevel level) {
  switch (level) {
    case FeatureLevel::simple: return "simple";
    case FeatureLevel::basic: return "basic";
    case FeatureLevel::advanced: return "advanced";
  }
  throw std::logic_error("bad feature level");
}

FeatureLevel parse_feature_level(const std::string& name) {
  if (name == "simple") return FeatureLevel::simple;
  if (name == "basic") return FeatureLevel::basic;
  if (name == "advanced") return FeatureLevel::advanced;
  throw std::invalid_argument("unknown feature level: " + name);
}

double pearson_first_skewness(const std::vector<std::uint32_t>& values) {
  if (values.empty()) return 0.0;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (std::uint32_t v : values) sum += v;
  const double mean = sum / n;

  double ss = 0.0;
  for (std::uint32_t v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  const double sigma = std::sqrt(ss / n);
  if (sigma == 0.0) return 0.0;

  // mode: smallest value attaining the maximum frequency
  std::map<std::uint32_t, std::size_t> freq;
  for (std::uint32_t v : values) ++freq[v];
  std::uint32_t mode = 0;
  std::size_t best = 0;
  for (const auto& [value, count] : freq) {
    if (count > best) {
      best = count;
      mode = value;
    }
  }
  return (mean - mode) / sigma;
}

namespace {

// Per-vertex triangle counts on the undirected simple view. Each triangle is
// found once via the degree ordering and credited to all three corners.
std::vector<std::uint64_t> triangle_counts(const UndirectedView& view, VertexId n) {
  std::vector<std::uint32_t> deg(n);
  for (VertexId v = 0; v < n; ++v) deg[v] = view.degree(v);

  // rank order: by degree ascending, id as tiebreak; edges point low -> high rank
  auto less_rank = [&](VertexId x, VertexId y) {
    return deg[x] != deg[y] ? deg[x] < deg[y] : x < y;
  };

  std::vector<std::vector<VertexId>> forward(n);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : view.neighbors(v))
      if (less_rank(v, w)) forward[v].push_back(w);
    std::sort(forward[v].begin(), forward[v].end());
  }

  std::vector<std::uint64_t> t(n, 0);
  std::vector<VertexId> mark(n, static_cast<VertexId>(-1));
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : forward[v]) mark[w] = v;
    for (VertexId w : forward[v]) {
      for (VertexId x : forward[w]) {
        if (mark[x] == v) {
          ++t[v];
          ++t[w];
          ++t[x];
        }
      }
    }
  }
  return t;
}

}  // namespace

GraphProperties compute_properties(const Graph& g, FeatureLevel level) {
  GraphProperties p;
  p.level = level;
  p.num_edges = g.num_edges();
  p.num_vertices = g.num_vertices();
  if (level == FeatureLevel::simple) return p;

  const double nv = static_cast<double>(p.num_vertices);
  const double ne = static_cast<double>(p.num_edges);
  p.mean_degree = 2.0 * ne / nv;
  p.density = nv > 1.0 ? ne / (nv * (nv - 1.0)) : 0.0;
  p.indeg_skew = pearson_first_skewness(in_degrees(g));
  p.outdeg_skew = pearson_first_skewness(out_degrees(g));
  if (level == FeatureLevel::basic) return p;

  const UndirectedView view = build_undirected_view(g);
  const auto t = triangle_counts(view, g.num_vertices());
  double t_sum = 0.0;
  double lcc_sum = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    t_sum += static_cast<double>(t[v]);
    const double deg = view.degree(v);
    if (deg >= 2.0) lcc_sum += static_cast<double>(t[v]) / (0.5 * deg * (deg - 1.0));
  }
  p.avg_triangles = t_sum / nv;
  p.avg_lcc = lcc_sum / nv;
  return p;
}

void save_properties(const std::string& path, const GraphProperties& props, std::uint64_t seed) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = seed;
  j["level"] = feature_level_name(props.level);
  j["num_edges"] = props.num_edges;
  j["num_vertices"] = props.num_vertices;
  j["mean_degree"] = props.mean_degree;
  j["density"] = props.density;
  j["indeg_skew"] = props.indeg_skew;
  j["outdeg_skew"] = props.outdeg_skew;
  j["avg_triangles"] = props.avg_triangles;
  j["avg_lcc"] = props.avg_lcc;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

GraphProperties load_properties(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  in >> j;
  GraphProperties p;
  p.level = parse_feature_level(j.at("level").get<std::string>());
  p.num_edges = j.at("num_edges").get<std::uint64_t>();
  p.num_vertices = j.at("num_vertices").get<std::uint64_t>();
  p.mean_degree = j.at("mean_degree").get<double>();
  p.density = j.at("density").get<double>();
  p.indeg_skew = j.at("indeg_skew").get<double>();
  p.outdeg_skew = j.at("outdeg_skew").get<double>();
  p.avg_triangles = j.at("avg_triangles").get<double>();
  p.avg_lcc = j.at("avg_lcc").get<double>();
  return p;
}

}  // namespace ease
