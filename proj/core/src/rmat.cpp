#include "ease/rmat.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "ease/hashing.hpp"
#include "csv_io.hpp"
#include "internal_util.hpp"

namespace ease {

void RmatConfig::validate() const {
  if (num_vertices < 2) throw std::invalid_argument("rmat: num_vertices must be >= 2");
  if (num_edges < 1) throw std::invalid_argument("rmat: num_edges must be >= 1");
  for (double p : {a, b, c, d})
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("rmat: probability outside [0,1]");
  if (std::abs(a + b + c + d - 1.0) > 1e-9)
    throw std::invalid_argument("rmat: a+b+c+d must sum to 1");
}

Graph generate_rmat(const RmatConfig& config) {
  config.validate();
  const std::uint64_t n = config.num_vertices;
  const std::uint64_t grid = std::bit_ceil(n);
  const int levels = std::countr_zero(grid);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const double ab = config.a + config.b;
  const double abc = ab + config.c;

  std::vector<Edge> edges;
  edges.reserve(config.num_edges);
  for (std::uint64_t i = 0; i < config.num_edges; ++i) {
    std::uint64_t src = 0, dst = 0;
    int attempts = 0;
    for (;;) {
      src = 0;
      dst = 0;
      for (int level = levels - 1; level >= 0; --level) {
        const double r = unif(rng);
        const std::uint64_t bit = 1ULL << level;
        if (r < config.a) {
          // top-left quadrant: both ids stay in the low half
        } else if (r < ab) {
          dst |= bit;
        } else if (r < abc) {
          src |= bit;
        } else {
          src |= bit;
          dst |= bit;
        }
      }
      if (src < n && dst < n) break;
      if (++attempts > 100000)
        throw std::runtime_error("rmat: cannot place edge inside vertex range");
    }
    edges.push_back({static_cast<VertexId>(src), static_cast<VertexId>(dst)});
  }
  return Graph(static_cast<VertexId>(n), std::move(edges));
}

const std::array<std::array<double, 4>, 9>& rmat_param_combos() {
  static const std::array<std::array<double, 4>, 9> combos = {{
      {0.35, 0.26, 0.34, 0.05},
      {0.45, 0.16, 0.34, 0.05},
      {0.55, 0.06, 0.34, 0.05},
      {0.60, 0.01, 0.34, 0.05},
      {0.40, 0.36, 0.19, 0.05},
      {0.50, 0.26, 0.19, 0.05},
      {0.60, 0.16, 0.19, 0.05},
      {0.65, 0.11, 0.19, 0.05},
      {0.70, 0.06, 0.19, 0.05},
  }};
  return combos;
}

namespace {

constexpr std::uint64_t kMillion = 1000000ULL;

std::vector<std::pair<std::uint64_t, std::uint64_t>> make_small_shapes() {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> shapes;
  auto add = [&](std::uint64_t edges_m, int lo, int hi) {
    for (int p = lo; p <= hi; ++p) shapes.emplace_back(edges_m * kMillion, 1ULL << p);
  };
  add(1, 15, 19);
  add(40, 21, 25);
  add(80, 21, 26);
  add(120, 22, 26);
  add(160, 22, 27);
  add(200, 22, 27);
  return shapes;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> make_large_shapes() {
  // (|E| millions, |V| in units of 100k) per row of the large table.
  struct Row {
    std::uint64_t edges_m;
    std::array<std::uint64_t, 4> vertices_100k;
  };
  const Row rows[] = {
      {100, {18, 25, 40, 100}},
      {200, {36, 50, 80, 200}},
      {300, {54, 75, 120, 300}},
      {400, {73, 100, 160, 400}},
      {500, {91, 125, 200, 500}},
  };
  std::vector<std::pair<std::uint64_t, std::uint64_t>> shapes;
  for (const Row& r : rows)
    for (std::uint64_t v : r.vertices_100k)
      shapes.emplace_back(r.edges_m * kMillion, v * 100000ULL);
  return shapes;
}

}  // namespace

const std::vector<std::pair<std::uint64_t, std::uint64_t>>& rmat_small_shapes() {
  static const auto shapes = make_small_shapes();
  return shapes;
}

const std::vector<std::pair<std::uint64_t, std::uint64_t>>& rmat_large_shapes() {
  static const auto shapes = make_large_shapes();
  return shapes;
}

std::vector<RmatConfig> rmat_training_suite(SuitePreset preset,
                                            std::uint64_t base_seed,
                                            std::uint64_t scale) {
  if (scale == 0) throw std::invalid_argument("rmat suite: scale must be >= 1");
  const bool small = preset == SuitePreset::small_suite;
  const auto& shapes = small ? rmat_small_shapes() : rmat_large_shapes();
  const char* prefix = small ? "small" : "large";

  std::vector<RmatConfig> configs;
  configs.reserve(shapes.size() * 9);
  std::size_t index = 0;
  for (const auto& [edges, vertices] : shapes) {
    for (std::size_t combo = 0; combo < rmat_param_combos().size(); ++combo) {
      const auto& p = rmat_param_combos()[combo];
      RmatConfig cfg;
      cfg.a = p[0];
      cfg.b = p[1];
      cfg.c = p[2];
      cfg.d = p[3];
      cfg.num_vertices = std::max<std::uint64_t>(2, vertices / scale);
      cfg.num_edges = std::max<std::uint64_t>(1, edges / scale);
      char id[96];
      std::snprintf(id, sizeof(id), "%s-%03zu-c%zu-v%llu-e%llu", prefix, index, combo + 1,
                    static_cast<unsigned long long>(cfg.num_vertices),
                    static_cast<unsigned long long>(cfg.num_edges));
      cfg.id = id;
      cfg.seed = hash_u64(base_seed, hash_str(cfg.id));
      configs.push_back(std::move(cfg));
      ++index;
    }
  }
  return configs;
}

std::string graph_type_from_id(const std::string& config_id) {
  // combo marker: "-c<digits>-"
  for (std::size_t pos = config_id.find("-c"); pos != std::string::npos;
       pos = config_id.find("-c", pos + 1)) {
    std::size_t end = pos + 2;
    while (end < config_id.size() && std::isdigit(static_cast<unsigned char>(config_id[end])))
      ++end;
    if (end > pos + 2 && end < config_id.size() && config_id[end] == '-')
      return "rmat-" + config_id.substr(pos + 1, end - pos - 1);
  }
  return "custom";
}

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
  detail::CsvWriter w(path);
  w.row({"config_id", "graph_type", "a", "b", "c", "d", "num_vertices", "num_edges", "seed",
         "path"});
  for (const ManifestEntry& e : entries) {
    w.row({e.config_id, e.graph_type, detail::format_double(e.a), detail::format_double(e.b),
           detail::format_double(e.c), detail::format_double(e.d),
           detail::format_u64(e.num_vertices), detail::format_u64(e.num_edges),
           detail::format_u64(e.seed), e.path});
  }
  w.close();
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  const auto t = detail::read_csv(path);
  const std::size_t id = t.column("config_id"), type = t.column("graph_type");
  const std::size_t a = t.column("a"), b = t.column("b"), c = t.column("c"), d = t.column("d");
  const std::size_t nv = t.column("num_vertices"), ne = t.column("num_edges");
  const std::size_t seed = t.column("seed"), p = t.column("path");
  std::vector<ManifestEntry> entries;
  entries.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    ManifestEntry e;
    e.config_id = row[id];
    e.graph_type = row[type];
    e.a = detail::parse_double(row[a]);
    e.b = detail::parse_double(row[b]);
    e.c = detail::parse_double(row[c]);
    e.d = detail::parse_double(row[d]);
    e.num_vertices = detail::parse_u64(row[nv]);
    e.num_edges = detail::parse_u64(row[ne]);
    e.seed = detail::parse_u64(row[seed]);
    e.path = row[p];
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace ease
