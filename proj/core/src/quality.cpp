#include <bit>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ease/partition.hpp"
#include "ease/version.hpp"
#include "internal_util.hpp"

namespace ease {

std::uint32_t CoverIndex::replicas(VertexId v) const {
  std::uint32_t c = 0;
  for (std::uint64_t w : row(v)) c += static_cast<std::uint32_t>(std::popcount(w));
  return c;
}

std::uint32_t CoverIndex::master(VertexId v) const {
  const auto r = row(v);
  for (std::uint32_t w = 0; w < words; ++w)
    if (r[w] != 0) return w * 64 + static_cast<std::uint32_t>(std::countr_zero(r[w]));
  return k;
}

CoverIndex build_cover_index(const Graph& g, const Partitioning& p) {
  if (p.assignment.size() != g.num_edges())
    throw std::invalid_argument("partitioning does not match graph edge count");
  CoverIndex idx;
  idx.k = p.k;
  idx.words = (p.k + 63) / 64;
  idx.bits.assign(static_cast<std::size_t>(g.num_vertices()) * idx.words, 0);
  idx.edge_load.assign(p.k, 0);
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::uint32_t part = p.assignment[e];
    if (part >= p.k) throw std::invalid_argument("assignment id out of range");
    const std::uint64_t bit = 1ULL << (part % 64);
    const std::uint32_t w = part / 64;
    idx.bits[static_cast<std::size_t>(edges[e].src) * idx.words + w] |= bit;
    idx.bits[static_cast<std::size_t>(edges[e].dst) * idx.words + w] |= bit;
    ++idx.edge_load[part];
  }
  return idx;
}

QualityMetrics compute_quality(const Graph& g, const Partitioning& p) {
  if (p.assignment.size() != g.num_edges())
    throw std::invalid_argument("partitioning does not match graph edge count");
  const std::uint32_t k = p.k;
  const std::uint32_t words = (k + 63) / 64;
  const VertexId n = g.num_vertices();

  // src and dst cover bitsets; the union row gives the full cover V(p_i)
  std::vector<std::uint64_t> src_bits(static_cast<std::size_t>(n) * words, 0);
  std::vector<std::uint64_t> dst_bits(static_cast<std::size_t>(n) * words, 0);
  std::vector<std::uint64_t> edge_count(k, 0);
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::uint32_t part = p.assignment[e];
    if (part >= k) throw std::invalid_argument("assignment id out of range");
    const std::uint64_t bit = 1ULL << (part % 64);
    const std::uint32_t w = part / 64;
    src_bits[static_cast<std::size_t>(edges[e].src) * words + w] |= bit;
    dst_bits[static_cast<std::size_t>(edges[e].dst) * words + w] |= bit;
    ++edge_count[part];
  }

  std::vector<std::uint64_t> cover(k, 0), src_cover(k, 0), dst_cover(k, 0);
  std::uint64_t replica_sum = 0;
  for (VertexId v = 0; v < n; ++v) {
    const std::size_t base = static_cast<std::size_t>(v) * words;
    for (std::uint32_t w = 0; w < words; ++w) {
      const std::uint64_t sb = src_bits[base + w];
      const std::uint64_t db = dst_bits[base + w];
      replica_sum += std::popcount(sb | db);
      std::uint64_t bits = sb | db;
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        ++cover[w * 64 + static_cast<std::uint32_t>(b)];
      }
      std::uint64_t s = sb;
      while (s) {
        const int b = std::countr_zero(s);
        s &= s - 1;
        ++src_cover[w * 64 + static_cast<std::uint32_t>(b)];
      }
      std::uint64_t d = db;
      while (d) {
        const int b = std::countr_zero(d);
        d &= d - 1;
        ++dst_cover[w * 64 + static_cast<std::uint32_t>(b)];
      }
    }
  }

  auto max_over_avg = [k](const std::vector<std::uint64_t>& counts) {
    std::uint64_t mx = 0, sum = 0;
    for (std::uint64_t c : counts) {
      mx = std::max(mx, c);
      sum += c;
    }
    if (sum == 0) return 0.0;
    return static_cast<double>(mx) * static_cast<double>(k) / static_cast<double>(sum);
  };

  QualityMetrics q;
  q.rf = static_cast<double>(replica_sum) / static_cast<double>(n);
  q.b_edge = max_over_avg(edge_count);
  q.b_v = max_over_avg(cover);
  q.b_src = max_over_avg(src_cover);
  q.b_dst = max_over_avg(dst_cover);
  return q;
}

void save_assignment(const Partitioning& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  std::string buf;
  buf.reserve(1 << 20);
  for (std::uint32_t id : p.assignment) {
    buf += detail::format_u64(id);
    buf += '\n';
    if (buf.size() > (1 << 20) - 16) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out.close();
  if (!out) throw std::runtime_error("assignment write failed: " + path);
}

std::vector<std::uint32_t> load_assignment(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<std::uint32_t> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ids.push_back(static_cast<std::uint32_t>(detail::parse_u64(line)));
  }
  if (ids.empty()) throw std::runtime_error("empty assignment file: " + path);
  return ids;
}

void save_partition_metrics(const std::string& path, const Partitioning& p,
                            const QualityMetrics& q, double partition_time_ms) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = p.seed;
  j["partitioner"] = p.partitioner;
  j["k"] = p.k;
  j["alpha"] = p.alpha;
  j["rf"] = q.rf;
  j["b_edge"] = q.b_edge;
  j["b_v"] = q.b_v;
  j["b_src"] = q.b_src;
  j["b_dst"] = q.b_dst;
  j["partition_time_ms"] = partition_time_ms;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ease
