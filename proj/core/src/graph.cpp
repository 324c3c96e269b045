#include "ease/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "internal_util.hpp"

namespace ease {

Graph::Graph(VertexId num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (edges_.empty()) throw std::invalid_argument("graph must have at least one edge");
  if (num_vertices_ == 0) throw std::invalid_argument("graph must have at least one vertex");
  for (const Edge& e : edges_) {
    if (e.src >= num_vertices_ || e.dst >= num_vertices_)
      throw std::invalid_argument("edge endpoint out of range");
  }
}

namespace {

// Parses up to two unsigned ints from a line; returns false on blank lines.
bool parse_edge_line(const char* begin, const char* end, std::uint64_t& a, std::uint64_t& b) {
  const char* p = begin;
  auto skip_ws = [&]() {
    while (p != end && (*p == ' ' || *p == '\t')) ++p;
  };
  skip_ws();
  if (p == end) return false;
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc()) throw std::runtime_error("malformed edge line");
  p = r1.ptr;
  skip_ws();
  auto r2 = std::from_chars(p, end, b);
  if (r2.ec != std::errc()) throw std::runtime_error("malformed edge line");
  p = r2.ptr;
  skip_ws();
  if (p != end) throw std::runtime_error("trailing characters on edge line");
  return true;
}

}  // namespace

Graph load_edge_list(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);

  std::vector<Edge> edges;
  std::vector<std::uint64_t> originals;
  std::unordered_map<std::uint64_t, VertexId> remap;
  bool identity = true;
  const std::uint64_t fixed_n = opts.num_vertices;
  if (fixed_n > std::numeric_limits<VertexId>::max())
    throw std::runtime_error("declared vertex count exceeds the 32-bit id range");

  auto intern = [&](std::uint64_t raw) -> VertexId {
    if (fixed_n > 0) {
      if (raw >= fixed_n) throw std::runtime_error("edge endpoint out of declared vertex range");
      return static_cast<VertexId>(raw);
    }
    auto it = remap.find(raw);
    if (it != remap.end()) return it->second;
    VertexId id = static_cast<VertexId>(originals.size());
    if (raw != id) identity = false;
    remap.emplace(raw, id);
    originals.push_back(raw);
    return id;
  };

  std::unordered_set<std::uint64_t> seen;  // only used when deduping
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == opts.comment_prefix) continue;
    std::uint64_t a = 0, b = 0;
    try {
      if (!parse_edge_line(line.data(), line.data() + line.size(), a, b)) continue;
      if (opts.one_indexed) {
        if (a == 0 || b == 0) throw std::runtime_error("id 0 in one-indexed edge list");
        --a;
        --b;
      }
      VertexId u = intern(a);
      VertexId v = intern(b);
      if (opts.dedupe) {
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        if (!seen.insert(key).second) continue;
      }
      edges.push_back({u, v});
    } catch (const std::exception& ex) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  if (edges.empty()) throw std::runtime_error("empty edge list: " + path);

  if (fixed_n > 0) return Graph(static_cast<VertexId>(fixed_n), std::move(edges));
  Graph g(static_cast<VertexId>(originals.size()), std::move(edges));
  if (!identity) g.set_original_ids(std::move(originals));
  return g;
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  std::string buf;
  buf.reserve(1 << 20);
  char tmp[48];
  char* const tmp_end = tmp + sizeof(tmp) - 2;  // room for the separator bytes
  for (const Edge& e : g.edges()) {
    char* p = tmp;
    auto r1 = std::to_chars(p, tmp_end, e.src);
    p = r1.ptr;
    *p++ = ' ';
    auto r2 = std::to_chars(p, tmp_end, e.dst);
    p = r2.ptr;
    *p++ = '\n';
    buf.append(tmp, p);
    if (buf.size() > (1 << 20) - 64) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out.close();
  if (!out) throw std::runtime_error("edge list write failed: " + path);
}

std::vector<std::uint32_t> out_degrees(const Graph& g) {
  std::vector<std::uint32_t> d(g.num_vertices(), 0);
  for (const Edge& e : g.edges()) ++d[e.src];
  return d;
}

std::vector<std::uint32_t> in_degrees(const Graph& g) {
  std::vector<std::uint32_t> d(g.num_vertices(), 0);
  for (const Edge& e : g.edges()) ++d[e.dst];
  return d;
}

std::vector<std::uint32_t> total_degrees(const Graph& g) {
  std::vector<std::uint32_t> d(g.num_vertices(), 0);
  for (const Edge& e : g.edges()) {
    ++d[e.src];
    ++d[e.dst];
  }
  return d;
}

UndirectedView build_undirected_view(const Graph& g) {
  const VertexId n = g.num_vertices();
  std::vector<std::uint32_t> counts(n, 0);
  for (const Edge& e : g.edges()) {
    if (e.src == e.dst) continue;
    ++counts[e.src];
    ++counts[e.dst];
  }
  UndirectedView v;
  v.offsets.assign(n + 1, 0);
  for (VertexId i = 0; i < n; ++i) v.offsets[i + 1] = v.offsets[i] + counts[i];
  v.adj.resize(v.offsets[n]);
  std::vector<std::size_t> cursor(v.offsets.begin(), v.offsets.end() - 1);
  for (const Edge& e : g.edges()) {
    if (e.src == e.dst) continue;
    v.adj[cursor[e.src]++] = e.dst;
    v.adj[cursor[e.dst]++] = e.src;
  }
  // Sort and collapse duplicates per vertex, then rebuild tight offsets.
  std::vector<std::size_t> new_offsets(n + 1, 0);
  std::size_t write = 0;
  for (VertexId i = 0; i < n; ++i) {
    std::size_t lo = v.offsets[i], hi = cursor[i];
    std::sort(v.adj.begin() + lo, v.adj.begin() + hi);
    std::size_t begin = write;
    for (std::size_t p = lo; p < hi; ++p) {
      if (p > lo && v.adj[p] == v.adj[p - 1]) continue;
      v.adj[write++] = v.adj[p];
    }
    new_offsets[i] = begin;
  }
  new_offsets[n] = write;
  v.adj.resize(write);
  v.offsets = std::move(new_offsets);
  return v;
}

IncidenceView build_incidence_view(const Graph& g) {
  const VertexId n = g.num_vertices();
  std::vector<std::uint32_t> counts(n, 0);
  for (const Edge& e : g.edges()) {
    ++counts[e.src];
    if (e.dst != e.src) ++counts[e.dst];
  }
  IncidenceView v;
  v.offsets.assign(n + 1, 0);
  for (VertexId i = 0; i < n; ++i) v.offsets[i + 1] = v.offsets[i] + counts[i];
  v.edge_ids.resize(v.offsets[n]);
  std::vector<std::size_t> cursor(v.offsets.begin(), v.offsets.end() - 1);
  const auto edges = g.edges();
  for (std::size_t eid = 0; eid < edges.size(); ++eid) {
    const Edge& e = edges[eid];
    v.edge_ids[cursor[e.src]++] = eid;
    if (e.dst != e.src) v.edge_ids[cursor[e.dst]++] = eid;
  }
  return v;
}

}  // namespace ease
