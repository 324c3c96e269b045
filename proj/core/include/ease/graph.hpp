// Directed multigraph stored as a dense-id edge list.
// Duplicate edges and self-loops are kept; vertex ids lie in [0, num_vertices).
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ease {

using VertexId = std::uint32_t;

struct Edge {
  VertexId src;
  VertexId dst;
};

inline bool operator==(const Edge& a, const Edge& b) {
  return a.src == b.src && a.dst == b.dst;
}

class Graph {
 public:
  // Takes ownership of the edge list. Every endpoint must be < num_vertices
  // and the edge list must be non-empty; throws std::invalid_argument otherwise.
  Graph(VertexId num_vertices, std::vector<Edge> edges);

  VertexId num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  // Original vertex ids before dense remapping; empty when ids were already dense.
  const std::vector<std::uint64_t>& original_ids() const { return original_ids_; }
  void set_original_ids(std::vector<std::uint64_t> ids) { original_ids_ = std::move(ids); }

 private:
  VertexId num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> original_ids_;
};

struct LoadOptions {
  char comment_prefix = '#';
  bool one_indexed = false;   // subtract 1 from every id on input
  bool dedupe = false;        // drop duplicate (src, dst) pairs, keeping the first
  // When nonzero, ids are taken verbatim (must be < num_vertices) and no dense
  // remap happens; isolated vertices up to num_vertices are preserved.
  std::uint64_t num_vertices = 0;
};

// Reads a whitespace-separated edge list ("src dst" per line). Ids are remapped
// to a dense [0, |V|) range in order of first appearance; the original ids are
// kept on the graph for reporting. Empty graphs and malformed lines are errors.
Graph load_edge_list(const std::string& path, const LoadOptions& opts = {});

// Writes "src dst" lines in edge order (dense ids, no comments).
void save_edge_list(const Graph& g, const std::string& path);

// Degree vectors over the raw edge multiset (duplicates and self-loops count).
std::vector<std::uint32_t> out_degrees(const Graph& g);
std::vector<std::uint32_t> in_degrees(const Graph& g);
std::vector<std::uint32_t> total_degrees(const Graph& g);

// Undirected simple view used by triangle/clustering computations: symmetrized,
// duplicate edges collapsed, self-loops dropped. adj(v) is sorted ascending.
struct UndirectedView {
  std::vector<std::size_t> offsets;  // size |V|+1
  std::vector<VertexId> adj;
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj.data() + offsets[v], adj.data() + offsets[v + 1]};
  }
  std::uint32_t degree(VertexId v) const {
    return static_cast<std::uint32_t>(offsets[v + 1] - offsets[v]);
  }
};

UndirectedView build_undirected_view(const Graph& g);

// Incidence lists over the raw edge multiset: for each vertex the ids of all
// edges touching it (self-loops appear once). Used by expansion partitioners.
struct IncidenceView {
  std::vector<std::size_t> offsets;  // size |V|+1
  std::vector<std::uint64_t> edge_ids;
  std::span<const std::uint64_t> incident(VertexId v) const {
    return {edge_ids.data() + offsets[v], edge_ids.data() + offsets[v + 1]};
  }
};

IncidenceView build_incidence_view(const Graph& g);

}  // namespace ease
