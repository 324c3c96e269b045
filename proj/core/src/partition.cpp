#include "ease/partition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

#include "ease/hashing.hpp"

namespace ease {

GraphContext build_graph_context(const Graph& g) {
  GraphContext ctx;
  ctx.out_deg = out_degrees(g);
  ctx.in_deg = in_degrees(g);
  ctx.tot_deg.resize(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    ctx.tot_deg[v] = ctx.out_deg[v] + ctx.in_deg[v];
  ctx.incidence = build_incidence_view(g);
  ctx.undirected = build_undirected_view(g);
  return ctx;
}

namespace {

constexpr std::uint32_t kUnassigned = static_cast<std::uint32_t>(-1);

std::uint64_t capacity_bound(std::size_t num_edges, std::uint32_t k, double alpha) {
  return static_cast<std::uint64_t>(
      std::ceil(alpha * static_cast<double>(num_edges) / static_cast<double>(k)));
}

// ---- stateless hash family ----

void run_1d(const Graph& g, std::uint32_t k, std::uint64_t seed, bool by_src,
            std::vector<std::uint32_t>& out, std::uint64_t& work) {
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const VertexId key = by_src ? edges[e].src : edges[e].dst;
    out[e] = static_cast<std::uint32_t>(hash_u64(seed, key) % k);
  }
  work += edges.size();
}

void run_crvc(const Graph& g, std::uint32_t k, std::uint64_t seed,
              std::vector<std::uint32_t>& out, std::uint64_t& work) {
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const VertexId lo = std::min(edges[e].src, edges[e].dst);
    const VertexId hi = std::max(edges[e].src, edges[e].dst);
    out[e] = static_cast<std::uint32_t>(hash_pair(seed, lo, hi) % k);
  }
  work += edges.size();
}

// rows = floor(sqrt(k)) lowered until it divides k; cols = k / rows.
void grid_shape(std::uint32_t k, std::uint32_t& rows, std::uint32_t& cols) {
  rows = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(k)));
  while (rows > 1 && k % rows != 0) --rows;
  cols = k / rows;
}

void run_2d(const Graph& g, std::uint32_t k, std::uint64_t seed,
            std::vector<std::uint32_t>& out, std::uint64_t& work) {
  std::uint32_t rows = 0, cols = 0;
  grid_shape(k, rows, cols);
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::uint32_t r = static_cast<std::uint32_t>(hash_u64(seed, edges[e].src) % rows);
    const std::uint32_t c = static_cast<std::uint32_t>(hash_u64(seed, edges[e].dst) % cols);
    out[e] = r * cols + c;
  }
  work += 2 * edges.size();
}

void run_dbh(const Graph& g, const GraphContext& ctx, std::uint32_t k, std::uint64_t seed,
             std::vector<std::uint32_t>& out, std::uint64_t& work) {
  const auto edges = g.edges();
  work += g.num_vertices();  // degree table
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const VertexId u = edges[e].src, v = edges[e].dst;
    const std::uint32_t du = ctx.tot_deg[u], dv = ctx.tot_deg[v];
    const VertexId key = (du < dv || (du == dv && u <= v)) ? u : v;
    out[e] = static_cast<std::uint32_t>(hash_u64(seed, key) % k);
  }
  work += 2 * edges.size();
}

// ---- HDRF scoring core (shared with the 2ps fallback) ----
//
// For edge (u, v): partial degrees are bumped first, then every partition
// below the capacity bound is scored as
//   C_rep(p) + lambda * (maxload - load(p)) / (1 + maxload - minload)
// where C_rep(p) = g(u, p) + g(v, p) and g(x, p) = 1 + (1 - theta(x)) when x
// already has a replica on p, else 0; theta(x) is x's share of the edge's
// partial-degree sum. Ties resolve to the lowest partition index.
struct HdrfState {
  std::uint32_t k = 0;
  std::uint32_t words = 0;
  double lambda = 1.0;
  std::uint64_t cap = 0;
  std::vector<std::uint64_t> pdeg;
  std::vector<std::uint64_t> replica_bits;  // |V| * words
  std::vector<std::uint64_t> load;
  std::uint64_t maxload = 0;

  HdrfState(VertexId n, std::uint32_t k_, double lambda_, std::uint64_t cap_)
      : k(k_), words((k_ + 63) / 64), lambda(lambda_), cap(cap_), pdeg(n, 0),
        replica_bits(static_cast<std::size_t>(n) * words, 0), load(k_, 0) {}

  bool has_replica(VertexId x, std::uint32_t p) const {
    return (replica_bits[static_cast<std::size_t>(x) * words + p / 64] >> (p % 64)) & 1ULL;
  }
  void add_replica(VertexId x, std::uint32_t p) {
    replica_bits[static_cast<std::size_t>(x) * words + p / 64] |= 1ULL << (p % 64);
  }

  std::uint32_t pick(VertexId u, VertexId v, std::uint64_t& work) {
    ++pdeg[u];
    ++pdeg[v];
    const double du = static_cast<double>(pdeg[u]);
    const double dv = static_cast<double>(pdeg[v]);
    const double theta_u = du / (du + dv);
    const double gu = 1.0 + (1.0 - theta_u);        // score of a u replica
    const double gv = 1.0 + theta_u;                 // 1 + (1 - theta_v)
    std::uint64_t minload = *std::min_element(load.begin(), load.end());
    const double denom = 1.0 + static_cast<double>(maxload - minload);
    const double max_d = static_cast<double>(maxload);

    std::uint32_t best = kUnassigned;
    double best_score = -1.0;
    for (std::uint32_t p = 0; p < k; ++p) {
      if (load[p] >= cap) continue;
      double score = lambda * (max_d - static_cast<double>(load[p])) / denom;
      if (has_replica(u, p)) score += gu;
      if (has_replica(v, p)) score += gv;
      if (score > best_score) {
        best_score = score;
        best = p;
      }
    }
    work += k;
    if (best == kUnassigned) throw std::runtime_error("hdrf: all partitions at capacity");
    return best;
  }

  void commit(VertexId u, VertexId v, std::uint32_t p) {
    add_replica(u, p);
    add_replica(v, p);
    ++load[p];
    if (load[p] > maxload) maxload = load[p];
  }
};

void run_hdrf(const Graph& g, std::uint32_t k, double lambda, double alpha,
              std::vector<std::uint32_t>& out, std::uint64_t& work) {
  HdrfState st(g.num_vertices(), k, lambda, capacity_bound(g.num_edges(), k, alpha));
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::uint32_t p = st.pick(edges[e].src, edges[e].dst, work);
    st.commit(edges[e].src, edges[e].dst, p);
    out[e] = p;
  }
}

// ---- 2ps: streaming clustering pass, then cluster-aware placement ----

void run_2ps(const Graph& g, const GraphContext& ctx, std::uint32_t k, double alpha,
             std::vector<std::uint32_t>& out, std::uint64_t& work) {
  const auto edges = g.edges();
  const VertexId n = g.num_vertices();
  const std::uint64_t vol_cap = std::max<std::uint64_t>(1, g.num_edges() / k);

  // pass 1: degree-volume-capped label clustering over the edge stream
  std::vector<std::uint32_t> cluster(n, kUnassigned);
  std::vector<std::uint64_t> cluster_vol;
  auto new_cluster = [&](VertexId x) {
    cluster[x] = static_cast<std::uint32_t>(cluster_vol.size());
    cluster_vol.push_back(ctx.tot_deg[x]);
  };
  auto try_join = [&](VertexId x, std::uint32_t c) {
    if (cluster_vol[c] + ctx.tot_deg[x] <= vol_cap) {
      cluster[x] = c;
      cluster_vol[c] += ctx.tot_deg[x];
      return true;
    }
    return false;
  };
  for (const Edge& e : edges) {
    const VertexId u = e.src, v = e.dst;
    const std::uint32_t cu = cluster[u], cv = cluster[v];
    if (cu == kUnassigned && cv == kUnassigned) {
      new_cluster(u);
      if (v != u && !try_join(v, cluster[u])) new_cluster(v);
    } else if (cu == kUnassigned) {
      if (!try_join(u, cv)) new_cluster(u);
    } else if (cv == kUnassigned) {
      if (!try_join(v, cu)) new_cluster(v);
    } else if (cu != cv) {
      // move the lighter endpoint toward the heavier one when it fits
      VertexId mover = v;
      std::uint32_t from = cv, to = cu;
      if (ctx.tot_deg[u] < ctx.tot_deg[v] || (ctx.tot_deg[u] == ctx.tot_deg[v] && u < v)) {
        mover = u;
        from = cu;
        to = cv;
      }
      if (cluster_vol[to] + ctx.tot_deg[mover] <= vol_cap) {
        cluster_vol[from] -= ctx.tot_deg[mover];
        cluster_vol[to] += ctx.tot_deg[mover];
        cluster[mover] = to;
      }
    }
  }
  work += 2 * edges.size();

  // pass 2: largest cluster first onto the partition with least planned volume
  const std::uint32_t num_clusters = static_cast<std::uint32_t>(cluster_vol.size());
  std::vector<std::uint32_t> order(num_clusters);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return cluster_vol[a] != cluster_vol[b] ? cluster_vol[a] > cluster_vol[b] : a < b;
  });
  std::vector<std::uint32_t> cluster_part(num_clusters, 0);
  {
    using Slot = std::pair<std::uint64_t, std::uint32_t>;  // (planned volume, partition)
    std::priority_queue<Slot, std::vector<Slot>, std::greater<Slot>> slots;
    for (std::uint32_t p = 0; p < k; ++p) slots.emplace(0, p);
    for (std::uint32_t c : order) {
      auto [vol, p] = slots.top();
      slots.pop();
      cluster_part[c] = p;
      slots.emplace(vol + cluster_vol[c], p);
    }
  }
  work += num_clusters + k;

  // pass 3: stream edges; intra-cluster edges follow their cluster when the
  // capacity bound allows, everything else goes through HDRF scoring.
  HdrfState st(n, k, 1.0, capacity_bound(g.num_edges(), k, alpha));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const VertexId u = edges[e].src, v = edges[e].dst;
    std::uint32_t p = kUnassigned;
    ++work;
    if (cluster[u] == cluster[v]) {
      const std::uint32_t cp = cluster_part[cluster[u]];
      if (st.load[cp] < st.cap) p = cp;
    }
    if (p == kUnassigned) {
      p = st.pick(u, v, work);
    } else {
      ++st.pdeg[u];
      ++st.pdeg[v];
    }
    st.commit(u, v, p);
    out[e] = p;
  }
}

// ---- ne: per-partition neighborhood expansion ----

void run_ne(const Graph& g, const GraphContext& ctx, std::uint32_t k, std::uint64_t seed,
            double alpha, std::vector<std::uint32_t>& out, std::uint64_t& work) {
  const auto edges = g.edges();
  const VertexId n = g.num_vertices();
  const std::uint64_t cap = capacity_bound(g.num_edges(), k, alpha);
  const UndirectedView& simple = ctx.undirected;
  work += 3 * edges.size();  // incidence + simple view setup

  std::vector<bool> assigned(edges.size(), false);
  std::vector<std::uint64_t> load(k, 0);
  std::size_t remaining = edges.size();

  // vertices with at least one unassigned incident edge, O(1) removal pool
  std::vector<std::uint32_t> pending(n, 0);
  for (VertexId v = 0; v < n; ++v)
    pending[v] = static_cast<std::uint32_t>(ctx.incidence.incident(v).size());
  std::vector<VertexId> pool;
  std::vector<std::uint32_t> pool_pos(n, kUnassigned);
  pool.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    if (pending[v] > 0) {
      pool_pos[v] = static_cast<std::uint32_t>(pool.size());
      pool.push_back(v);
    }
  }
  auto pool_remove = [&](VertexId v) {
    const std::uint32_t pos = pool_pos[v];
    if (pos == kUnassigned) return;
    const VertexId last = pool.back();
    pool[pos] = last;
    pool_pos[last] = pos;
    pool.pop_back();
    pool_pos[v] = kUnassigned;
  };
  auto drop_pending = [&](VertexId v) {
    if (--pending[v] == 0) pool_remove(v);
  };

  // core/boundary membership per expansion round, reset by epoch stamp
  enum : std::uint8_t { kFree = 0, kBoundary = 1, kCore = 2 };
  std::vector<std::uint32_t> epoch(n, 0);
  std::vector<std::uint8_t> status(n, kFree);
  std::vector<std::int64_t> ext(n, 0);
  std::uint32_t round = 0;

  std::mt19937_64 rng(seed);
  using HeapItem = std::pair<std::int64_t, VertexId>;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;

  auto state_of = [&](VertexId v) -> std::uint8_t {
    return epoch[v] == round ? status[v] : static_cast<std::uint8_t>(kFree);
  };
  auto set_state = [&](VertexId v, std::uint8_t s) {
    epoch[v] = round;
    status[v] = s;
  };
  auto enter_boundary = [&](VertexId v) {
    set_state(v, kBoundary);
    std::int64_t count = 0;
    for (VertexId w : simple.neighbors(v)) {
      ++work;
      if (state_of(w) == kFree) ++count;
      else if (state_of(w) == kBoundary) {
        --ext[w];
        heap.emplace(ext[w], w);
        ++work;
      }
    }
    ext[v] = count;
    heap.emplace(count, v);
  };

  for (std::uint32_t part = 0; part < k && remaining > 0; ++part) {
    ++round;
    heap = {};
    std::uint64_t& lp = load[part];

    while (lp < cap && remaining > 0) {
      VertexId v = static_cast<VertexId>(-1);
      // pop the boundary vertex with the fewest free neighbors; stale heap
      // entries are skipped (each ext decrement pushed a fresh pair)
      while (!heap.empty()) {
        auto [c, u] = heap.top();
        heap.pop();
        ++work;
        if (state_of(u) == kBoundary && ext[u] == c) {
          v = u;
          break;
        }
      }
      if (v == static_cast<VertexId>(-1)) {
        if (pool.empty()) break;
        const VertexId s = pool[rng() % pool.size()];
        ++work;
        enter_boundary(s);
        continue;
      }

      set_state(v, kCore);
      for (std::uint64_t eid : ctx.incidence.incident(v)) {
        ++work;
        if (assigned[eid]) continue;
        assigned[eid] = true;
        out[eid] = part;
        ++lp;
        --remaining;
        drop_pending(edges[eid].src);
        if (edges[eid].dst != edges[eid].src) drop_pending(edges[eid].dst);
        if (lp >= cap) break;
      }
      if (lp >= cap) break;
      for (VertexId w : simple.neighbors(v)) {
        ++work;
        if (state_of(w) == kFree && pending[w] > 0) enter_boundary(w);
      }
    }
  }

  // leftovers (only possible if every partition filled to the bound early)
  if (remaining > 0) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (assigned[e]) continue;
      std::uint32_t target = 0;
      for (std::uint32_t p = 1; p < k; ++p)
        if (load[p] < load[target]) target = p;
      out[e] = target;
      ++load[target];
      ++work;
    }
  }
}

}  // namespace

std::vector<std::string> registered_partitioners() {
  return {"1ds", "1dd", "crvc", "2d", "dbh", "hdrf-1.0", "hdrf-10", "hdrf-100", "2ps", "ne"};
}

bool is_registered_partitioner(const std::string& id) {
  const auto ids = registered_partitioners();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

PartitionResult partition(const Graph& g, const std::string& partitioner_id, std::uint32_t k,
                          std::uint64_t seed, double alpha) {
  if (partitioner_id == "1ds" || partitioner_id == "1dd" || partitioner_id == "crvc" ||
      partitioner_id == "2d" || partitioner_id == "hdrf-1.0" || partitioner_id == "hdrf-10" ||
      partitioner_id == "hdrf-100") {
    // these never touch the context; skip building it
    GraphContext empty;
    return partition(g, empty, partitioner_id, k, seed, alpha);
  }
  return partition(g, build_graph_context(g), partitioner_id, k, seed, alpha);
}

PartitionResult partition(const Graph& g, const GraphContext& ctx,
                          const std::string& partitioner_id, std::uint32_t k, std::uint64_t seed,
                          double alpha) {
  if (!is_registered_partitioner(partitioner_id)) {
    std::string known;
    for (const auto& id : registered_partitioners()) known += (known.empty() ? "" : ", ") + id;
    throw std::invalid_argument("unknown partitioner '" + partitioner_id + "' (known: " + known +
                                ")");
  }
  if (k < 2) throw std::invalid_argument("partition: k must be >= 2");
  if (k > g.num_edges()) throw std::invalid_argument("partition: k exceeds edge count");
  if (alpha < 1.0) throw std::invalid_argument("partition: alpha must be >= 1");
  if (alpha * static_cast<double>(g.num_edges()) / static_cast<double>(k) < 1.0)
    throw std::invalid_argument("partition: capacity bound below one edge per partition");

  PartitionResult res;
  res.partitioning.k = k;
  res.partitioning.alpha = alpha;
  res.partitioning.partitioner = partitioner_id;
  res.partitioning.seed = seed;
  res.partitioning.assignment.assign(g.num_edges(), 0);

  auto& out = res.partitioning.assignment;
  std::uint64_t work = 0;
  const auto t0 = std::chrono::steady_clock::now();
  if (partitioner_id == "1ds") run_1d(g, k, seed, true, out, work);
  else if (partitioner_id == "1dd") run_1d(g, k, seed, false, out, work);
  else if (partitioner_id == "crvc") run_crvc(g, k, seed, out, work);
  else if (partitioner_id == "2d") run_2d(g, k, seed, out, work);
  else if (partitioner_id == "dbh") run_dbh(g, ctx, k, seed, out, work);
  else if (partitioner_id == "hdrf-1.0") run_hdrf(g, k, 1.0, alpha, out, work);
  else if (partitioner_id == "hdrf-10") run_hdrf(g, k, 10.0, alpha, out, work);
  else if (partitioner_id == "hdrf-100") run_hdrf(g, k, 100.0, alpha, out, work);
  else if (partitioner_id == "2ps") run_2ps(g, ctx, k, alpha, out, work);
  else if (partitioner_id == "ne") run_ne(g, ctx, k, seed, alpha, out, work);
  const auto t1 = std::chrono::steady_clock::now();

  res.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  res.work_units = work;
  return res;
}

}  // namespace ease
