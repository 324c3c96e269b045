#include "ease/procsim.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ease/hashing.hpp"
#include "ease/version.hpp"

namespace ease {

bool fixed_iteration(Algorithm a) {
  return a == Algorithm::pagerank || a == Algorithm::label_propagation ||
         a == Algorithm::synthetic;
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::pagerank: return "pagerank";
    case Algorithm::cc: return "cc";
    case Algorithm::sssp: return "sssp";
    case Algorithm::kcores: return "kcores";
    case Algorithm::label_propagation: return "label_propagation";
    case Algorithm::synthetic: return "synthetic";
  }
  throw std::logic_error("bad algorithm");
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "pagerank") return Algorithm::pagerank;
  if (name == "cc") return Algorithm::cc;
  if (name == "sssp") return Algorithm::sssp;
  if (name == "kcores") return Algorithm::kcores;
  if (name == "label_propagation") return Algorithm::label_propagation;
  if (name == "synthetic") return Algorithm::synthetic;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string workload_id(const WorkloadSpec& spec) {
  if (spec.algorithm == Algorithm::synthetic) {
    if (spec.s == 1) return "synthetic-low";
    if (spec.s == 10) return "synthetic-high";
    return "synthetic-s" + std::to_string(spec.s);
  }
  return algorithm_name(spec.algorithm);
}

WorkloadSpec parse_workload(const std::string& id) {
  WorkloadSpec spec;
  if (id == "synthetic-low") {
    spec.algorithm = Algorithm::synthetic;
    spec.s = 1;
    spec.iterations = 5;
    return spec;
  }
  if (id == "synthetic-high") {
    spec.algorithm = Algorithm::synthetic;
    spec.s = 10;
    spec.iterations = 5;
    return spec;
  }
  if (id.rfind("synthetic-s", 0) == 0) {
    spec.algorithm = Algorithm::synthetic;
    spec.s = static_cast<std::uint32_t>(std::stoul(id.substr(11)));
    spec.iterations = 5;
    return spec;
  }
  spec.algorithm = parse_algorithm(id);
  if (spec.algorithm == Algorithm::pagerank || spec.algorithm == Algorithm::label_propagation)
    spec.iterations = 10;
  else if (spec.algorithm == Algorithm::synthetic)
    spec.iterations = 5;
  else
    spec.iterations = 0;
  return spec;
}

void save_cost_model(const std::string& path, const CostModel& m, std::uint64_t seed) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = seed;
  j["alpha_e"] = m.alpha_e;
  j["alpha_v"] = m.alpha_v;
  j["beta"] = m.beta;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

CostModel load_cost_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  in >> j;
  CostModel m;
  m.alpha_e = j.at("alpha_e").get<double>();
  m.alpha_v = j.at("alpha_v").get<double>();
  m.beta = j.at("beta").get<double>();
  return m;
}

namespace {

struct Digest {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void add(std::uint64_t x) { h = mix64(h ^ x); }
  void add_double(double d) { add(std::bit_cast<std::uint64_t>(d)); }
};

// Per-superstep cost bookkeeping against a fixed cover structure.
struct CostTally {
  const CoverIndex& cover;
  const CostModel& cm;
  double msg_size;
  std::vector<std::uint64_t> active_edges;
  std::vector<std::uint64_t> active_verts;
  std::vector<std::uint64_t> msg_units;

  CostTally(const CoverIndex& c, const CostModel& m, double msg)
      : cover(c), cm(m), msg_size(msg), active_edges(c.k, 0), active_verts(c.k, 0),
        msg_units(c.k, 0) {}

  void reset() {
    std::fill(active_edges.begin(), active_edges.end(), 0);
    std::fill(active_verts.begin(), active_verts.end(), 0);
    std::fill(msg_units.begin(), msg_units.end(), 0);
  }

  // counts one active vertex: local compute on every covering worker plus
  // mirror<->master value exchange when replicated
  void add_active_vertex(VertexId v) {
    const auto row = cover.row(v);
    const std::uint32_t r = cover.replicas(v);
    if (r == 0) return;
    const std::uint32_t master = cover.master(v);
    const std::uint64_t unit = static_cast<std::uint64_t>(msg_size);
    for (std::uint32_t w = 0; w < cover.words; ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        const std::uint32_t p = w * 64 + static_cast<std::uint32_t>(std::countr_zero(bits));
        bits &= bits - 1;
        ++active_verts[p];
        if (r > 1) msg_units[p] += (p == master) ? 2 * (r - 1) * unit : 2 * unit;
      }
    }
  }

  // folds the tallies into the running totals and returns them zeroed
  void settle(double& compute_sum, double& comm_sum) {
    std::uint64_t best_msg = 0;
    double best_compute = 0.0;
    for (std::uint32_t w = 0; w < cover.k; ++w) {
      const double c = cm.alpha_e * static_cast<double>(active_edges[w]) +
                       cm.alpha_v * static_cast<double>(active_verts[w]);
      best_compute = std::max(best_compute, c);
      best_msg = std::max(best_msg, msg_units[w]);
    }
    compute_sum += best_compute;
    comm_sum += cm.beta * static_cast<double>(best_msg);
    reset();
  }
};

struct Frontier {
  std::vector<VertexId> list;
  std::vector<std::uint8_t> flag;
  explicit Frontier(VertexId n) : flag(n, 0) {}
  void add(VertexId v) {
    if (!flag[v]) {
      flag[v] = 1;
      list.push_back(v);
    }
  }
  void clear() {
    for (VertexId v : list) flag[v] = 0;
    list.clear();
  }
  bool empty() const { return list.empty(); }
};

}  // namespace

double replication_message_volume(const Graph& g, const Partitioning& p,
                                  const std::vector<bool>& active, double msg_size) {
  if (active.size() != g.num_vertices())
    throw std::invalid_argument("active set size does not match vertex count");
  const CoverIndex idx = build_cover_index(g, p);
  double volume = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!active[v]) continue;
    const std::uint32_t r = idx.replicas(v);
    if (r > 1) volume += static_cast<double>(r - 1) * 2.0 * msg_size;
  }
  return volume;
}

VertexId sssp_source(const Graph& g, std::uint64_t seed) {
  const std::vector<std::uint32_t> out = out_degrees(g);
  std::uint64_t candidates = 0;
  for (const std::uint32_t d : out)
    if (d > 0) ++candidates;
  // every graph has an edge, so some vertex has an outgoing one
  std::uint64_t pick = seed % candidates;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (out[v] == 0) continue;
    if (pick == 0) return v;
    --pick;
  }
  return 0;  // unreachable
}

ProcessingResult run_workload(const Graph& g, const Partitioning& p, const WorkloadSpec& spec,
                              const CostModel& cost, std::uint32_t workers) {
  if (workers == 0) workers = p.k;
  if (workers != p.k)
    throw std::invalid_argument("worker count must match partition count");
  if (fixed_iteration(spec.algorithm) && spec.iterations < 1)
    throw std::invalid_argument("fixed-iteration workload needs iterations >= 1");
  if (spec.algorithm == Algorithm::synthetic && spec.s < 1)
    throw std::invalid_argument("synthetic workload needs s >= 1");

  const auto t_start = std::chrono::steady_clock::now();
  const VertexId n = g.num_vertices();
  const auto edges = g.edges();
  const CoverIndex idx = build_cover_index(g, p);
  const double msg_size = spec.algorithm == Algorithm::synthetic ? 8.0 * spec.s : 8.0;
  CostTally tally(idx, cost, msg_size);

  ProcessingResult res;
  Digest digest;
  digest.add(hash_str(algorithm_name(spec.algorithm)));
  digest.add(n);

  switch (spec.algorithm) {
    case Algorithm::pagerank:
    case Algorithm::label_propagation:
    case Algorithm::synthetic: {
      // every vertex is active in every superstep: the per-superstep cost is a
      // constant and total cost scales exactly linearly with iterations
      for (std::uint32_t w = 0; w < p.k; ++w) tally.active_edges[w] = idx.edge_load[w];
      for (VertexId v = 0; v < n; ++v) tally.add_active_vertex(v);
      double step_compute = 0.0, step_comm = 0.0;
      tally.settle(step_compute, step_comm);

      if (spec.algorithm == Algorithm::pagerank) {
        const double damping = 0.85;
        const auto odeg = out_degrees(g);
        std::vector<double> pr(n, 1.0 / static_cast<double>(n));
        std::vector<double> contrib(n), acc(n);
        for (std::uint32_t it = 0; it < spec.iterations; ++it) {
          for (VertexId v = 0; v < n; ++v)
            contrib[v] = odeg[v] ? pr[v] / static_cast<double>(odeg[v]) : 0.0;
          std::fill(acc.begin(), acc.end(), 0.0);
          for (const Edge& e : edges) acc[e.dst] += contrib[e.src];
          const double base = (1.0 - damping) / static_cast<double>(n);
          for (VertexId v = 0; v < n; ++v) pr[v] = base + damping * acc[v];
        }
        for (VertexId v = 0; v < n; ++v) digest.add_double(pr[v]);
      } else if (spec.algorithm == Algorithm::label_propagation) {
        const IncidenceView inc = build_incidence_view(g);
        std::vector<std::uint32_t> lab(n), next(n);
        for (VertexId v = 0; v < n; ++v) lab[v] = v;
        std::vector<std::uint32_t> scratch;
        for (std::uint32_t it = 0; it < spec.iterations; ++it) {
          for (VertexId v = 0; v < n; ++v) {
            scratch.clear();
            for (std::uint64_t eid : inc.incident(v)) {
              const Edge& e = edges[eid];
              scratch.push_back(e.src == v ? lab[e.dst] : lab[e.src]);
              if (e.src == e.dst) scratch.push_back(lab[v]);  // self-loop: both ends
            }
            if (scratch.empty()) {
              next[v] = lab[v];
              continue;
            }
            std::sort(scratch.begin(), scratch.end());
            std::uint32_t best_label = scratch[0], best_count = 1, run = 1;
            for (std::size_t i = 1; i < scratch.size(); ++i) {
              run = scratch[i] == scratch[i - 1] ? run + 1 : 1;
              if (run > best_count) {
                best_count = run;
                best_label = scratch[i];
              }
            }
            next[v] = best_label;
          }
          lab.swap(next);
        }
        for (VertexId v = 0; v < n; ++v) digest.add(lab[v]);
      } else {
        // synthetic: an s-wide integer vector accumulates along out-edges;
        // wrapping addition keeps the result independent of edge grouping
        const std::uint32_t s = spec.s;
        std::vector<std::uint64_t> x(static_cast<std::size_t>(n) * s), nx(x.size());
        for (VertexId v = 0; v < n; ++v)
          for (std::uint32_t j = 0; j < s; ++j)
            x[static_cast<std::size_t>(v) * s + j] = hash_pair(0, v, j);
        for (std::uint32_t it = 0; it < spec.iterations; ++it) {
          for (std::size_t i = 0; i < x.size(); ++i) nx[i] = x[i] * 31;
          for (const Edge& e : edges) {
            const std::size_t src_base = static_cast<std::size_t>(e.src) * s;
            const std::size_t dst_base = static_cast<std::size_t>(e.dst) * s;
            for (std::uint32_t j = 0; j < s; ++j) nx[dst_base + j] += x[src_base + j];
          }
          x.swap(nx);
        }
        for (std::uint64_t w : x) digest.add(w);
      }

      res.iterations_executed = spec.iterations;
      res.cost_compute = step_compute * spec.iterations;
      res.cost_comm = step_comm * spec.iterations;
      res.cost_per_iteration = step_compute + step_comm;
      break;
    }

    case Algorithm::cc: {
      std::vector<std::uint32_t> lab(n), next(n);
      for (VertexId v = 0; v < n; ++v) lab[v] = v;
      Frontier active(n), changed(n);
      for (VertexId v = 0; v < n; ++v) active.add(v);
      while (!active.empty()) {
        for (std::size_t e = 0; e < edges.size(); ++e)
          if (active.flag[edges[e].src] || active.flag[edges[e].dst])
            ++tally.active_edges[p.assignment[e]];
        for (VertexId v : active.list) tally.add_active_vertex(v);
        tally.settle(res.cost_compute, res.cost_comm);

        next = lab;
        for (const Edge& e : edges) {
          if (active.flag[e.src] && lab[e.src] < next[e.dst]) next[e.dst] = lab[e.src];
          if (active.flag[e.dst] && lab[e.dst] < next[e.src]) next[e.src] = lab[e.dst];
        }
        changed.clear();
        for (VertexId v = 0; v < n; ++v)
          if (next[v] != lab[v]) changed.add(v);
        lab.swap(next);
        active.clear();
        std::swap(active, changed);
        ++res.iterations_executed;
      }
      for (VertexId v = 0; v < n; ++v) digest.add(lab[v]);
      break;
    }

    case Algorithm::sssp: {
      constexpr std::uint32_t kInf = static_cast<std::uint32_t>(-1);
      const VertexId source = sssp_source(g, spec.seed);
      std::vector<std::uint32_t> dist(n, kInf);
      dist[source] = 0;
      Frontier active(n), changed(n);
      active.add(source);
      while (!active.empty()) {
        for (std::size_t e = 0; e < edges.size(); ++e)
          if (active.flag[edges[e].src]) ++tally.active_edges[p.assignment[e]];
        for (VertexId v : active.list) tally.add_active_vertex(v);
        tally.settle(res.cost_compute, res.cost_comm);

        changed.clear();
        for (const Edge& e : edges) {
          if (!active.flag[e.src] || dist[e.src] == kInf) continue;
          const std::uint32_t cand = dist[e.src] + 1;
          if (cand < dist[e.dst]) {
            dist[e.dst] = cand;
            changed.add(e.dst);
          }
        }
        active.clear();
        std::swap(active, changed);
        ++res.iterations_executed;
      }
      for (VertexId v = 0; v < n; ++v) digest.add(dist[v]);
      break;
    }

    case Algorithm::kcores: {
      const double mean_degree = 2.0 * static_cast<double>(g.num_edges()) / n;
      const std::uint64_t kc = static_cast<std::uint64_t>(std::ceil(mean_degree));
      const IncidenceView inc = build_incidence_view(g);
      std::vector<std::uint64_t> deg(n, 0);
      for (const Edge& e : edges) {
        ++deg[e.src];
        ++deg[e.dst];
      }
      std::vector<std::uint8_t> alive(n, 1);
      Frontier active(n);
      for (VertexId v = 0; v < n; ++v) active.add(v);
      std::vector<VertexId> removed_prev;

      while (!active.empty()) {
        for (std::size_t e = 0; e < edges.size(); ++e)
          if (active.flag[edges[e].src] || active.flag[edges[e].dst])
            ++tally.active_edges[p.assignment[e]];
        for (VertexId v : active.list) tally.add_active_vertex(v);
        tally.settle(res.cost_compute, res.cost_comm);

        // removal notices from the previous superstep arrive first
        Frontier receivers(0);
        receivers.flag.assign(n, 0);
        for (VertexId d : removed_prev) {
          for (std::uint64_t eid : inc.incident(d)) {
            const Edge& e = edges[eid];
            const VertexId other = e.src == d ? e.dst : e.src;
            if (other == d) continue;
            if (alive[other]) {
              deg[other] -= (e.src == d && e.dst == d) ? 2 : 1;
              receivers.add(other);
            }
          }
        }
        std::vector<VertexId> removed_now;
        // superstep 0 checks everyone; later supersteps only notified vertices
        const std::vector<VertexId>& check =
            res.iterations_executed == 0 ? active.list : receivers.list;
        for (VertexId v : check) {
          if (alive[v] && deg[v] < kc) {
            alive[v] = 0;
            removed_now.push_back(v);
          }
        }
        ++res.iterations_executed;

        active.clear();
        for (VertexId v : removed_now) active.add(v);
        for (VertexId v : receivers.list)
          if (alive[v]) active.add(v);
        // next superstep is only needed if someone was just removed
        if (removed_now.empty()) active.clear();
        removed_prev = std::move(removed_now);
      }
      for (VertexId v = 0; v < n; ++v) digest.add(alive[v]);
      break;
    }
  }

  res.cost_total = res.cost_compute + res.cost_comm;
  res.output_digest = digest.h;
  const auto t_end = std::chrono::steady_clock::now();
  res.wall_ms = std::chrono::duration<double, std::milli>(t_end - t_start).count();
  return res;
}

void save_processing_result(const std::string& path, const ProcessingResult& r,
                            const WorkloadSpec& spec, std::uint64_t seed) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = seed;
  j["workload"] = workload_id(spec);
  j["iterations_executed"] = r.iterations_executed;
  j["cost_total"] = r.cost_total;
  j["cost_compute"] = r.cost_compute;
  j["cost_comm"] = r.cost_comm;
  if (r.cost_per_iteration)
    j["cost_per_iteration"] = *r.cost_per_iteration;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(r.output_digest));
  j["output_digest"] = hex;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ease
