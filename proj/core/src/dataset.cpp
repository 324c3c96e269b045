#include "ease/dataset.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "ease/hashing.hpp"
#include "ease/version.hpp"
#include "csv_io.hpp"
#include "internal_util.hpp"

namespace ease {

std::uint64_t dataset_cell_seed(std::uint64_t base_seed, const std::string& graph_id,
                                const std::string& partitioner, std::uint32_t k) {
  return hash_pair(hash_u64(base_seed, hash_str(graph_id)), hash_str(partitioner), k);
}

void append_dataset_rows(const SuiteGraph& sg, const DatasetOptions& opt,
                         std::vector<QualityRow>* quality_out,
                         std::vector<RuntimeRow>* runtime_out,
                         std::vector<std::string>* skip_log) {
  if (!sg.graph) throw std::invalid_argument("suite graph has no loaded graph");
  const Graph& g = *sg.graph;
  const std::vector<std::string> partitioners =
      opt.partitioners.empty() ? registered_partitioners() : opt.partitioners;

  const FeatureLevel level = quality_out ? FeatureLevel::advanced : FeatureLevel::basic;
  const GraphProperties props = compute_properties(g, level);

  // set of ks to actually partition: quality ks plus the runtime k
  std::vector<std::uint32_t> ks;
  if (quality_out) ks = opt.ks;
  if (runtime_out && std::find(ks.begin(), ks.end(), opt.runtime_k) == ks.end())
    ks.push_back(opt.runtime_k);
  std::sort(ks.begin(), ks.end());

  std::vector<WorkloadSpec> workloads;
  if (runtime_out)
    for (const std::string& w : opt.workloads) {
      WorkloadSpec spec = parse_workload(w);
      spec.seed = hash_pair(opt.seed, hash_str(sg.graph_id), hash_str(w));
      workloads.push_back(spec);
    }

  const GraphContext ctx = build_graph_context(g);
  for (const std::string& pid : partitioners) {
    for (std::uint32_t k : ks) {
      const bool for_quality =
          quality_out && std::find(opt.ks.begin(), opt.ks.end(), k) != opt.ks.end();
      const bool for_runtime = runtime_out && k == opt.runtime_k;
      if (!for_quality && !for_runtime) continue;

      const std::uint64_t cell_seed = dataset_cell_seed(opt.seed, sg.graph_id, pid, k);
      PartitionResult pr;
      try {
        pr = partition(g, ctx, pid, k, cell_seed, opt.alpha);
      } catch (const std::exception& ex) {
        if (skip_log)
          skip_log->push_back(sg.graph_id + "," + pid + "," + std::to_string(k) + ": " +
                              ex.what());
        continue;
      }
      const QualityMetrics q = compute_quality(g, pr.partitioning);

      if (for_quality) {
        QualityRow row;
        row.graph_id = sg.graph_id;
        row.graph_type = sg.graph_type;
        row.num_vertices = g.num_vertices();
        row.num_edges = g.num_edges();
        row.mean_degree = props.mean_degree;
        row.density = props.density;
        row.indeg_skew = props.indeg_skew;
        row.outdeg_skew = props.outdeg_skew;
        row.avg_triangles = props.avg_triangles;
        row.avg_lcc = props.avg_lcc;
        row.partitioner = pid;
        row.k = k;
        row.seed = cell_seed;
        row.partition_time_ms = static_cast<double>(pr.work_units);
        row.rf = q.rf;
        row.b_edge = q.b_edge;
        row.b_v = q.b_v;
        row.b_src = q.b_src;
        row.b_dst = q.b_dst;
        quality_out->push_back(std::move(row));
      }

      if (for_runtime) {
        for (const WorkloadSpec& spec : workloads) {
          ProcessingResult res;
          try {
            res = run_workload(g, pr.partitioning, spec, opt.cost);
          } catch (const std::exception& ex) {
            if (skip_log)
              skip_log->push_back(sg.graph_id + "," + pid + "," + std::to_string(k) + "," +
                                  workload_id(spec) + ": " + ex.what());
            continue;
          }
          RuntimeRow row;
          row.graph_id = sg.graph_id;
          row.graph_type = sg.graph_type;
          row.num_vertices = g.num_vertices();
          row.num_edges = g.num_edges();
          row.mean_degree = props.mean_degree;
          row.density = props.density;
          row.indeg_skew = props.indeg_skew;
          row.outdeg_skew = props.outdeg_skew;
          row.partitioner = pid;
          row.k = k;
          row.seed = cell_seed;
          row.partition_time_ms = static_cast<double>(pr.work_units);
          row.rf = q.rf;
          row.b_edge = q.b_edge;
          row.b_v = q.b_v;
          row.b_src = q.b_src;
          row.b_dst = q.b_dst;
          row.workload = workload_id(spec);
          row.iterations = res.iterations_executed;
          row.target_kind = res.cost_per_iteration ? "cost_per_iteration" : "cost_total";
          row.target = res.cost_per_iteration ? *res.cost_per_iteration : res.cost_total;
          runtime_out->push_back(std::move(row));
        }
      }
    }
  }
}

std::vector<QualityRow> build_quality_dataset(const std::vector<SuiteGraph>& suite,
                                              const DatasetOptions& opt,
                                              std::vector<std::string>* skip_log) {
  if (suite.empty()) throw std::invalid_argument("empty suite");
  std::vector<QualityRow> rows;
  for (const SuiteGraph& sg : suite) append_dataset_rows(sg, opt, &rows, nullptr, skip_log);
  sort_rows(rows);
  return rows;
}

std::vector<RuntimeRow> build_runtime_dataset(const std::vector<SuiteGraph>& suite,
                                              const DatasetOptions& opt,
                                              std::vector<std::string>* skip_log) {
  if (suite.empty()) throw std::invalid_argument("empty suite");
  std::vector<RuntimeRow> rows;
  for (const SuiteGraph& sg : suite) append_dataset_rows(sg, opt, nullptr, &rows, skip_log);
  sort_rows(rows);
  return rows;
}

void sort_rows(std::vector<QualityRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const QualityRow& a, const QualityRow& b) {
    return std::tie(a.graph_id, a.partitioner, a.k) < std::tie(b.graph_id, b.partitioner, b.k);
  });
}

void sort_rows(std::vector<RuntimeRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const RuntimeRow& a, const RuntimeRow& b) {
    return std::tie(a.graph_id, a.partitioner, a.k, a.workload) <
           std::tie(b.graph_id, b.partitioner, b.k, b.workload);
  });
}

void write_quality_csv(const std::string& path, std::vector<QualityRow> rows) {
  sort_rows(rows);
  detail::CsvWriter w(path);
  w.row({"schema_version", "graph_id", "graph_type", "num_vertices", "num_edges", "mean_degree",
         "density", "indeg_skew", "outdeg_skew", "avg_triangles", "avg_lcc", "partitioner", "k",
         "seed", "partition_time_ms", "rf", "b_edge", "b_v", "b_src", "b_dst"});
  for (const QualityRow& r : rows) {
    w.row({detail::format_u64(kSchemaVersion), r.graph_id, r.graph_type,
           detail::format_u64(r.num_vertices), detail::format_u64(r.num_edges),
           detail::format_double(r.mean_degree), detail::format_double(r.density),
           detail::format_double(r.indeg_skew), detail::format_double(r.outdeg_skew),
           detail::format_double(r.avg_triangles), detail::format_double(r.avg_lcc),
           r.partitioner, detail::format_u64(r.k), detail::format_u64(r.seed),
           detail::format_double(r.partition_time_ms), detail::format_double(r.rf),
           detail::format_double(r.b_edge), detail::format_double(r.b_v),
           detail::format_double(r.b_src), detail::format_double(r.b_dst)});
  }
  w.close();
}

void write_runtime_csv(const std::string& path, std::vector<RuntimeRow> rows) {
  sort_rows(rows);
  detail::CsvWriter w(path);
  w.row({"schema_version", "graph_id", "graph_type", "num_vertices", "num_edges", "mean_degree",
         "density", "indeg_skew", "outdeg_skew", "partitioner", "k", "seed", "partition_time_ms",
         "rf", "b_edge", "b_v", "b_src", "b_dst", "workload", "iterations", "target_kind",
         "target"});
  for (const RuntimeRow& r : rows) {
    w.row({detail::format_u64(kSchemaVersion), r.graph_id, r.graph_type,
           detail::format_u64(r.num_vertices), detail::format_u64(r.num_edges),
           detail::format_double(r.mean_degree), detail::format_double(r.density),
           detail::format_double(r.indeg_skew), detail::format_double(r.outdeg_skew),
           r.partitioner, detail::format_u64(r.k), detail::format_u64(r.seed),
           detail::format_double(r.partition_time_ms), detail::format_double(r.rf),
           detail::format_double(r.b_edge), detail::format_double(r.b_v),
           detail::format_double(r.b_src), detail::format_double(r.b_dst), r.workload,
           detail::format_u64(r.iterations), r.target_kind, detail::format_double(r.target)});
  }
  w.close();
}

std::vector<QualityRow> read_quality_csv(const std::string& path) {
  const auto t = detail::read_csv(path);
  const std::size_t gid = t.column("graph_id"), gtype = t.column("graph_type");
  const std::size_t nv = t.column("num_vertices"), ne = t.column("num_edges");
  const std::size_t md = t.column("mean_degree"), de = t.column("density");
  const std::size_t is = t.column("indeg_skew"), os = t.column("outdeg_skew");
  const std::size_t tri = t.column("avg_triangles"), lcc = t.column("avg_lcc");
  const std::size_t part = t.column("partitioner"), kc = t.column("k"), sc = t.column("seed");
  const std::size_t pt = t.column("partition_time_ms");
  const std::size_t rf = t.column("rf"), be = t.column("b_edge"), bv = t.column("b_v");
  const std::size_t bs = t.column("b_src"), bd = t.column("b_dst");
  std::vector<QualityRow> rows;
  rows.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    QualityRow r;
    r.graph_id = row[gid];
    r.graph_type = row[gtype];
    r.num_vertices = detail::parse_u64(row[nv]);
    r.num_edges = detail::parse_u64(row[ne]);
    r.mean_degree = detail::parse_double(row[md]);
    r.density = detail::parse_double(row[de]);
    r.indeg_skew = detail::parse_double(row[is]);
    r.outdeg_skew = detail::parse_double(row[os]);
    r.avg_triangles = detail::parse_double(row[tri]);
    r.avg_lcc = detail::parse_double(row[lcc]);
    r.partitioner = row[part];
    r.k = static_cast<std::uint32_t>(detail::parse_u64(row[kc]));
    r.seed = detail::parse_u64(row[sc]);
    r.partition_time_ms = detail::parse_double(row[pt]);
    r.rf = detail::parse_double(row[rf]);
    r.b_edge = detail::parse_double(row[be]);
    r.b_v = detail::parse_double(row[bv]);
    r.b_src = detail::parse_double(row[bs]);
    r.b_dst = detail::parse_double(row[bd]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<RuntimeRow> read_runtime_csv(const std::string& path) {
  const auto t = detail::read_csv(path);
  const std::size_t gid = t.column("graph_id"), gtype = t.column("graph_type");
  const std::size_t nv = t.column("num_vertices"), ne = t.column("num_edges");
  const std::size_t md = t.column("mean_degree"), de = t.column("density");
  const std::size_t is = t.column("indeg_skew"), os = t.column("outdeg_skew");
  const std::size_t part = t.column("partitioner"), kc = t.column("k"), sc = t.column("seed");
  const std::size_t pt = t.column("partition_time_ms");
  const std::size_t rf = t.column("rf"), be = t.column("b_edge"), bv = t.column("b_v");
  const std::size_t bs = t.column("b_src"), bd = t.column("b_dst");
  const std::size_t wl = t.column("workload"), it = t.column("iterations");
  const std::size_t tk = t.column("target_kind"), tg = t.column("target");
  std::vector<RuntimeRow> rows;
  rows.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    RuntimeRow r;
    r.graph_id = row[gid];
    r.graph_type = row[gtype];
    r.num_vertices = detail::parse_u64(row[nv]);
    r.num_edges = detail::parse_u64(row[ne]);
    r.mean_degree = detail::parse_double(row[md]);
    r.density = detail::parse_double(row[de]);
    r.indeg_skew = detail::parse_double(row[is]);
    r.outdeg_skew = detail::parse_double(row[os]);
    r.partitioner = row[part];
    r.k = static_cast<std::uint32_t>(detail::parse_u64(row[kc]));
    r.seed = detail::parse_u64(row[sc]);
    r.partition_time_ms = detail::parse_double(row[pt]);
    r.rf = detail::parse_double(row[rf]);
    r.b_edge = detail::parse_double(row[be]);
    r.b_v = detail::parse_double(row[bv]);
    r.b_src = detail::parse_double(row[bs]);
    r.b_dst = detail::parse_double(row[bd]);
    r.workload = row[wl];
    r.iterations = static_cast<std::uint32_t>(detail::parse_u64(row[it]));
    r.target_kind = row[tk];
    r.target = detail::parse_double(row[tg]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ease
