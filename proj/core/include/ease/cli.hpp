// Command line front end: one subcommand per pipeline stage
// (generate, properties, partition, simulate, dataset, train, predict,
// select, report). Subcommands compose: generate -> dataset -> train -> select.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ease {

// Shared parameter and path scheme each subcommand resolves its defaults
// from; explicit flags override individual entries. Relative paths are
// rooted at the working directory.
struct PipelineConfig {
  std::string out_dir = "ease-out";
  std::uint64_t seed = 0;                       // EASE_SEED when set
  std::uint64_t scale = 1;
  std::vector<std::string> partitioners;        // empty = all registered
  std::vector<std::uint32_t> ks = {4, 16, 64};  // desk-scale default
  std::vector<std::string> workloads;           // empty = dataset default
  double alpha = 1.05;
  double alpha_e = 1.0, alpha_v = 0.1, beta = 0.05;
  std::string feature_level = "advanced";
  unsigned jobs = 0;                            // 0 = hardware concurrency

  std::string graphs_dir() const { return out_dir + "/graphs"; }
  std::string manifest_path() const { return graphs_dir() + "/manifest.csv"; }
  std::string quality_path() const { return out_dir + "/quality.csv"; }
  std::string runtime_path() const { return out_dir + "/runtime.csv"; }
  std::string suite_path() const { return out_dir + "/suite.json"; }
  std::string model_path() const { return out_dir + "/model.json"; }
  std::string selection_path() const { return out_dir + "/selection.json"; }
  std::string comparison_path() const { return out_dir + "/comparison.json"; }
};

// Runs one subcommand. Returns the process exit status: 0 on success, 2 on
// usage errors, 1 on runtime failures; errors print one "error: ..." line to
// stderr. args excludes the program name.
int run_command(const std::vector<std::string>& args);
int run_command(int argc, const char* const* argv);

}  // namespace ease
