#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace ease::ml {

// Column-oriented training table. Columns are either numeric or categorical;
// categorical columns are one-hot encoded before any model sees them.
struct FeatureMatrix {
  std::vector<std::string> names;
  std::vector<std::uint8_t> categorical;
  std::vector<std::vector<double>> numeric;            // per column; empty when categorical
  std::vector<std::vector<std::string>> labels;        // per column; empty when numeric
  std::size_t rows = 0;

  void add_numeric(std::string name, std::vector<double> values);
  void add_categorical(std::string name, std::vector<std::string> values);
  std::size_t num_columns() const { return names.size(); }
  FeatureMatrix select_rows(const std::vector<std::size_t>& idx) const;
};

// Dense row-major numeric matrix produced by encoding.
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  const double* row(std::size_t r) const { return a.data() + r * cols; }
};

// One-hot expansion with a sorted per-column vocabulary frozen at fit time.
// Transform rejects unknown columns and unseen categories.
struct Encoder {
  std::vector<std::string> in_names;
  std::vector<std::uint8_t> in_categorical;
  std::vector<std::vector<std::string>> vocab;         // per input column; empty when numeric
  std::vector<std::string> out_names;

  void fit(const FeatureMatrix& x);
  Dense transform(const FeatureMatrix& x) const;
  nlohmann::json to_json() const;
  static Encoder from_json(const nlohmann::json& j);
};

// Per-column z-score; zero-variance columns pass through unscaled.
struct Standardizer {
  std::vector<double> mean, stdev;

  void fit(const Dense& x);
  void transform(Dense& x) const;
  void inverse(Dense& x) const;
  nlohmann::json to_json() const;
  static Standardizer from_json(const nlohmann::json& j);
};

// A point in hyper-parameter space. Parameter keys are sorted, so id() is a
// canonical string usable for reporting and tie-breaking documentation.
struct ModelSpec {
  std::string kind;                                    // knn | polyridge | rf | gbt
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
  std::string id() const;
};

class Regressor {
 public:
  virtual ~Regressor() = default;
  virtual void fit(const Dense& x, const std::vector<double>& y, std::uint64_t seed) = 0;
  virtual std::vector<double> predict(const Dense& x) const = 0;
  virtual nlohmann::json to_json() const = 0;
};

std::unique_ptr<Regressor> make_regressor(const ModelSpec& spec);
std::unique_ptr<Regressor> regressor_from_json(const nlohmann::json& j);

// Fitted pipeline: encoder, optional standardizer (knn/polyridge only), and
// the regressor, plus enough metadata to validate prediction-time inputs.
struct ModelBundle {
  ModelSpec spec;
  std::string target;
  std::string feature_level;
  Encoder encoder;
  bool standardized = false;
  Standardizer standardizer;
  std::shared_ptr<const Regressor> regressor;

  std::vector<double> predict(const FeatureMatrix& x) const;
  nlohmann::json to_json() const;
  static ModelBundle from_json(const nlohmann::json& j);
};

ModelBundle fit_bundle(const ModelSpec& spec, const FeatureMatrix& x,
                       const std::vector<double>& y, std::uint64_t seed,
                       const std::string& target = "", const std::string& feature_level = "");

double rmse(const std::vector<double>& y, const std::vector<double>& yhat);
double mape(const std::vector<double>& y, const std::vector<double>& yhat);

struct FoldScore {
  std::size_t spec_index = 0;
  std::size_t fold = 0;
  double mape = 0.0;
  double rmse = 0.0;
};

struct CvResult {
  double mean_mape = 0.0;
  double mean_rmse = 0.0;
  std::vector<FoldScore> folds;
};

CvResult cross_validate(const ModelSpec& spec, const FeatureMatrix& x,
                        const std::vector<double>& y, std::size_t folds, std::uint64_t seed);

struct GridResult {
  ModelSpec best;
  std::size_t best_index = 0;
  double best_mean_mape = 0.0;
  std::vector<FoldScore> table;                        // one row per (spec, fold)
};

GridResult grid_search(const std::vector<ModelSpec>& grid, const FeatureMatrix& x,
                       const std::vector<double>& y, std::size_t folds, std::uint64_t seed);

// Grid for one family, or the concatenation of all four for "auto".
std::vector<ModelSpec> default_grid(const std::string& model);

// Mean impurity-decrease importance over the forest's trees, normalized to
// sum 1. Only defined for random-forest bundles; indexes encoder.out_names.
std::vector<double> feature_importance(const ModelBundle& bundle);

}  // namespace ease::ml
