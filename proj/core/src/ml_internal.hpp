#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ease/ml.hpp"

namespace ease::ml {

// Powers-only polynomial expansion (x_j, x_j^2, ..., x_j^degree per input
// column, no cross terms) followed by a closed-form ridge solve. The
// intercept is never penalized.
class PolyRidge final : public Regressor {
 public:
  PolyRidge(std::uint32_t degree, double lambda) : degree_(degree), lambda_(lambda) {}
  void fit(const Dense& x, const std::vector<double>& y, std::uint64_t seed) override;
  std::vector<double> predict(const Dense& x) const override;
  nlohmann::json to_json() const override;
  static std::unique_ptr<PolyRidge> from_json(const nlohmann::json& j);

  std::uint32_t degree() const { return degree_; }
  const std::vector<double>& coefficients() const { return coef_; }

 private:
  std::uint32_t degree_;
  double lambda_;
  std::vector<double> coef_;                           // intercept first, then expanded columns
};

// Brute-force Euclidean k-nearest-neighbor mean. Distance ties break toward
// the lower training-row index.
class Knn final : public Regressor {
 public:
  explicit Knn(std::uint32_t k) : k_(k) {}
  void fit(const Dense& x, const std::vector<double>& y, std::uint64_t seed) override;
  std::vector<double> predict(const Dense& x) const override;
  nlohmann::json to_json() const override;
  static std::unique_ptr<Knn> from_json(const nlohmann::json& j);

 private:
  std::uint32_t k_;
  Dense train_;
  std::vector<double> y_;
};

struct TreeNode {
  std::int32_t feature = -1;                            // -1 marks a leaf
  double threshold = 0.0;                               // go left when x[feature] <= threshold
  std::int32_t left = -1, right = -1;
  double value = 0.0;
  std::uint32_t count = 0;
  double impurity = 0.0;                                // node MSE, kept for importances
};

struct Tree {
  std::vector<TreeNode> nodes;
  double predict_row(const double* x) const;
};

struct TreeParams {
  std::uint32_t max_depth = 0;                          // 0 = unbounded
  std::uint32_t max_features = 0;                       // 0 = all features
  std::uint32_t min_leaf = 1;
};

// Histogram CART: features are pre-binned (exact when a column has <= 256
// distinct values, rank-spaced otherwise); splits minimize MSE with ties
// broken toward the lowest feature index, then the lowest threshold.
struct TreeTrainer {
  std::vector<std::vector<double>> cuts;                // per feature, sorted candidate thresholds
  std::vector<std::vector<std::uint16_t>> code;         // per feature, per row bin index

  void bin(const Dense& x);
  Tree fit(const std::vector<double>& y, std::vector<std::uint32_t>& sample,
           const TreeParams& params, std::uint64_t tree_seed) const;
};

class RandomForest final : public Regressor {
 public:
  RandomForest(std::uint32_t trees, std::uint32_t max_depth) : trees_(trees), depth_(max_depth) {}
  void fit(const Dense& x, const std::vector<double>& y, std::uint64_t seed) override;
  std::vector<double> predict(const Dense& x) const override;
  nlohmann::json to_json() const override;
  static std::unique_ptr<RandomForest> from_json(const nlohmann::json& j);

  std::vector<double> importances(std::size_t num_features) const;

 private:
  std::uint32_t trees_;
  std::uint32_t depth_;
  std::vector<Tree> forest_;
};

class Gbt final : public Regressor {
 public:
  Gbt(std::uint32_t trees, double rate, std::uint32_t depth)
      : trees_(trees), rate_(rate), depth_(depth) {}
  void fit(const Dense& x, const std::vector<double>& y, std::uint64_t seed) override;
  std::vector<double> predict(const Dense& x) const override;
  nlohmann::json to_json() const override;
  static std::unique_ptr<Gbt> from_json(const nlohmann::json& j);

 private:
  std::uint32_t trees_;
  double rate_;
  std::uint32_t depth_;
  double base_ = 0.0;
  std::vector<Tree> stages_;
};

nlohmann::json tree_to_json(const Tree& t);
Tree tree_from_json(const nlohmann::json& j);

}  // namespace ease::ml
