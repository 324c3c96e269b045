#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ease/hashing.hpp"
#include "ml_internal.hpp"

namespace ease::ml {

CvResult cross_validate(const ModelSpec& spec, const FeatureMatrix& x,
                        const std::vector<double>& y, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("cross validation needs folds >= 2");
  if (x.rows < folds) throw std::invalid_argument("cross validation needs rows >= folds");

  std::vector<std::size_t> order(x.rows);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  CvResult res;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < order.size(); ++i)
      (i % folds == f ? test_idx : train_idx).push_back(order[i]);

    const FeatureMatrix xtr = x.select_rows(train_idx);
    const FeatureMatrix xte = x.select_rows(test_idx);
    std::vector<double> ytr(train_idx.size()), yte(test_idx.size());
    for (std::size_t i = 0; i < train_idx.size(); ++i) ytr[i] = y[train_idx[i]];
    for (std::size_t i = 0; i < test_idx.size(); ++i) yte[i] = y[test_idx[i]];

    const ModelBundle bundle = fit_bundle(spec, xtr, ytr, hash_u64(seed, f));
    const std::vector<double> pred = bundle.predict(xte);
    FoldScore score;
    score.fold = f;
    score.mape = mape(yte, pred);
    score.rmse = rmse(yte, pred);
    res.folds.push_back(score);
    res.mean_mape += score.mape;
    res.mean_rmse += score.rmse;
  }
  res.mean_mape /= static_cast<double>(folds);
  res.mean_rmse /= static_cast<double>(folds);
  return res;
}

GridResult grid_search(const std::vector<ModelSpec>& grid, const FeatureMatrix& x,
                       const std::vector<double>& y, std::size_t folds, std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("grid search needs a nonempty grid");
  GridResult res;
  double best = 0.0;
  bool have_best = false;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const CvResult cv = cross_validate(grid[s], x, y, folds, seed);
    for (FoldScore fs : cv.folds) {
      fs.spec_index = s;
      res.table.push_back(fs);
    }
    // strict < keeps the earliest grid entry on ties
    if (!have_best || cv.mean_mape < best) {
      best = cv.mean_mape;
      have_best = true;
      res.best_index = s;
    }
  }
  res.best = grid[res.best_index];
  res.best_mean_mape = best;
  return res;
}

std::vector<ModelSpec> default_grid(const std::string& model) {
  std::vector<ModelSpec> grid;
  const auto add = [&grid](std::string kind, std::map<std::string, double> params) {
    grid.push_back({std::move(kind), std::move(params)});
  };
  if (model == "knn" || model == "auto") {
    for (double k : {3.0, 5.0, 9.0}) add("knn", {{"k", k}});
  }
  if (model == "polyridge" || model == "auto") {
    for (double degree : {1.0, 2.0, 3.0})
      for (double lambda : {1e-3, 1e-1, 1.0})
        add("polyridge", {{"degree", degree}, {"lambda", lambda}});
  }
  if (model == "rf" || model == "auto") {
    for (double trees : {100.0, 300.0})
      for (double depth : {0.0, 10.0, 20.0})
        add("rf", {{"trees", trees}, {"max_depth", depth}});
  }
  if (model == "gbt" || model == "auto") {
    for (double trees : {200.0, 500.0})
      for (double rate : {0.05, 0.1})
        for (double depth : {3.0, 6.0})
          add("gbt", {{"trees", trees}, {"rate", rate}, {"depth", depth}});
  }
  if (grid.empty()) throw std::invalid_argument("unknown model family: " + model);
  return grid;
}

std::vector<double> feature_importance(const ModelBundle& bundle) {
  if (bundle.spec.kind != "rf")
    throw std::invalid_argument("feature importance is defined for random-forest models only");
  const auto* forest = dynamic_cast<const RandomForest*>(bundle.regressor.get());
  if (!forest) throw std::invalid_argument("bundle regressor is not a random forest");
  return forest->importances(bundle.encoder.out_names.size());
}

}  // namespace ease::ml
