#include <cmath>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "ease/hashing.hpp"
#include "ease/ml.hpp"
#include "oracles.hpp"

using namespace ease::ml;

namespace {

Dense column(const std::vector<double>& v) {
  Dense d(v.size(), 1);
  for (std::size_t r = 0; r < v.size(); ++r) d.at(r, 0) = v[r];
  return d;
}

// y = 2x + 1 over n evenly spread points, as a one-column matrix
FeatureMatrix line_features(std::size_t n, std::vector<double>* y) {
  std::vector<double> xs(n);
  y->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = static_cast<double>(i);
    (*y)[i] = 2.0 * xs[i] + 1.0;
  }
  FeatureMatrix m;
  m.add_numeric("x", xs);
  return m;
}

}  // namespace

TEST_SUITE("ml") {

TEST_CASE("error metrics match their closed forms") {
  CHECK(rmse({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));
  CHECK(mape({2.0, 4.0}, {1.0, 6.0}) == doctest::Approx(0.5).epsilon(1e-9));
  // mape is invariant under scaling both vectors
  CHECK(mape({20.0, 40.0}, {10.0, 60.0}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rmse({1.0}, {1.0}) == 0.0);
}

TEST_CASE("feature matrix columns stay aligned") {
  FeatureMatrix m;
  m.add_numeric("a", {1.0, 2.0, 3.0});
  m.add_categorical("b", {"x", "y", "x"});
  CHECK(m.rows == 3);
  CHECK(m.num_columns() == 2);
  CHECK_THROWS(m.add_numeric("c", {1.0}));

  const FeatureMatrix sub = m.select_rows({2, 0});
  CHECK(sub.rows == 2);
  CHECK(sub.numeric[0] == std::vector<double>{3.0, 1.0});
  CHECK(sub.labels[1] == std::vector<std::string>{"x", "x"});
}

TEST_CASE("encoder one-hot expands a sorted vocabulary") {
  FeatureMatrix m;
  m.add_numeric("deg", {1.5, 2.5});
  m.add_categorical("part", {"ne", "dbh"});
  Encoder e;
  e.fit(m);
  CHECK(e.out_names == std::vector<std::string>{"deg", "part=dbh", "part=ne"});

  const Dense d = e.transform(m);
  REQUIRE(d.cols == 3);
  CHECK(d.at(0, 0) == 1.5);
  CHECK(d.at(0, 1) == 0.0);  // row 0 is "ne"
  CHECK(d.at(0, 2) == 1.0);
  CHECK(d.at(1, 1) == 1.0);  // row 1 is "dbh"
  CHECK(d.at(1, 2) == 0.0);

  FeatureMatrix unseen;
  unseen.add_numeric("deg", {1.0});
  unseen.add_categorical("part", {"hdrf"});
  CHECK_THROWS_WITH_AS(e.transform(unseen), doctest::Contains("unseen category"),
                       std::runtime_error);

  FeatureMatrix renamed;
  renamed.add_numeric("degree", {1.0});
  renamed.add_categorical("part", {"ne"});
  CHECK_THROWS(e.transform(renamed));

  const Encoder back = Encoder::from_json(e.to_json());
  CHECK(back.out_names == e.out_names);
  CHECK(back.vocab == e.vocab);
}

TEST_CASE("standardizer z-scores and inverts, constant columns pass through") {
  Dense d(4, 2);
  for (std::size_t r = 0; r < 4; ++r) {
    d.at(r, 0) = static_cast<double>(r);  // mean 1.5, population stdev sqrt(1.25)
    d.at(r, 1) = 7.0;                     // zero variance
  }
  Standardizer s;
  s.fit(d);
  CHECK(s.mean[0] == doctest::Approx(1.5));
  CHECK(s.stdev[0] == doctest::Approx(std::sqrt(1.25)));
  CHECK(s.stdev[1] == 0.0);

  Dense t = d;
  s.transform(t);
  CHECK(t.at(0, 0) == doctest::Approx((0.0 - 1.5) / std::sqrt(1.25)));
  CHECK(t.at(2, 1) == 0.0);  // (7 - 7) / 1
  s.inverse(t);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 2; ++c) CHECK(t.at(r, c) == doctest::Approx(d.at(r, c)));

  const Standardizer back = Standardizer::from_json(s.to_json());
  CHECK(back.mean == s.mean);
  CHECK(back.stdev == s.stdev);
}

TEST_CASE("model spec ids are canonical") {
  ModelSpec a{"gbt", {{"rate", 0.1}, {"trees", 50.0}, {"depth", 3.0}}};
  CHECK(a.id() == "gbt(depth=3,rate=0.1,trees=50)");
  CHECK(ModelSpec{"knn", {{"k", 5.0}}}.id() == "knn(k=5)");
  CHECK(a.param("rate", 9.9) == 0.1);
  CHECK(a.param("missing", 9.9) == 9.9);
}

TEST_CASE("polynomial ridge recovers exact polynomials at lambda 0") {
  std::vector<double> xs{0, 1, 2, 3, 4, 5}, lin(6), quad(6);
  for (std::size_t i = 0; i < 6; ++i) {
    lin[i] = 2.0 * xs[i] + 1.0;
    quad[i] = xs[i] * xs[i] - 3.0 * xs[i] + 2.0;
  }
  const Dense d = column(xs);

  auto m1 = make_regressor({"polyridge", {{"degree", 1.0}, {"lambda", 0.0}}});
  m1->fit(d, lin, 0);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(m1->predict(d)[i] == doctest::Approx(lin[i]).epsilon(1e-10));

  auto m2 = make_regressor({"polyridge", {{"degree", 2.0}, {"lambda", 0.0}}});
  m2->fit(d, quad, 0);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(m2->predict(d)[i] == doctest::Approx(quad[i]).epsilon(1e-9));

  // duplicated feature column is singular without regularization
  Dense dup(6, 2);
  for (std::size_t r = 0; r < 6; ++r) dup.at(r, 0) = dup.at(r, 1) = xs[r];
  auto m3 = make_regressor({"polyridge", {{"degree", 1.0}, {"lambda", 0.0}}});
  CHECK_THROWS(m3->fit(dup, lin, 0));
  auto m4 = make_regressor({"polyridge", {{"degree", 1.0}, {"lambda", 1e-3}}});
  m4->fit(dup, lin, 0);  // ridge resolves the collinearity
}

TEST_CASE("knn averages the nearest targets") {
  const std::vector<double> xs{0.0, 1.0, 2.0, 10.0};
  const std::vector<double> ys{1.0, 2.0, 3.0, 100.0};
  const Dense d = column(xs);

  auto one = make_regressor({"knn", {{"k", 1.0}}});
  one->fit(d, ys, 0);
  CHECK(one->predict(d) == ys);  // memorization at k = 1

  auto three = make_regressor({"knn", {{"k", 3.0}}});
  three->fit(d, ys, 0);
  CHECK(three->predict(column({1.0}))[0] == doctest::Approx(2.0));     // {0,1,2}
  CHECK(three->predict(column({9.0}))[0] == doctest::Approx(35.0));    // {1,2,10}
}

TEST_CASE("a depth-1 forest recovers exact cluster means") {
  // two well separated clusters with constant targets: any bootstrap that
  // keeps both clusters yields leaves predicting exactly 1 and 5
  std::vector<double> xs, ys;
  for (int i = 0; i < 8; ++i) {
    xs.push_back(0.1 * i);
    ys.push_back(1.0);
    xs.push_back(10.0 + 0.1 * i);
    ys.push_back(5.0);
  }
  auto rf = make_regressor({"rf", {{"trees", 4.0}, {"max_depth", 1.0}}});
  rf->fit(column(xs), ys, 7);
  const auto pred = rf->predict(column({0.35, 10.35}));
  CHECK(pred[0] == 1.0);
  CHECK(pred[1] == 5.0);
}

TEST_CASE("boosting drives training error down geometrically") {
  // 4 points, depth 3, min leaf 1: each stage memorizes its residual, so the
  // training residual shrinks by (1 - rate) per tree
  const std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> ys{4.0, -1.0, 2.5, 7.0};
  auto gbt = make_regressor({"gbt", {{"trees", 50.0}, {"rate", 0.3}, {"depth", 3.0}}});
  gbt->fit(column(xs), ys, 0);
  const auto pred = gbt->predict(column(xs));
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(pred[i] - ys[i]) < 1e-6);

  auto again = make_regressor({"gbt", {{"trees", 50.0}, {"rate", 0.3}, {"depth", 3.0}}});
  again->fit(column(xs), ys, 0);
  CHECK(again->predict(column(xs)) == pred);
}

TEST_CASE("cross validation is deterministic and scores exact models at zero") {
  std::vector<double> y;
  const FeatureMatrix m = line_features(30, &y);
  const ModelSpec exact{"polyridge", {{"degree", 1.0}, {"lambda", 0.0}}};
  const CvResult a = cross_validate(exact, m, y, 5, 42);
  const CvResult b = cross_validate(exact, m, y, 5, 42);
  CHECK(a.folds.size() == 5);
  CHECK(a.mean_mape == b.mean_mape);
  CHECK(a.mean_rmse == b.mean_rmse);
  CHECK(a.mean_mape < 1e-9);

  const CvResult shuffled = cross_validate(exact, m, y, 5, 43);
  CHECK(shuffled.folds.size() == 5);  // different seed, same cardinality
}

TEST_CASE("grid search picks the family that fits the data") {
  std::vector<double> y;
  const FeatureMatrix m = line_features(30, &y);
  const std::vector<ModelSpec> grid{
      {"knn", {{"k", 1.0}}},
      {"polyridge", {{"degree", 1.0}, {"lambda", 0.0}}},
  };
  const GridResult r = grid_search(grid, m, y, 5, 42);
  CHECK(r.best.kind == "polyridge");
  CHECK(r.best_index == 1);
  CHECK(r.table.size() == grid.size() * 5);
  CHECK(r.best_mean_mape < 1e-9);

  // identical specs tie; the earliest index wins
  const GridResult tie = grid_search({grid[1], grid[1]}, m, y, 5, 42);
  CHECK(tie.best_index == 0);
}

TEST_CASE("default grids have the documented cardinality") {
  CHECK(default_grid("knn").size() == 3);
  CHECK(default_grid("polyridge").size() == 9);
  CHECK(default_grid("rf").size() == 6);
  CHECK(default_grid("gbt").size() == 8);
  CHECK(default_grid("auto").size() == 26);
  CHECK_THROWS(default_grid("svm"));
}

TEST_CASE("fit_bundle standardizes only the distance and linear families") {
  std::vector<double> y;
  const FeatureMatrix m = line_features(12, &y);
  CHECK(fit_bundle({"knn", {{"k", 1.0}}}, m, y, 0).standardized);
  CHECK(fit_bundle({"polyridge", {{"degree", 1.0}, {"lambda", 0.0}}}, m, y, 0).standardized);
  CHECK_FALSE(fit_bundle({"rf", {{"trees", 2.0}, {"max_depth", 3.0}}}, m, y, 0).standardized);
  CHECK_FALSE(
      fit_bundle({"gbt", {{"trees", 5.0}, {"rate", 0.3}, {"depth", 3.0}}}, m, y, 0).standardized);

  std::vector<double> small_y;
  const FeatureMatrix small = line_features(9, &small_y);
  CHECK_THROWS_WITH_AS(fit_bundle({"knn", {{"k", 1.0}}}, small, small_y, 0),
                       doctest::Contains("at least 10 rows"), std::invalid_argument);

  const ModelBundle b =
      fit_bundle({"knn", {{"k", 1.0}}}, m, y, 0, "rf", "advanced");
  CHECK(b.target == "rf");
  CHECK(b.feature_level == "advanced");
  CHECK(b.predict(m) == y);  // standardization does not break memorization
}

TEST_CASE("bundles round-trip through json for every family") {
  std::vector<double> y;
  FeatureMatrix m = line_features(14, &y);
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < 14; ++i) parts.push_back(i % 2 ? "ne" : "dbh");
  m.add_categorical("partitioner", parts);

  const std::vector<ModelSpec> specs{
      {"knn", {{"k", 3.0}}},
      {"polyridge", {{"degree", 2.0}, {"lambda", 0.001}}},
      {"rf", {{"trees", 3.0}, {"max_depth", 3.0}}},
      {"gbt", {{"trees", 5.0}, {"rate", 0.3}, {"depth", 2.0}}},
  };
  for (const ModelSpec& spec : specs) {
    const ModelBundle b = fit_bundle(spec, m, y, 11, "quality:rf", "basic");
    const ModelBundle back = ModelBundle::from_json(b.to_json());
    CHECK(back.spec.id() == spec.id());
    CHECK(back.target == "quality:rf");
    CHECK(back.predict(m) == b.predict(m));
  }
}

TEST_CASE("forest importances sum to one and ignore constant columns") {
  std::vector<double> xs(40), noise(40, 3.0), y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    xs[i] = static_cast<double>(i);
    y[i] = 3.0 * xs[i] + 1.0;
  }
  FeatureMatrix m;
  m.add_numeric("signal", xs);
  m.add_numeric("flat", noise);
  const ModelBundle rf =
      fit_bundle({"rf", {{"trees", 4.0}, {"max_depth", 4.0}}}, m, y, 3);
  const std::vector<double> imp = feature_importance(rf);
  REQUIRE(imp.size() == 2);
  CHECK(imp[0] + imp[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(imp[0] == doctest::Approx(1.0));  // constant column can never split
  CHECK(imp[1] == 0.0);

  std::vector<double> ly;
  const FeatureMatrix lm = line_features(12, &ly);
  const ModelBundle knn = fit_bundle({"knn", {{"k", 1.0}}}, lm, ly, 0);
  CHECK_THROWS(feature_importance(knn));
}

}  // TEST_SUITE
