#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ease/version.hpp"
#include "internal_util.hpp"
#include "ml_internal.hpp"

namespace ease::ml {

double ModelSpec::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::string ModelSpec::id() const {
  std::ostringstream os;
  os << kind << '(';
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) os << ',';
    first = false;
    os << k << '=' << detail::format_double(v);
  }
  os << ')';
  return os.str();
}

std::unique_ptr<Regressor> make_regressor(const ModelSpec& spec) {
  if (spec.kind == "knn")
    return std::make_unique<Knn>(static_cast<std::uint32_t>(spec.param("k", 5)));
  if (spec.kind == "polyridge")
    return std::make_unique<PolyRidge>(static_cast<std::uint32_t>(spec.param("degree", 1)),
                                       spec.param("lambda", 1e-3));
  if (spec.kind == "rf")
    return std::make_unique<RandomForest>(static_cast<std::uint32_t>(spec.param("trees", 100)),
                                          static_cast<std::uint32_t>(spec.param("max_depth", 0)));
  if (spec.kind == "gbt")
    return std::make_unique<Gbt>(static_cast<std::uint32_t>(spec.param("trees", 200)),
                                 spec.param("rate", 0.1),
                                 static_cast<std::uint32_t>(spec.param("depth", 3)));
  throw std::invalid_argument("unknown model kind: " + spec.kind);
}

std::unique_ptr<Regressor> regressor_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "knn") return Knn::from_json(j);
  if (kind == "polyridge") return PolyRidge::from_json(j);
  if (kind == "rf") return RandomForest::from_json(j);
  if (kind == "gbt") return Gbt::from_json(j);
  throw std::runtime_error("unknown serialized model kind: " + kind);
}

static bool uses_standardization(const std::string& kind) {
  return kind == "knn" || kind == "polyridge";
}

ModelBundle fit_bundle(const ModelSpec& spec, const FeatureMatrix& x,
                       const std::vector<double>& y, std::uint64_t seed,
                       const std::string& target, const std::string& feature_level) {
  if (x.rows != y.size()) throw std::invalid_argument("feature/target row count mismatch");
  if (x.rows < 10) throw std::invalid_argument("training requires at least 10 rows");
  for (double v : y)
    if (!std::isfinite(v)) throw std::invalid_argument("target contains non-finite values");

  ModelBundle b;
  b.spec = spec;
  b.target = target;
  b.feature_level = feature_level;
  b.encoder.fit(x);
  Dense dense = b.encoder.transform(x);
  b.standardized = uses_standardization(spec.kind);
  if (b.standardized) {
    b.standardizer.fit(dense);
    b.standardizer.transform(dense);
  }
  auto reg = make_regressor(spec);
  reg->fit(dense, y, seed);
  b.regressor = std::move(reg);
  return b;
}

std::vector<double> ModelBundle::predict(const FeatureMatrix& x) const {
  Dense dense = encoder.transform(x);
  if (standardized) standardizer.transform(dense);
  return regressor->predict(dense);
}

nlohmann::json ModelBundle::to_json() const {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = spec.kind;
  j["params"] = spec.params;
  j["target"] = target;
  j["feature_level"] = feature_level;
  j["encoder"] = encoder.to_json();
  j["standardized"] = standardized;
  if (standardized) j["standardizer"] = standardizer.to_json();
  j["regressor"] = regressor->to_json();
  return j;
}

ModelBundle ModelBundle::from_json(const nlohmann::json& j) {
  ModelBundle b;
  b.spec.kind = j.at("kind").get<std::string>();
  b.spec.params = j.at("params").get<std::map<std::string, double>>();
  b.target = j.at("target").get<std::string>();
  b.feature_level = j.at("feature_level").get<std::string>();
  b.encoder = Encoder::from_json(j.at("encoder"));
  b.standardized = j.at("standardized").get<bool>();
  if (b.standardized) b.standardizer = Standardizer::from_json(j.at("standardizer"));
  b.regressor = regressor_from_json(j.at("regressor"));
  return b;
}

double rmse(const std::vector<double>& y, const std::vector<double>& yhat) {
  if (y.size() != yhat.size() || y.empty())
    throw std::invalid_argument("rmse needs equal-length nonempty vectors");
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - yhat[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(y.size()));
}

double mape(const std::vector<double>& y, const std::vector<double>& yhat) {
  if (y.size() != yhat.size() || y.empty())
    throw std::invalid_argument("mape needs equal-length nonempty vectors");
  constexpr double kEps = 1e-10;
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    acc += std::abs(y[i] - yhat[i]) / (std::abs(y[i]) + kEps);
  return acc / static_cast<double>(y.size());
}

}  // namespace ease::ml
