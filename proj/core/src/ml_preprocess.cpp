#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ease/ml.hpp"

namespace ease::ml {

void FeatureMatrix::add_numeric(std::string name, std::vector<double> values) {
  if (!names.empty() && values.size() != rows)
    throw std::invalid_argument("column length mismatch: " + name);
  rows = values.size();
  names.push_back(std::move(name));
  categorical.push_back(0);
  numeric.push_back(std::move(values));
  labels.emplace_back();
}

void FeatureMatrix::add_categorical(std::string name, std::vector<std::string> values) {
  if (!names.empty() && values.size() != rows)
    throw std::invalid_argument("column length mismatch: " + name);
  rows = values.size();
  names.push_back(std::move(name));
  categorical.push_back(1);
  numeric.emplace_back();
  labels.push_back(std::move(values));
}

FeatureMatrix FeatureMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  FeatureMatrix out;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (categorical[c]) {
      std::vector<std::string> col(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) col[i] = labels[c][idx[i]];
      out.add_categorical(names[c], std::move(col));
    } else {
      std::vector<double> col(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) col[i] = numeric[c][idx[i]];
      out.add_numeric(names[c], std::move(col));
    }
  }
  out.rows = idx.size();
  return out;
}

void Encoder::fit(const FeatureMatrix& x) {
  in_names = x.names;
  in_categorical.assign(x.categorical.begin(), x.categorical.end());
  vocab.assign(x.names.size(), {});
  out_names.clear();
  for (std::size_t c = 0; c < x.names.size(); ++c) {
    if (!x.categorical[c]) {
      out_names.push_back(x.names[c]);
      continue;
    }
    std::vector<std::string> v = x.labels[c];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    vocab[c] = v;
    for (const std::string& cat : v) out_names.push_back(x.names[c] + "=" + cat);
  }
}

Dense Encoder::transform(const FeatureMatrix& x) const {
  if (x.names != in_names)
    throw std::runtime_error("feature columns do not match the fitted schema");
  for (std::size_t c = 0; c < x.names.size(); ++c)
    if ((x.categorical[c] != 0) != (in_categorical[c] != 0))
      throw std::runtime_error("column kind mismatch: " + x.names[c]);

  Dense out(x.rows, out_names.size());
  std::size_t base = 0;
  for (std::size_t c = 0; c < x.names.size(); ++c) {
    if (!in_categorical[c]) {
      for (std::size_t r = 0; r < x.rows; ++r) out.at(r, base) = x.numeric[c][r];
      ++base;
      continue;
    }
    const auto& v = vocab[c];
    for (std::size_t r = 0; r < x.rows; ++r) {
      const std::string& cat = x.labels[c][r];
      const auto it = std::lower_bound(v.begin(), v.end(), cat);
      if (it == v.end() || *it != cat)
        throw std::runtime_error("unseen category '" + cat + "' in column " + x.names[c]);
      out.at(r, base + static_cast<std::size_t>(it - v.begin())) = 1.0;
    }
    base += v.size();
  }
  return out;
}

nlohmann::json Encoder::to_json() const {
  nlohmann::json j;
  j["in_names"] = in_names;
  j["in_categorical"] = in_categorical;
  j["vocab"] = vocab;
  j["out_names"] = out_names;
  return j;
}

Encoder Encoder::from_json(const nlohmann::json& j) {
  Encoder e;
  e.in_names = j.at("in_names").get<std::vector<std::string>>();
  e.in_categorical = j.at("in_categorical").get<std::vector<std::uint8_t>>();
  e.vocab = j.at("vocab").get<std::vector<std::vector<std::string>>>();
  e.out_names = j.at("out_names").get<std::vector<std::string>>();
  return e;
}

void Standardizer::fit(const Dense& x) {
  mean.assign(x.cols, 0.0);
  stdev.assign(x.cols, 0.0);
  if (x.rows == 0) return;
  for (std::size_t r = 0; r < x.rows; ++r)
    for (std::size_t c = 0; c < x.cols; ++c) mean[c] += x.at(r, c);
  for (std::size_t c = 0; c < x.cols; ++c) mean[c] /= static_cast<double>(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r)
    for (std::size_t c = 0; c < x.cols; ++c) {
      const double d = x.at(r, c) - mean[c];
      stdev[c] += d * d;
    }
  for (std::size_t c = 0; c < x.cols; ++c)
    stdev[c] = std::sqrt(stdev[c] / static_cast<double>(x.rows));
}

void Standardizer::transform(Dense& x) const {
  if (x.cols != mean.size()) throw std::runtime_error("standardizer width mismatch");
  for (std::size_t r = 0; r < x.rows; ++r)
    for (std::size_t c = 0; c < x.cols; ++c) {
      const double s = stdev[c] > 0.0 ? stdev[c] : 1.0;
      x.at(r, c) = (x.at(r, c) - mean[c]) / s;
    }
}

void Standardizer::inverse(Dense& x) const {
  if (x.cols != mean.size()) throw std::runtime_error("standardizer width mismatch");
  for (std::size_t r = 0; r < x.rows; ++r)
    for (std::size_t c = 0; c < x.cols; ++c) {
      const double s = stdev[c] > 0.0 ? stdev[c] : 1.0;
      x.at(r, c) = x.at(r, c) * s + mean[c];
    }
}

nlohmann::json Standardizer::to_json() const {
  nlohmann::json j;
  j["mean"] = mean;
  j["stdev"] = stdev;
  return j;
}

Standardizer Standardizer::from_json(const nlohmann::json& j) {
  Standardizer s;
  s.mean = j.at("mean").get<std::vector<double>>();
  s.stdev = j.at("stdev").get<std::vector<double>>();
  return s;
}

}  // namespace ease::ml
