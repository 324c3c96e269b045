#include <algorithm>
#include <memory>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "ml_internal.hpp"

namespace ease::ml {

void Knn::fit(const Dense& x, const std::vector<double>& y, std::uint64_t) {
  if (k_ < 1) throw std::invalid_argument("knn needs k >= 1");
  train_ = x;
  y_ = y;
}

std::vector<double> Knn::predict(const Dense& x) const {
  if (x.cols != train_.cols)
    throw std::runtime_error("knn feature width does not match the fitted model");
  const std::size_t n = train_.rows;
  const std::size_t k = std::min<std::size_t>(k_, n);
  std::vector<double> out(x.rows);
  // max-heap of the k best (distance, index) pairs, lexicographic order
  std::vector<std::pair<double, std::size_t>> heap;
  heap.reserve(k + 1);
  for (std::size_t q = 0; q < x.rows; ++q) {
    heap.clear();
    const double* qr = x.row(q);
    for (std::size_t t = 0; t < n; ++t) {
      const double* tr = train_.row(t);
      double d = 0.0;
      for (std::size_t c = 0; c < x.cols; ++c) {
        const double diff = qr[c] - tr[c];
        d += diff * diff;
      }
      const std::pair<double, std::size_t> cand{d, t};
      if (heap.size() < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end());
      } else if (cand < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end());
      }
    }
    double acc = 0.0;
    for (const auto& [d, t] : heap) acc += y_[t];
    out[q] = acc / static_cast<double>(heap.size());
  }
  return out;
}

nlohmann::json Knn::to_json() const {
  nlohmann::json j;
  j["kind"] = "knn";
  j["k"] = k_;
  j["rows"] = train_.rows;
  j["cols"] = train_.cols;
  j["x"] = train_.a;
  j["y"] = y_;
  return j;
}

std::unique_ptr<Knn> Knn::from_json(const nlohmann::json& j) {
  auto m = std::make_unique<Knn>(j.at("k").get<std::uint32_t>());
  m->train_.rows = j.at("rows").get<std::size_t>();
  m->train_.cols = j.at("cols").get<std::size_t>();
  m->train_.a = j.at("x").get<std::vector<double>>();
  m->y_ = j.at("y").get<std::vector<double>>();
  return m;
}

}  // namespace ease::ml
