#include <cmath>
#include <memory>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ml_internal.hpp"

namespace ease::ml {

namespace {

// columns: [1, x_0, x_0^2, ..., x_0^d, x_1, ...]
Eigen::MatrixXd expand(const Dense& x, std::uint32_t degree) {
  const std::size_t cols = 1 + static_cast<std::size_t>(degree) * x.cols;
  Eigen::MatrixXd z(x.rows, cols);
  for (std::size_t r = 0; r < x.rows; ++r) {
    z(r, 0) = 1.0;
    std::size_t c = 1;
    for (std::size_t f = 0; f < x.cols; ++f) {
      double p = 1.0;
      for (std::uint32_t d = 0; d < degree; ++d) {
        p *= x.at(r, f);
        z(r, c++) = p;
      }
    }
  }
  return z;
}

}  // namespace

void PolyRidge::fit(const Dense& x, const std::vector<double>& y, std::uint64_t) {
  if (degree_ < 1) throw std::invalid_argument("polyridge degree must be >= 1");
  if (lambda_ < 0.0) throw std::invalid_argument("polyridge lambda must be >= 0");
  const Eigen::MatrixXd z = expand(x, degree_);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  Eigen::MatrixXd a = z.transpose() * z;
  for (Eigen::Index i = 1; i < a.rows(); ++i) a(i, i) += lambda_;  // intercept unpenalized
  const Eigen::VectorXd b = z.transpose() * yv;
  const Eigen::VectorXd w = a.ldlt().solve(b);

  const double residual = (a * w - b).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (!w.allFinite() || residual > 1e-6 * scale)
    throw std::runtime_error(
        "ridge system is singular (collinear expanded features); set lambda > 0");

  coef_.assign(w.data(), w.data() + w.size());
}

std::vector<double> PolyRidge::predict(const Dense& x) const {
  const std::size_t expected = 1 + static_cast<std::size_t>(degree_) * x.cols;
  if (coef_.size() != expected)
    throw std::runtime_error("polyridge feature width does not match the fitted model");
  std::vector<double> out(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) {
    double acc = coef_[0];
    std::size_t c = 1;
    for (std::size_t f = 0; f < x.cols; ++f) {
      double p = 1.0;
      for (std::uint32_t d = 0; d < degree_; ++d) {
        p *= x.at(r, f);
        acc += coef_[c++] * p;
      }
    }
    out[r] = acc;
  }
  return out;
}

nlohmann::json PolyRidge::to_json() const {
  nlohmann::json j;
  j["kind"] = "polyridge";
  j["degree"] = degree_;
  j["lambda"] = lambda_;
  j["coef"] = coef_;
  return j;
}

std::unique_ptr<PolyRidge> PolyRidge::from_json(const nlohmann::json& j) {
  auto m = std::make_unique<PolyRidge>(j.at("degree").get<std::uint32_t>(),
                                       j.at("lambda").get<double>());
  m->coef_ = j.at("coef").get<std::vector<double>>();
  return m;
}

}  // namespace ease::ml
