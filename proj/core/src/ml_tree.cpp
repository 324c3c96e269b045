#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ease/hashing.hpp"
#include "ml_internal.hpp"

namespace ease::ml {

double Tree::predict_row(const double* x) const {
  std::int32_t i = 0;
  while (nodes[i].feature >= 0)
    i = x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right;
  return nodes[i].value;
}

void TreeTrainer::bin(const Dense& x) {
  constexpr std::size_t kMaxBins = 256;
  cuts.assign(x.cols, {});
  code.assign(x.cols, {});
  std::vector<double> distinct;
  for (std::size_t f = 0; f < x.cols; ++f) {
    distinct.clear();
    distinct.reserve(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) distinct.push_back(x.at(r, f));
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    auto& cf = cuts[f];
    if (distinct.size() > 1) {
      if (distinct.size() <= kMaxBins) {
        cf.reserve(distinct.size() - 1);
        for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
          cf.push_back(distinct[i] + (distinct[i + 1] - distinct[i]) / 2);
      } else {
        cf.reserve(kMaxBins - 1);
        for (std::size_t i = 1; i < kMaxBins; ++i) {
          const std::size_t pos = i * distinct.size() / kMaxBins;
          cf.push_back(distinct[pos - 1] + (distinct[pos] - distinct[pos - 1]) / 2);
        }
        cf.erase(std::unique(cf.begin(), cf.end()), cf.end());
      }
    }
    auto& codes = code[f];
    codes.resize(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) {
      const auto it = std::lower_bound(cf.begin(), cf.end(), x.at(r, f));
      codes[r] = static_cast<std::uint16_t>(it - cf.begin());
    }
  }
}

namespace {

struct Frame {
  std::int32_t node;
  std::uint32_t begin, end, depth;
};

}  // namespace

Tree TreeTrainer::fit(const std::vector<double>& y, std::vector<std::uint32_t>& sample,
                      const TreeParams& params, std::uint64_t tree_seed) const {
  const std::size_t num_features = cuts.size();
  const std::uint32_t mtry =
      params.max_features == 0
          ? static_cast<std::uint32_t>(num_features)
          : std::min<std::uint32_t>(params.max_features, static_cast<std::uint32_t>(num_features));

  Tree tree;
  tree.nodes.emplace_back();
  std::vector<Frame> stack{{0, 0, static_cast<std::uint32_t>(sample.size()), 0}};

  std::vector<std::uint32_t> cnt(257);
  std::vector<double> sum(257);
  std::vector<std::uint32_t> feats(num_features);

  while (!stack.empty()) {
    const Frame fr = stack.back();
    stack.pop_back();
    const std::uint32_t n = fr.end - fr.begin;

    double sum_y = 0.0, sumsq = 0.0;
    for (std::uint32_t i = fr.begin; i < fr.end; ++i) {
      const double v = y[sample[i]];
      sum_y += v;
      sumsq += v * v;
    }
    const double mean = sum_y / n;
    const double impurity = std::max(0.0, sumsq / n - mean * mean);
    TreeNode& node = tree.nodes[fr.node];
    node.value = mean;
    node.count = n;
    node.impurity = impurity;

    if (n < 2 * params.min_leaf || impurity <= 0.0 ||
        (params.max_depth != 0 && fr.depth >= params.max_depth))
      continue;

    // candidate features, ascending so ties resolve to the lowest index
    std::uint32_t num_candidates = static_cast<std::uint32_t>(num_features);
    for (std::uint32_t f = 0; f < num_features; ++f) feats[f] = f;
    if (mtry < num_features) {
      std::mt19937_64 rng(hash_pair(tree_seed, 0x6d747279ULL, static_cast<std::uint64_t>(fr.node)));
      for (std::uint32_t i = 0; i < mtry; ++i) {
        std::uniform_int_distribution<std::uint32_t> pick(i, static_cast<std::uint32_t>(num_features) - 1);
        std::swap(feats[i], feats[pick(rng)]);
      }
      std::sort(feats.begin(), feats.begin() + mtry);
      num_candidates = mtry;
    }

    const double parent_score = sum_y * sum_y / n;
    double best_gain = parent_score;
    std::int32_t best_f = -1;
    std::uint32_t best_cut = 0;

    for (std::uint32_t ci = 0; ci < num_candidates; ++ci) {
      const std::uint32_t f = feats[ci];
      const auto& cf = cuts[f];
      if (cf.empty()) continue;
      const auto& codes = code[f];
      std::uint32_t bmin = static_cast<std::uint32_t>(cf.size()), bmax = 0;
      for (std::uint32_t i = fr.begin; i < fr.end; ++i) {
        const std::uint32_t b = codes[sample[i]];
        bmin = std::min(bmin, b);
        bmax = std::max(bmax, b);
      }
      if (bmin == bmax) continue;
      std::fill(cnt.begin() + bmin, cnt.begin() + bmax + 1, 0);
      std::fill(sum.begin() + bmin, sum.begin() + bmax + 1, 0.0);
      for (std::uint32_t i = fr.begin; i < fr.end; ++i) {
        const std::uint32_t b = codes[sample[i]];
        ++cnt[b];
        sum[b] += y[sample[i]];
      }
      std::uint32_t cl = 0;
      double sl = 0.0;
      for (std::uint32_t t = bmin; t < bmax; ++t) {
        cl += cnt[t];
        sl += sum[t];
        const std::uint32_t cr = n - cl;
        if (cl < params.min_leaf || cr < params.min_leaf) continue;
        const double sr = sum_y - sl;
        const double gain = sl * sl / cl + sr * sr / cr;
        if (gain > best_gain) {
          best_gain = gain;
          best_f = static_cast<std::int32_t>(f);
          best_cut = t;
        }
      }
    }

    if (best_f < 0) continue;

    const auto& codes = code[static_cast<std::uint32_t>(best_f)];
    const std::uint32_t cut = best_cut;
    auto* base = sample.data();
    auto* mid = std::partition(base + fr.begin, base + fr.end,
                               [&](std::uint32_t r) { return codes[r] <= cut; });
    const std::uint32_t split = static_cast<std::uint32_t>(mid - base);

    node.feature = best_f;
    node.threshold = cuts[static_cast<std::uint32_t>(best_f)][cut];
    node.left = static_cast<std::int32_t>(tree.nodes.size());
    node.right = node.left + 1;
    tree.nodes.emplace_back();
    tree.nodes.emplace_back();
    stack.push_back({node.right, split, fr.end, fr.depth + 1});
    stack.push_back({node.left, fr.begin, split, fr.depth + 1});
  }
  return tree;
}

nlohmann::json tree_to_json(const Tree& t) {
  std::vector<std::int32_t> f, l, r;
  std::vector<double> th, v, imp;
  std::vector<std::uint32_t> n;
  f.reserve(t.nodes.size());
  for (const TreeNode& node : t.nodes) {
    f.push_back(node.feature);
    th.push_back(node.threshold);
    l.push_back(node.left);
    r.push_back(node.right);
    v.push_back(node.value);
    n.push_back(node.count);
    imp.push_back(node.impurity);
  }
  nlohmann::json j;
  j["f"] = f;
  j["t"] = th;
  j["l"] = l;
  j["r"] = r;
  j["v"] = v;
  j["n"] = n;
  j["i"] = imp;
  return j;
}

Tree tree_from_json(const nlohmann::json& j) {
  const auto f = j.at("f").get<std::vector<std::int32_t>>();
  const auto th = j.at("t").get<std::vector<double>>();
  const auto l = j.at("l").get<std::vector<std::int32_t>>();
  const auto r = j.at("r").get<std::vector<std::int32_t>>();
  const auto v = j.at("v").get<std::vector<double>>();
  const auto n = j.at("n").get<std::vector<std::uint32_t>>();
  const auto imp = j.at("i").get<std::vector<double>>();
  Tree t;
  t.nodes.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    t.nodes[i] = {f[i], th[i], l[i], r[i], v[i], n[i], imp[i]};
  return t;
}

void RandomForest::fit(const Dense& x, const std::vector<double>& y, std::uint64_t seed) {
  if (trees_ < 1) throw std::invalid_argument("random forest needs trees >= 1");
  TreeTrainer trainer;
  trainer.bin(x);
  TreeParams params;
  params.max_depth = depth_;
  params.min_leaf = 2;
  params.max_features = (static_cast<std::uint32_t>(x.cols) + 2) / 3;
  forest_.clear();
  forest_.reserve(trees_);
  const std::uint32_t n = static_cast<std::uint32_t>(x.rows);
  std::vector<std::uint32_t> sample(n);
  for (std::uint32_t t = 0; t < trees_; ++t) {
    // bootstrap randomness depends only on (seed, tree index)
    const std::uint64_t tree_seed = hash_pair(seed, 0xb007ULL, t);
    std::mt19937_64 rng(tree_seed);
    std::uniform_int_distribution<std::uint32_t> draw(0, n - 1);
    for (std::uint32_t i = 0; i < n; ++i) sample[i] = draw(rng);
    std::sort(sample.begin(), sample.end());
    forest_.push_back(trainer.fit(y, sample, params, tree_seed));
  }
}

std::vector<double> RandomForest::predict(const Dense& x) const {
  std::vector<double> out(x.rows, 0.0);
  for (const Tree& t : forest_)
    for (std::size_t r = 0; r < x.rows; ++r) out[r] += t.predict_row(x.row(r));
  for (double& v : out) v /= static_cast<double>(forest_.size());
  return out;
}

std::vector<double> RandomForest::importances(std::size_t num_features) const {
  std::vector<double> acc(num_features, 0.0);
  for (const Tree& t : forest_) {
    if (t.nodes.empty() || t.nodes[0].count == 0) continue;
    const double n_root = t.nodes[0].count;
    for (const TreeNode& node : t.nodes) {
      if (node.feature < 0) continue;
      const TreeNode& lc = t.nodes[node.left];
      const TreeNode& rc = t.nodes[node.right];
      const double child_impurity =
          (lc.count * lc.impurity + rc.count * rc.impurity) / node.count;
      acc[static_cast<std::size_t>(node.feature)] +=
          (node.count / n_root) * (node.impurity - child_impurity);
    }
  }
  for (double& v : acc) v /= static_cast<double>(forest_.size());
  double total = 0.0;
  for (double v : acc) total += v;
  if (total > 0.0)
    for (double& v : acc) v /= total;
  return acc;
}

nlohmann::json RandomForest::to_json() const {
  nlohmann::json j;
  j["kind"] = "rf";
  j["trees"] = trees_;
  j["max_depth"] = depth_;
  nlohmann::json arr = nlohmann::json::array();
  for (const Tree& t : forest_) arr.push_back(tree_to_json(t));
  j["forest"] = std::move(arr);
  return j;
}

std::unique_ptr<RandomForest> RandomForest::from_json(const nlohmann::json& j) {
  auto m = std::make_unique<RandomForest>(j.at("trees").get<std::uint32_t>(),
                                          j.at("max_depth").get<std::uint32_t>());
  for (const auto& t : j.at("forest")) m->forest_.push_back(tree_from_json(t));
  return m;
}

void Gbt::fit(const Dense& x, const std::vector<double>& y, std::uint64_t) {
  if (trees_ < 1) throw std::invalid_argument("gbt needs trees >= 1");
  TreeTrainer trainer;
  trainer.bin(x);
  TreeParams params;
  params.max_depth = depth_;
  base_ = 0.0;
  for (double v : y) base_ += v;
  base_ /= static_cast<double>(y.size());

  std::vector<double> residual(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) residual[i] = y[i] - base_;

  stages_.clear();
  stages_.reserve(trees_);
  std::vector<std::uint32_t> ids(x.rows);
  for (std::uint32_t t = 0; t < trees_; ++t) {
    for (std::uint32_t i = 0; i < ids.size(); ++i) ids[i] = i;
    Tree tree = trainer.fit(residual, ids, params, 0);
    for (std::size_t r = 0; r < x.rows; ++r) residual[r] -= rate_ * tree.predict_row(x.row(r));
    stages_.push_back(std::move(tree));
  }
}

std::vector<double> Gbt::predict(const Dense& x) const {
  std::vector<double> out(x.rows, base_);
  for (const Tree& t : stages_)
    for (std::size_t r = 0; r < x.rows; ++r) out[r] += rate_ * t.predict_row(x.row(r));
  return out;
}

nlohmann::json Gbt::to_json() const {
  nlohmann::json j;
  j["kind"] = "gbt";
  j["trees"] = trees_;
  j["rate"] = rate_;
  j["depth"] = depth_;
  j["base"] = base_;
  nlohmann::json arr = nlohmann::json::array();
  for (const Tree& t : stages_) arr.push_back(tree_to_json(t));
  j["stages"] = std::move(arr);
  return j;
}

std::unique_ptr<Gbt> Gbt::from_json(const nlohmann::json& j) {
  auto m = std::make_unique<Gbt>(j.at("trees").get<std::uint32_t>(), j.at("rate").get<double>(),
                                 j.at("depth").get<std::uint32_t>());
  m->base_ = j.at("base").get<double>();
  for (const auto& t : j.at("stages")) m->stages_.push_back(tree_from_json(t));
  return m;
}

}  // namespace ease::ml
