#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "molbench/core/matrix.hpp"
#include "molbench/core/rng.hpp"

namespace molbench::models {

struct RfConfig {
  int n_trees = 100;
  int max_depth = 16;
  int min_leaf = 1;
  // Candidate features per split; -1 means floor(sqrt(d)).
  int n_feature_candidates = -1;
  bool bootstrap = true;
  uint64_t seed = 0;
};

// CART regression trees over binary fingerprint columns, split criterion =
// variance (SSE) reduction, threshold fixed at 0.5.  Per-tree seeds derive
// as master seed + tree index.
class RandomForest {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.5;
    int left = -1;
    int right = -1;
    double value = 0.0;
  };
  using Tree = std::vector<Node>;

  RfConfig config;
  std::vector<Tree> trees;

  static RandomForest fit(const core::Matrix& X, const Eigen::VectorXd& y, RfConfig cfg) {
    if (X.rows() < 1) throw std::invalid_argument("RandomForest::fit: need >= 1 sample");
    if (X.rows() != y.rows())
      throw std::invalid_argument("RandomForest::fit: X rows and y length differ");
    if (cfg.n_trees < 1) throw std::invalid_argument("RandomForest::fit: n_trees >= 1");
    if (cfg.min_leaf < 1) throw std::invalid_argument("RandomForest::fit: min_leaf >= 1");
    const int d = static_cast<int>(X.cols());
    int mtry = cfg.n_feature_candidates;
    if (mtry <= 0) mtry = std::max(1, static_cast<int>(std::floor(std::sqrt(d))));
    mtry = std::min(mtry, d);

    RandomForest rf;
    rf.config = cfg;
    rf.trees.reserve(cfg.n_trees);
    for (int t = 0; t < cfg.n_trees; ++t) {
      core::Rng rng(cfg.seed + static_cast<uint64_t>(t));
      std::vector<int> sample(X.rows());
      if (cfg.bootstrap) {
        for (int i = 0; i < X.rows(); ++i)
          sample[i] = static_cast<int>(rng.below(static_cast<uint64_t>(X.rows())));
      } else {
        std::iota(sample.begin(), sample.end(), 0);
      }
      Tree tree;
      build_node(tree, X, y, std::move(sample), 0, cfg, mtry, rng);
      rf.trees.push_back(std::move(tree));
    }
    return rf;
  }

  Eigen::VectorXd predict(const core::Matrix& X) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(X.rows());
    for (const Tree& tree : trees)
      for (long i = 0; i < X.rows(); ++i) out(i) += predict_row(tree, X.row(i));
    return out / static_cast<double>(trees.size());
  }

  static double predict_row(const Tree& tree, const Eigen::RowVectorXd& x) {
    int node = 0;
    while (tree[node].feature >= 0)
      node = x(tree[node].feature) <= tree[node].threshold ? tree[node].left
                                                           : tree[node].right;
    return tree[node].value;
  }

 private:
  static int build_node(Tree& tree, const core::Matrix& X, const Eigen::VectorXd& y,
                        std::vector<int> idx, int depth, const RfConfig& cfg, int mtry,
                        core::Rng& rng) {
    int self = static_cast<int>(tree.size());
    tree.push_back(Node{});
    double sum = 0.0, sq = 0.0;
    for (int i : idx) {
      sum += y(i);
      sq += y(i) * y(i);
    }
    double n = static_cast<double>(idx.size());
    double mean = sum / n;
    tree[self].value = mean;
    double sse = sq - sum * sum / n;
    if (depth >= cfg.max_depth || static_cast<int>(idx.size()) < 2 * cfg.min_leaf ||
        sse <= 1e-12)
      return self;

    std::vector<int> candidates = sample_features(static_cast<int>(X.cols()), mtry, rng);
    int best_feature = -1;
    double best_sse = sse - 1e-12;
    for (int f : candidates) {
      double lsum = 0.0, lsq = 0.0;
      long lcount = 0;
      for (int i : idx) {
        if (X(i, f) <= 0.5) {
          lsum += y(i);
          lsq += y(i) * y(i);
          ++lcount;
        }
      }
      long rcount = static_cast<long>(idx.size()) - lcount;
      if (lcount < cfg.min_leaf || rcount < cfg.min_leaf) continue;
      double rsum = sum - lsum, rsq = sq - lsq;
      double split_sse = (lsq - lsum * lsum / lcount) + (rsq - rsum * rsum / rcount);
      if (split_sse < best_sse) {
        best_sse = split_sse;
        best_feature = f;
      }
    }
    if (best_feature < 0) return self;

    std::vector<int> left_idx, right_idx;
    for (int i : idx)
      (X(i, best_feature) <= 0.5 ? left_idx : right_idx).push_back(i);
    idx.clear();
    idx.shrink_to_fit();
    int left = build_node(tree, X, y, std::move(left_idx), depth + 1, cfg, mtry, rng);
    int right = build_node(tree, X, y, std::move(right_idx), depth + 1, cfg, mtry, rng);
    tree[self].feature = best_feature;
    tree[self].left = left;
    tree[self].right = right;
    return self;
  }

  // Partial Fisher-Yates draw of k distinct feature indices.
  static std::vector<int> sample_features(int d, int k, core::Rng& rng) {
    std::vector<int> pool(d);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(d - i)));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }
};

}  // namespace molbench::models
