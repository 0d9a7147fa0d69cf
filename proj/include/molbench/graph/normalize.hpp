#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "molbench/graph/molgraph.hpp"

namespace molbench::graph {

// Per-column z-scoring statistics, fit on the training split only and passed
// around as an immutable value.
struct FeatureStats {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd std_dev;

  static constexpr double kMinStd = 1e-8;

  static FeatureStats fit(const std::vector<MolGraph>& training) {
    if (training.empty()) throw std::invalid_argument("FeatureStats::fit: empty training set");
    const int d = kNodeFeatureDim;
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(d);
    Eigen::RowVectorXd sq = Eigen::RowVectorXd::Zero(d);
    long n = 0;
    for (const MolGraph& g : training) {
      sum += g.features.colwise().sum();
      sq += g.features.array().square().matrix().colwise().sum();
      n += g.n_nodes;
    }
    FeatureStats s;
    s.mean = sum / static_cast<double>(n);
    Eigen::RowVectorXd var =
        sq / static_cast<double>(n) - s.mean.array().square().matrix();
    s.std_dev = var.array().max(0.0).sqrt();
    return s;
  }

  // Columns with degenerate spread are centered but not scaled.
  MolGraph apply(const MolGraph& g) const {
    MolGraph out = g;
    for (int c = 0; c < kNodeFeatureDim; ++c) {
      out.features.col(c).array() -= mean(c);
      if (std_dev(c) >= kMinStd) out.features.col(c).array() /= std_dev(c);
    }
    return out;
  }
};

inline std::vector<MolGraph> normalize_features(const FeatureStats& stats,
                                                const std::vector<MolGraph>& graphs) {
  std::vector<MolGraph> out;
  out.reserve(graphs.size());
  for (const MolGraph& g : graphs) out.push_back(stats.apply(g));
  return out;
}

}  // namespace molbench::graph
