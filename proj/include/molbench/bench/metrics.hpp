#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "molbench/core/rng.hpp"

namespace molbench::bench {

inline double rmse(const std::vector<double>& y, const std::vector<double>& y_hat) {
  if (y.empty() || y.size() != y_hat.size())
    throw std::invalid_argument("rmse: need equal nonzero lengths, got " +
                                std::to_string(y.size()) + " and " +
                                std::to_string(y_hat.size()));
  double sum = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    double d = y[i] - y_hat[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(y.size()));
}

// Percentile with linear interpolation on the sorted sample
// (rank = p/100 · (m−1)).
inline double percentile(std::vector<double> sorted_values, double p) {
  if (sorted_values.empty()) throw std::invalid_argument("percentile: empty sample");
  double rank = p / 100.0 * static_cast<double>(sorted_values.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(rank));
  size_t hi = static_cast<size_t>(std::ceil(rank));
  double frac = rank - static_cast<double>(lo);
  return sorted_values[lo] * (1.0 - frac) + sorted_values[hi] * frac;
}

// 95% bootstrap CI of the RMSE: resample (y, ŷ) index pairs with
// replacement n_boot times, take the 2.5th/97.5th percentiles.
inline std::pair<double, double> bootstrap_ci(const std::vector<double>& y,
                                              const std::vector<double>& y_hat,
                                              int n_boot, uint64_t seed) {
  if (y.size() < 2 || y.size() != y_hat.size())
    throw std::invalid_argument("bootstrap_ci: need >= 2 paired samples");
  if (n_boot < 1) throw std::invalid_argument("bootstrap_ci: n_boot must be >= 1");
  core::Rng rng(seed);
  const size_t n = y.size();
  std::vector<double> stats(n_boot);
  for (int b = 0; b < n_boot; ++b) {
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
      size_t j = rng.index(n);
      double d = y[j] - y_hat[j];
      sum += d * d;
    }
    stats[b] = std::sqrt(sum / static_cast<double>(n));
  }
  std::sort(stats.begin(), stats.end());
  return {percentile(stats, 2.5), percentile(stats, 97.5)};
}

struct ImprovementRecord {
  double delta_rmse = 0.0;
  double pct_improvement = 0.0;
  std::string gnn_label;
  std::string hybrid_label;
};

// ΔRMSE = RMSE_gnn − RMSE_hybrid; percentage improvement = Δ/RMSE_gnn × 100.
inline ImprovementRecord improvement(double rmse_gnn, double rmse_hybrid,
                                     std::string gnn_label = "",
                                     std::string hybrid_label = "") {
  if (!std::isfinite(rmse_gnn) || !std::isfinite(rmse_hybrid))
    throw std::invalid_argument("improvement: RMSE values must be finite");
  if (rmse_gnn <= 0.0)
    throw std::invalid_argument("improvement: baseline RMSE must be positive");
  ImprovementRecord r;
  r.delta_rmse = rmse_gnn - rmse_hybrid;
  r.pct_improvement = r.delta_rmse / rmse_gnn * 100.0;
  r.gnn_label = std::move(gnn_label);
  r.hybrid_label = std::move(hybrid_label);
  return r;
}

}  // namespace molbench::bench
