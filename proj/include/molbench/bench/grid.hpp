#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "molbench/bench/dataset.hpp"
#include "molbench/bench/metrics.hpp"
#include "molbench/core/rng.hpp"
#include "molbench/models/gnn_model.hpp"

namespace molbench::bench {

struct Grid {
  std::vector<int> hidden_dims{32, 64, 128};
  std::vector<double> lrs{1e-3, 3e-3, 1e-2};
};

struct GridSearchResult {
  models::ModelConfig best;
  double best_val_rmse = 0.0;
  std::vector<std::string> diverged;  // "hidden=..,lr=.." labels of excluded points
};

// Inner 80/20 re-split of the training indices (seeded off the outer seed),
// one training per grid point, lowest validation RMSE wins; ties keep the
// first point in grid order.  Diverged points are excluded.
inline GridSearchResult grid_search(const Dataset& ds, const std::vector<int>& train_indices,
                                    const models::ModelConfig& base, const Grid& grid,
                                    uint64_t seed) {
  if (grid.hidden_dims.empty() || grid.lrs.empty())
    throw std::invalid_argument("grid_search: empty grid");
  if (train_indices.size() < 5)
    throw std::invalid_argument("grid_search: too few training rows");

  std::vector<int> shuffled = train_indices;
  core::Rng rng(core::derive_seed(seed, 1));
  rng.shuffle(shuffled);
  int n_inner = static_cast<int>(std::llround(0.8 * static_cast<double>(shuffled.size())));
  std::vector<int> inner_train(shuffled.begin(), shuffled.begin() + n_inner);
  std::vector<int> inner_val(shuffled.begin() + n_inner, shuffled.end());
  if (inner_train.empty() || inner_val.empty())
    throw std::invalid_argument("grid_search: inner split produced an empty side");

  auto train_graphs = graph_rows(ds, inner_train);
  auto train_y = target_rows(ds, inner_train);
  auto val_graphs = graph_rows(ds, inner_val);
  auto val_y = target_rows(ds, inner_val);
  core::Matrix train_fp, val_fp;
  if (base.use_fingerprint) {
    train_fp = fingerprint_rows(ds, inner_train);
    val_fp = fingerprint_rows(ds, inner_val);
  }

  GridSearchResult result;
  bool have_best = false;
  for (int hidden : grid.hidden_dims) {
    for (double lr : grid.lrs) {
      models::ModelConfig cfg = base;
      cfg.hidden_dim = hidden;
      cfg.lr = lr;
      cfg.seed = seed;
      std::string label = "hidden=" + std::to_string(hidden) + ",lr=" + format_g6(lr);
      try {
        models::GnnModel model = models::train_gnn(
            cfg, train_graphs, train_y, base.use_fingerprint ? &train_fp : nullptr);
        auto pred = model.predict(val_graphs, base.use_fingerprint ? &val_fp : nullptr);
        std::vector<double> y(val_y.data(), val_y.data() + val_y.rows());
        std::vector<double> y_hat(pred.y_hat.data(), pred.y_hat.data() + pred.y_hat.rows());
        double val_rmse = rmse(y, y_hat);
        if (!std::isfinite(val_rmse)) throw models::DivergedError(cfg.epochs);
        if (!have_best || val_rmse < result.best_val_rmse) {
          have_best = true;
          result.best = cfg;
          result.best_val_rmse = val_rmse;
        }
      } catch (const models::DivergedError&) {
        result.diverged.push_back(label);
      }
    }
  }
  if (!have_best) throw std::runtime_error("grid_search: all grid points diverged");
  return result;
}

}  // namespace molbench::bench
