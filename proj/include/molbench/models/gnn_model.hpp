#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "molbench/ad/adam.hpp"
#include "molbench/ad/tape.hpp"
#include "molbench/gnn/layers.hpp"
#include "molbench/graph/normalize.hpp"
#include "molbench/models/config.hpp"

namespace molbench::models {

using ad::Tape;
using ad::Var;
using core::Matrix;

struct DivergedError : std::runtime_error {
  int epoch;
  explicit DivergedError(int e)
      : std::runtime_error("training diverged (non-finite loss) at epoch " +
                          std::to_string(e)),
        epoch(e) {}
};

// Named parameter list with a stable order — creation order doubles as the
// seeding and serialization order.
struct ParamList {
  std::vector<std::pair<std::string, Matrix>> items;

  Matrix& operator[](const std::string& name) {
    for (auto& [n, m] : items)
      if (n == name) return m;
    throw std::out_of_range("no parameter named " + name);
  }
  const Matrix& at(const std::string& name) const {
    for (auto& [n, m] : items)
      if (n == name) return m;
    throw std::out_of_range("no parameter named " + name);
  }
  void add(const std::string& name, Matrix m) { items.emplace_back(name, std::move(m)); }
};

struct GnnForward {
  Var prediction;  // n_graphs × 1
  Var embedding;   // pooled (hidden) or concatenated (2·hidden) tap
};

// Standalone GNN regressor and its +fingerprint hybrid.  One convolution
// layer → ReLU → global mean pool; the hybrid concatenates a projected
// fingerprint branch before the two-layer regression head.
class GnnModel {
 public:
  ModelConfig config;
  ParamList params;
  graph::FeatureStats feature_stats;
  std::vector<double> train_loss_curve;

  static GnnModel init(const ModelConfig& cfg) {
    cfg.validate();
    GnnModel m;
    m.config = cfg;
    core::Rng rng(cfg.seed);
    int h = cfg.hidden_dim;
    int in = graph::kNodeFeatureDim;
    switch (cfg.layer_kind) {
      case LayerKind::GCN:
        m.params.add("conv_w", gnn::glorot_uniform(rng, in, h));
        break;
      case LayerKind::GAT:
        m.params.add("conv_w", gnn::glorot_uniform(rng, in, h));
        m.params.add("conv_a", gnn::glorot_uniform(rng, 2 * h, 1));
        break;
      case LayerKind::GIN:
        m.params.add("conv_w1", gnn::glorot_uniform(rng, in, h));
        m.params.add("conv_b1", Matrix::Zero(1, h));
        m.params.add("conv_w2", gnn::glorot_uniform(rng, h, h));
        m.params.add("conv_b2", Matrix::Zero(1, h));
        break;
      case LayerKind::SAGE:
        m.params.add("conv_w_self", gnn::glorot_uniform(rng, in, h));
        m.params.add("conv_w_neigh", gnn::glorot_uniform(rng, in, h));
        break;
    }
    if (cfg.use_fingerprint) {
      m.params.add("fp_w", gnn::glorot_uniform(rng, cfg.fp_bits, h));
      m.params.add("fp_b", Matrix::Zero(1, h));
    }
    int head_in = cfg.use_fingerprint ? 2 * h : h;
    m.params.add("head_w1", gnn::glorot_uniform(rng, head_in, h));
    m.params.add("head_b1", Matrix::Zero(1, h));
    m.params.add("head_w2", gnn::glorot_uniform(rng, h, 1));
    m.params.add("head_b2", Matrix::Zero(1, 1));
    return m;
  }

  // Builds the forward graph on `tape`.  `param_vars` must hold one Var per
  // entry of `params`, in order.  `fp_rows` is required iff the config uses
  // the fingerprint branch.
  GnnForward forward(Tape& tape, const graph::BatchedGraphs& batch,
                     const std::vector<Var>& param_vars, const Matrix* fp_rows) const {
    auto pv = [&](const std::string& name) -> Var {
      for (size_t i = 0; i < params.items.size(); ++i)
        if (params.items[i].first == name) return param_vars.at(i);
      throw std::out_of_range("no parameter named " + name);
    };
    Var x = tape.input(batch.features, false);
    Var conv;
    switch (config.layer_kind) {
      case LayerKind::GCN:
        conv = gnn::gcn_layer(tape, batch, x, pv("conv_w"));
        break;
      case LayerKind::GAT:
        conv = gnn::gat_layer(tape, batch, x, pv("conv_w"), pv("conv_a"));
        break;
      case LayerKind::GIN:
        conv = gnn::gin_layer(tape, batch, x, pv("conv_w1"), pv("conv_b1"), pv("conv_w2"),
                              pv("conv_b2"));
        break;
      case LayerKind::SAGE:
        conv = gnn::sage_layer(tape, batch, x, pv("conv_w_self"), pv("conv_w_neigh"),
                               config.sage_l2_norm);
        break;
    }
    conv = tape.relu(conv);
    Var pooled = gnn::global_mean_pool(tape, conv, batch);

    Var embedding = pooled;
    Var head_in = pooled;
    if (config.use_fingerprint) {
      if (!fp_rows)
        throw std::invalid_argument("forward: fingerprint rows required for hybrid model");
      if (fp_rows->rows() != batch.n_graphs || fp_rows->cols() != config.fp_bits)
        throw std::invalid_argument(
            "forward: fingerprint rows misaligned: " + core::shape_str(*fp_rows) +
            " for " + std::to_string(batch.n_graphs) + " graphs");
      Var fp = tape.input(*fp_rows, false);
      Var fp_h = tape.relu(tape.add_row_broadcast(tape.matmul(fp, pv("fp_w")), pv("fp_b")));
      embedding = tape.concat_cols(pooled, fp_h);
      head_in = embedding;
    } else if (fp_rows) {
      throw std::invalid_argument("forward: fingerprint rows passed to a non-hybrid model");
    }

    Var h1 = tape.relu(
        tape.add_row_broadcast(tape.matmul(head_in, pv("head_w1")), pv("head_b1")));
    Var pred = tape.add_row_broadcast(tape.matmul(h1, pv("head_w2")), pv("head_b2"));
    return GnnForward{pred, embedding};
  }

  std::vector<Var> insert_params(Tape& tape) const {
    std::vector<Var> vars;
    vars.reserve(params.items.size());
    for (const auto& [name, m] : params.items) vars.push_back(tape.input(m, true));
    return vars;
  }

  struct Prediction {
    Matrix y_hat;      // n_graphs × 1
    Matrix embedding;  // tap point rows
  };

  // Value-only forward on raw (unnormalized) graphs.
  Prediction predict(const std::vector<graph::MolGraph>& graphs, const Matrix* fp_rows) const {
    graph::BatchedGraphs batch = make_prepared_batch(graphs);
    Tape tape;
    std::vector<Var> pv = insert_params(tape);
    GnnForward f = forward(tape, batch, pv, fp_rows);
    return Prediction{tape.value(f.prediction), tape.value(f.embedding)};
  }

  graph::BatchedGraphs make_prepared_batch(const std::vector<graph::MolGraph>& graphs) const {
    if (config.normalize_features)
      return graph::make_batch(graph::normalize_features(feature_stats, graphs));
    return graph::make_batch(graphs);
  }
};

// Full-batch Adam training.  `fp_rows` may be null for standalone models.
inline GnnModel train_gnn(const ModelConfig& cfg, const std::vector<graph::MolGraph>& graphs,
                          const Matrix& targets, const Matrix* fp_rows) {
  if (graphs.empty()) throw std::invalid_argument("train_gnn: empty training split");
  if (targets.rows() != static_cast<long>(graphs.size()) || targets.cols() != 1)
    throw std::invalid_argument("train_gnn: targets must be n_graphs x 1");
  GnnModel model = GnnModel::init(cfg);
  model.feature_stats = graph::FeatureStats::fit(graphs);
  graph::BatchedGraphs batch = model.make_prepared_batch(graphs);

  ad::Adam opt(cfg.lr);
  model.train_loss_curve.reserve(cfg.epochs);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Tape tape;
    std::vector<Var> pv = model.insert_params(tape);
    GnnForward f = model.forward(tape, batch, pv, fp_rows);
    Var loss = tape.mse(f.prediction, targets);
    double loss_value = tape.value(loss)(0, 0);
    if (!std::isfinite(loss_value)) throw DivergedError(epoch);
    model.train_loss_curve.push_back(loss_value);
    tape.backward(loss);

    std::vector<Matrix*> param_ptrs;
    std::vector<Matrix> grads;
    param_ptrs.reserve(pv.size());
    grads.reserve(pv.size());
    for (size_t i = 0; i < pv.size(); ++i) {
      param_ptrs.push_back(&model.params.items[i].second);
      grads.push_back(tape.grad(pv[i]));
    }
    opt.step(param_ptrs, grads);
  }
  for (const auto& [name, m] : model.params.items)
    if (!m.allFinite()) throw DivergedError(cfg.epochs);
  return model;
}

}  // namespace molbench::models
