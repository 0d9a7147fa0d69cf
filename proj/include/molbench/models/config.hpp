#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace molbench::models {

enum class LayerKind { GCN, GAT, GIN, SAGE };

inline const char* layer_kind_name(LayerKind k) {
  switch (k) {
    case LayerKind::GCN: return "gcn";
    case LayerKind::GAT: return "gat";
    case LayerKind::GIN: return "gin";
    case LayerKind::SAGE: return "sage";
  }
  throw std::logic_error("layer_kind_name: bad enum");
}

inline LayerKind layer_kind_from_name(const std::string& s) {
  if (s == "gcn") return LayerKind::GCN;
  if (s == "gat") return LayerKind::GAT;
  if (s == "gin") return LayerKind::GIN;
  if (s == "sage") return LayerKind::SAGE;
  throw std::invalid_argument("unknown layer kind: " + s);
}

struct ModelConfig {
  LayerKind layer_kind = LayerKind::GCN;
  int hidden_dim = 64;
  double lr = 1e-3;
  int epochs = 100;
  uint64_t seed = 0;
  bool use_fingerprint = false;
  int fp_bits = 1024;
  bool normalize_features = true;
  bool sage_l2_norm = false;

  void validate() const {
    if (hidden_dim < 1) throw std::invalid_argument("ModelConfig: hidden_dim must be >= 1");
    if (!(lr > 0.0) || !std::isfinite(lr))
      throw std::invalid_argument("ModelConfig: lr must be positive and finite");
    if (epochs < 1) throw std::invalid_argument("ModelConfig: epochs must be >= 1");
    if (fp_bits < 1) throw std::invalid_argument("ModelConfig: fp_bits must be >= 1");
  }
};

// The CLI's model vocabulary: four GNN architectures, their +fp hybrids, and
// the two fingerprint baselines.
struct ModelName {
  enum class Family { Gnn, LinReg, RandomForest } family = Family::Gnn;
  LayerKind layer = LayerKind::GCN;
  bool use_fingerprint = false;
  std::string text;
};

inline ModelName parse_model_name(const std::string& s) {
  ModelName m;
  m.text = s;
  if (s == "linreg") {
    m.family = ModelName::Family::LinReg;
    return m;
  }
  if (s == "rf") {
    m.family = ModelName::Family::RandomForest;
    return m;
  }
  std::string base = s;
  if (base.size() > 3 && base.substr(base.size() - 3) == "+fp") {
    m.use_fingerprint = true;
    base = base.substr(0, base.size() - 3);
  }
  m.family = ModelName::Family::Gnn;
  m.layer = layer_kind_from_name(base);
  return m;
}

}  // namespace molbench::models
