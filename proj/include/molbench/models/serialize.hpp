#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "molbench/core/matrix.hpp"
#include "molbench/models/gnn_model.hpp"
#include "molbench/models/linreg.hpp"
#include "molbench/models/random_forest.hpp"

namespace molbench::models {

static_assert(std::endian::native == std::endian::little,
              "model files assume a little-endian host");

namespace detail {

constexpr char kMagic[4] = {'M', 'B', 'M', '1'};

inline void write_u64(std::ostream& os, uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

inline uint64_t read_u64(std::istream& is) {
  uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw std::runtime_error("model file truncated");
  return v;
}

// Header JSON carries the manifest; all floating-point payload lives in raw
// little-endian f64 blobs, written row-major, so round-trips are bit-exact.
inline void write_blob(std::ostream& os, const nlohmann::json& header,
                       const std::vector<core::Matrix>& mats) {
  os.write(kMagic, 4);
  std::string h = header.dump();
  write_u64(os, h.size());
  os.write(h.data(), static_cast<std::streamsize>(h.size()));
  for (const core::Matrix& m : mats)
    for (long i = 0; i < m.rows(); ++i)
      for (long j = 0; j < m.cols(); ++j) {
        double v = m(i, j);
        os.write(reinterpret_cast<const char*>(&v), sizeof v);
      }
}

struct Blob {
  nlohmann::json header;
  std::vector<core::Matrix> mats;
};

inline Blob read_blob(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a model file (bad magic)");
  uint64_t hlen = read_u64(is);
  std::string h(hlen, '\0');
  is.read(h.data(), static_cast<std::streamsize>(hlen));
  if (!is) throw std::runtime_error("model file truncated");
  Blob b;
  b.header = nlohmann::json::parse(h);
  for (const auto& entry : b.header.at("matrices")) {
    long rows = entry.at("rows").get<long>();
    long cols = entry.at("cols").get<long>();
    core::Matrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) {
        double v;
        is.read(reinterpret_cast<char*>(&v), sizeof v);
        if (!is) throw std::runtime_error("model file truncated");
        m(i, j) = v;
      }
    b.mats.push_back(std::move(m));
  }
  return b;
}

inline nlohmann::json manifest_entry(const std::string& name, const core::Matrix& m) {
  return {{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}};
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return is;
}

}  // namespace detail

inline std::string model_kind(const std::string& path) {
  auto is = detail::open_in(path);
  return detail::read_blob(is).header.at("kind").get<std::string>();
}

inline void save_gnn(const std::string& path, const GnnModel& model) {
  nlohmann::json cfg = {
      {"layer_kind", layer_kind_name(model.config.layer_kind)},
      {"hidden_dim", model.config.hidden_dim},
      {"lr", model.config.lr},
      {"epochs", model.config.epochs},
      {"seed", model.config.seed},
      {"use_fingerprint", model.config.use_fingerprint},
      {"fp_bits", model.config.fp_bits},
      {"normalize_features", model.config.normalize_features},
      {"sage_l2_norm", model.config.sage_l2_norm},
  };
  std::vector<core::Matrix> mats;
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& [name, m] : model.params.items) {
    manifest.push_back(detail::manifest_entry(name, m));
    mats.push_back(m);
  }
  core::Matrix mean = model.feature_stats.mean;
  core::Matrix sd = model.feature_stats.std_dev;
  manifest.push_back(detail::manifest_entry("_feature_mean", mean));
  mats.push_back(mean);
  manifest.push_back(detail::manifest_entry("_feature_std", sd));
  mats.push_back(sd);
  core::Matrix curve(static_cast<long>(model.train_loss_curve.size()), 1);
  for (size_t i = 0; i < model.train_loss_curve.size(); ++i)
    curve(static_cast<long>(i), 0) = model.train_loss_curve[i];
  manifest.push_back(detail::manifest_entry("_loss_curve", curve));
  mats.push_back(curve);

  nlohmann::json header = {{"kind", "gnn"}, {"config", cfg}, {"matrices", manifest}};
  auto os = detail::open_out(path);
  detail::write_blob(os, header, mats);
}

inline GnnModel load_gnn(const std::string& path) {
  auto is = detail::open_in(path);
  detail::Blob b = detail::read_blob(is);
  if (b.header.at("kind") != "gnn") throw std::runtime_error("not a gnn model file");
  const auto& cfg = b.header.at("config");
  GnnModel model;
  model.config.layer_kind = layer_kind_from_name(cfg.at("layer_kind").get<std::string>());
  model.config.hidden_dim = cfg.at("hidden_dim").get<int>();
  model.config.lr = cfg.at("lr").get<double>();
  model.config.epochs = cfg.at("epochs").get<int>();
  model.config.seed = cfg.at("seed").get<uint64_t>();
  model.config.use_fingerprint = cfg.at("use_fingerprint").get<bool>();
  model.config.fp_bits = cfg.at("fp_bits").get<int>();
  model.config.normalize_features = cfg.at("normalize_features").get<bool>();
  model.config.sage_l2_norm = cfg.at("sage_l2_norm").get<bool>();
  const auto& manifest = b.header.at("matrices");
  for (size_t i = 0; i < b.mats.size(); ++i) {
    std::string name = manifest.at(i).at("name").get<std::string>();
    if (name == "_feature_mean") {
      model.feature_stats.mean = b.mats[i].row(0);
    } else if (name == "_feature_std") {
      model.feature_stats.std_dev = b.mats[i].row(0);
    } else if (name == "_loss_curve") {
      for (long r = 0; r < b.mats[i].rows(); ++r)
        model.train_loss_curve.push_back(b.mats[i](r, 0));
    } else {
      model.params.add(name, b.mats[i]);
    }
  }
  return model;
}

inline void save_linreg(const std::string& path, const LinReg& model) {
  core::Matrix beta = model.beta;
  nlohmann::json header = {{"kind", "linreg"},
                           {"lambda", model.lambda},
                           {"matrices", {detail::manifest_entry("beta", beta)}}};
  auto os = detail::open_out(path);
  detail::write_blob(os, header, {beta});
}

inline LinReg load_linreg(const std::string& path) {
  auto is = detail::open_in(path);
  detail::Blob b = detail::read_blob(is);
  if (b.header.at("kind") != "linreg") throw std::runtime_error("not a linreg model file");
  LinReg model;
  model.lambda = b.header.at("lambda").get<double>();
  model.beta = b.mats.at(0).col(0);
  return model;
}

inline void save_rf(const std::string& path, const RandomForest& model) {
  nlohmann::json cfg = {
      {"n_trees", model.config.n_trees},
      {"max_depth", model.config.max_depth},
      {"min_leaf", model.config.min_leaf},
      {"n_feature_candidates", model.config.n_feature_candidates},
      {"bootstrap", model.config.bootstrap},
      {"seed", model.config.seed},
  };
  // Each tree serializes as a (nodes × 5) table: feature, threshold, left,
  // right, value.  Indices fit exactly in doubles.
  std::vector<core::Matrix> mats;
  nlohmann::json manifest = nlohmann::json::array();
  for (size_t t = 0; t < model.trees.size(); ++t) {
    const auto& tree = model.trees[t];
    core::Matrix m(static_cast<long>(tree.size()), 5);
    for (size_t i = 0; i < tree.size(); ++i) {
      m(static_cast<long>(i), 0) = tree[i].feature;
      m(static_cast<long>(i), 1) = tree[i].threshold;
      m(static_cast<long>(i), 2) = tree[i].left;
      m(static_cast<long>(i), 3) = tree[i].right;
      m(static_cast<long>(i), 4) = tree[i].value;
    }
    manifest.push_back(detail::manifest_entry("tree_" + std::to_string(t), m));
    mats.push_back(std::move(m));
  }
  nlohmann::json header = {{"kind", "rf"}, {"config", cfg}, {"matrices", manifest}};
  auto os = detail::open_out(path);
  detail::write_blob(os, header, mats);
}

inline RandomForest load_rf(const std::string& path) {
  auto is = detail::open_in(path);
  detail::Blob b = detail::read_blob(is);
  if (b.header.at("kind") != "rf") throw std::runtime_error("not a rf model file");
  const auto& cfg = b.header.at("config");
  RandomForest model;
  model.config.n_trees = cfg.at("n_trees").get<int>();
  model.config.max_depth = cfg.at("max_depth").get<int>();
  model.config.min_leaf = cfg.at("min_leaf").get<int>();
  model.config.n_feature_candidates = cfg.at("n_feature_candidates").get<int>();
  model.config.bootstrap = cfg.at("bootstrap").get<bool>();
  model.config.seed = cfg.at("seed").get<uint64_t>();
  for (const core::Matrix& m : b.mats) {
    RandomForest::Tree tree;
    for (long i = 0; i < m.rows(); ++i) {
      RandomForest::Node n;
      n.feature = static_cast<int>(m(i, 0));
      n.threshold = m(i, 1);
      n.left = static_cast<int>(m(i, 2));
      n.right = static_cast<int>(m(i, 3));
      n.value = m(i, 4);
      tree.push_back(n);
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

}  // namespace molbench::models
