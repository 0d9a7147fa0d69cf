#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "molbench/bench/grid.hpp"
#include "molbench/cka/cka.hpp"
#include "molbench/models/random_forest.hpp"

namespace molbench::bench {

struct DatasetSpec {
  std::string name;
  std::string path;
  std::string smiles_col = "smiles";
  std::string target_col = "target";
};

// Declarative description of a full benchmark run (JSON on disk).
struct RunConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<std::string> models = {"linreg", "rf",     "gcn",    "gat",
                                     "gin",    "sage",   "gcn+fp", "gat+fp",
                                     "gin+fp", "sage+fp"};
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  int downsample_n = 1000;
  int n_boot = 1000;
  Grid grid;
  int epochs = 100;
  cka::SigmaConvention sigma_convention = cka::SigmaConvention::MedianSq;
  bool normalize_features = true;
  bool sage_l2_norm = false;
  models::RfConfig rf;
  double linreg_lambda = 1e-6;

  static RunConfig from_json(const nlohmann::json& j) {
    RunConfig c;
    if (!j.contains("datasets") || !j.at("datasets").is_array() || j.at("datasets").empty())
      throw std::runtime_error("config: 'datasets' must be a non-empty array");
    for (const auto& d : j.at("datasets")) {
      DatasetSpec spec;
      spec.path = d.at("path").get<std::string>();
      spec.name = d.value("name", spec.path);
      spec.smiles_col = d.value("smiles_col", spec.smiles_col);
      spec.target_col = d.value("target_col", spec.target_col);
      c.datasets.push_back(spec);
    }
    if (j.contains("models")) c.models = j.at("models").get<std::vector<std::string>>();
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
    c.downsample_n = j.value("downsample_n", c.downsample_n);
    c.n_boot = j.value("n_boot", c.n_boot);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("hidden_dim"))
        c.grid.hidden_dims = g.at("hidden_dim").get<std::vector<int>>();
      if (g.contains("lr")) c.grid.lrs = g.at("lr").get<std::vector<double>>();
    }
    c.epochs = j.value("epochs", c.epochs);
    if (j.contains("sigma_convention"))
      c.sigma_convention =
          cka::sigma_convention_from_name(j.at("sigma_convention").get<std::string>());
    c.normalize_features = j.value("normalize_features", c.normalize_features);
    c.sage_l2_norm = j.value("sage_l2_norm", c.sage_l2_norm);
    if (j.contains("rf")) {
      const auto& r = j.at("rf");
      c.rf.n_trees = r.value("n_trees", c.rf.n_trees);
      c.rf.max_depth = r.value("max_depth", c.rf.max_depth);
      c.rf.min_leaf = r.value("min_leaf", c.rf.min_leaf);
      c.rf.n_feature_candidates = r.value("n_feature_candidates", c.rf.n_feature_candidates);
      c.rf.bootstrap = r.value("bootstrap", c.rf.bootstrap);
    }
    c.linreg_lambda = j.value("linreg_lambda", c.linreg_lambda);
    if (c.models.empty()) throw std::runtime_error("config: 'models' must be non-empty");
    if (c.seeds.empty()) throw std::runtime_error("config: 'seeds' must be non-empty");
    for (const auto& m : c.models) models::parse_model_name(m);  // vocabulary check
    return c;
  }

  static RunConfig load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j;
    try {
      is >> j;
    } catch (const std::exception& e) {
      throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    return from_json(j);
  }

  nlohmann::json to_json() const {
    nlohmann::json ds = nlohmann::json::array();
    for (const auto& d : datasets)
      ds.push_back({{"name", d.name},
                    {"path", d.path},
                    {"smiles_col", d.smiles_col},
                    {"target_col", d.target_col}});
    return {
        {"datasets", ds},
        {"models", models},
        {"seeds", seeds},
        {"downsample_n", downsample_n},
        {"n_boot", n_boot},
        {"grid", {{"hidden_dim", grid.hidden_dims}, {"lr", grid.lrs}}},
        {"epochs", epochs},
        {"sigma_convention", cka::sigma_convention_name(sigma_convention)},
        {"normalize_features", normalize_features},
        {"sage_l2_norm", sage_l2_norm},
        {"rf",
         {{"n_trees", rf.n_trees},
          {"max_depth", rf.max_depth},
          {"min_leaf", rf.min_leaf},
          {"n_feature_candidates", rf.n_feature_candidates},
          {"bootstrap", rf.bootstrap}}},
        {"linreg_lambda", linreg_lambda},
    };
  }
};

}  // namespace molbench::bench
