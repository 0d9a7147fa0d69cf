#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "molbench/bench/dataset.hpp"
#include "molbench/bench/grid.hpp"
#include "molbench/bench/metrics.hpp"
#include "molbench/bench/run_config.hpp"
#include "molbench/bench/split.hpp"
#include "molbench/cka/cka.hpp"
#include "molbench/models/gnn_model.hpp"
#include "molbench/models/linreg.hpp"
#include "molbench/models/random_forest.hpp"

namespace molbench::bench {

struct CellResult {
  std::string dataset;
  std::string model;
  uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double rmse_value = std::numeric_limits<double>::quiet_NaN();
  double ci_low = std::numeric_limits<double>::quiet_NaN();
  double ci_high = std::numeric_limits<double>::quiet_NaN();
  bool searched = false;  // grid search ran (GNN family)
  int hidden_dim = 0;
  double lr = 0.0;
  double val_rmse = 0.0;
  std::vector<std::string> diverged;
  std::vector<double> y_true, y_pred;
  core::Matrix embedding;  // standalone GNN test-set tap
  bool has_embedding = false;
};

struct CkaCell {
  std::string dataset;
  std::string a, b;  // model labels; b = "fp" for the fingerprint column
  uint64_t seed = 0;
  bool ok = false;
  double value = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

struct RunResult {
  RunConfig config;
  std::vector<CellResult> cells;
  std::vector<CkaCell> cka_fp;
  std::vector<CkaCell> cka_pairs;
  std::map<std::string, size_t> rejections;  // dataset name → dropped row count
};

namespace detail {

inline std::vector<double> to_std(const core::Matrix& col) {
  return std::vector<double>(col.data(), col.data() + col.rows());
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.rows());
}

// One (dataset, model, seed) evaluation.  Never throws; failures land in
// the result's error field.
inline CellResult run_cell(const RunConfig& cfg, const Dataset& ds, const SplitPlan& plan,
                           const std::string& model_name, uint64_t seed) {
  CellResult cell;
  cell.dataset = ds.name;
  cell.model = model_name;
  cell.seed = seed;
  try {
    models::ModelName name = models::parse_model_name(model_name);
    cell.y_true = to_std(target_rows(ds, plan.test_indices));
    std::vector<double> y_hat;

    if (name.family == models::ModelName::Family::LinReg) {
      core::Matrix X = fingerprint_rows(ds, plan.train_indices);
      Eigen::VectorXd y = target_rows(ds, plan.train_indices).col(0);
      models::LinReg m = models::LinReg::fit(X, y, cfg.linreg_lambda);
      y_hat = to_std(m.predict(fingerprint_rows(ds, plan.test_indices)));
    } else if (name.family == models::ModelName::Family::RandomForest) {
      core::Matrix X = fingerprint_rows(ds, plan.train_indices);
      Eigen::VectorXd y = target_rows(ds, plan.train_indices).col(0);
      models::RfConfig rf_cfg = cfg.rf;
      rf_cfg.seed = core::derive_seed(seed, 3);
      models::RandomForest m = models::RandomForest::fit(X, y, rf_cfg);
      y_hat = to_std(m.predict(fingerprint_rows(ds, plan.test_indices)));
    } else {
      models::ModelConfig base;
      base.layer_kind = name.layer;
      base.use_fingerprint = name.use_fingerprint;
      base.epochs = cfg.epochs;
      base.normalize_features = cfg.normalize_features;
      base.sage_l2_norm = cfg.sage_l2_norm;
      GridSearchResult gs = grid_search(ds, plan.train_indices, base, cfg.grid, seed);
      cell.searched = true;
      cell.hidden_dim = gs.best.hidden_dim;
      cell.lr = gs.best.lr;
      cell.val_rmse = gs.best_val_rmse;
      cell.diverged = gs.diverged;

      auto train_graphs = graph_rows(ds, plan.train_indices);
      auto train_y = target_rows(ds, plan.train_indices);
      core::Matrix train_fp, test_fp;
      if (name.use_fingerprint) {
        train_fp = fingerprint_rows(ds, plan.train_indices);
        test_fp = fingerprint_rows(ds, plan.test_indices);
      }
      models::GnnModel model = models::train_gnn(gs.best, train_graphs, train_y,
                                                 name.use_fingerprint ? &train_fp : nullptr);
      auto pred = model.predict(graph_rows(ds, plan.test_indices),
                                name.use_fingerprint ? &test_fp : nullptr);
      y_hat = to_std(pred.y_hat);
      if (!name.use_fingerprint) {
        cell.embedding = pred.embedding;
        cell.has_embedding = true;
      }
    }

    cell.y_pred = y_hat;
    cell.rmse_value = rmse(cell.y_true, y_hat);
    auto [lo, hi] = bootstrap_ci(cell.y_true, y_hat, cfg.n_boot, core::derive_seed(seed, 2));
    cell.ci_low = lo;
    cell.ci_high = hi;
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

inline const CellResult* find_cell(const std::vector<CellResult>& cells,
                                   const std::string& ds, const std::string& model,
                                   uint64_t seed) {
  for (const auto& c : cells)
    if (c.dataset == ds && c.model == model && c.seed == seed) return &c;
  return nullptr;
}

inline std::vector<std::string> standalone_architectures(const RunConfig& cfg) {
  std::vector<std::string> out;
  for (const char* arch : {"gcn", "gat", "gin", "sage"})
    for (const auto& m : cfg.models)
      if (m == arch) out.push_back(arch);
  return out;
}

}  // namespace detail

inline RunResult run_benchmark(const RunConfig& cfg) {
  RunResult result;
  result.config = cfg;
  for (const DatasetSpec& spec : cfg.datasets) {
    Dataset ds = load_csv(spec.path, spec.smiles_col, spec.target_col, spec.name);
    result.rejections[ds.name] = ds.rejections.size();
    std::vector<std::string> archs = detail::standalone_architectures(cfg);

    for (uint64_t seed : cfg.seeds) {
      SplitPlan plan = sample_and_split(static_cast<int>(ds.size()), seed, cfg.downsample_n);
      size_t first_cell = result.cells.size();
      for (const std::string& model : cfg.models)
        result.cells.push_back(detail::run_cell(cfg, ds, plan, model, seed));

      // CKA over this seed's held-out embeddings.
      core::Matrix fp_raw = fingerprint_rows(ds, plan.test_indices);
      auto cell_of = [&](const std::string& m) -> const CellResult* {
        for (size_t i = first_cell; i < result.cells.size(); ++i)
          if (result.cells[i].model == m) return &result.cells[i];
        return nullptr;
      };
      for (const std::string& arch : archs) {
        const CellResult* c = cell_of(arch);
        CkaCell k;
        k.dataset = ds.name;
        k.a = arch;
        k.b = "fp";
        k.seed = seed;
        if (c && c->ok && c->has_embedding) {
          try {
            k.value = cka::cka(c->embedding, fp_raw, cfg.sigma_convention).value;
            k.ok = true;
          } catch (const std::exception& e) {
            k.error = e.what();
          }
        } else {
          k.error = c ? (c->error.empty() ? "model unavailable" : c->error)
                      : "model not run";
        }
        result.cka_fp.push_back(k);
      }
      for (size_t i = 0; i < archs.size(); ++i) {
        for (size_t j = i; j < archs.size(); ++j) {
          const CellResult* ca = cell_of(archs[i]);
          const CellResult* cb = cell_of(archs[j]);
          CkaCell k;
          k.dataset = ds.name;
          k.a = archs[i];
          k.b = archs[j];
          k.seed = seed;
          if (ca && cb && ca->ok && cb->ok && ca->has_embedding && cb->has_embedding) {
            try {
              k.value = cka::cka(ca->embedding, cb->embedding, cfg.sigma_convention).value;
              k.ok = true;
            } catch (const std::exception& e) {
              k.error = e.what();
            }
          } else {
            k.error = "model unavailable";
          }
          result.cka_pairs.push_back(k);
        }
      }
    }
  }
  return result;
}

namespace detail {

inline std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline std::string na_or_g6(const std::optional<double>& v) {
  return v ? format_g6(*v) : "NA";
}

inline std::string sanitize_filename(const std::string& s) {
  std::string out;
  for (char c : s)
    out.push_back((std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
                   c == '_')
                      ? c
                      : '_');
  return out;
}

// Seed-mean of a cell statistic for (dataset, model); empty when no seed
// succeeded.
inline std::optional<double> cell_mean(const RunResult& r, const std::string& ds,
                                       const std::string& model,
                                       double CellResult::* field) {
  std::vector<double> vals;
  for (const auto& c : r.cells)
    if (c.dataset == ds && c.model == model && c.ok) vals.push_back(c.*field);
  return mean_of(vals);
}

inline std::optional<double> cka_mean(const std::vector<CkaCell>& cells, const std::string& ds,
                                      const std::string& a, const std::string& b) {
  std::vector<double> vals;
  for (const auto& c : cells)
    if (c.dataset == ds && ((c.a == a && c.b == b) || (c.a == b && c.b == a)) && c.ok)
      vals.push_back(c.value);
  return mean_of(vals);
}

}  // namespace detail

// Emits the full report bundle under out_dir:
//   report.csv, report_per_seed.csv, improvement.csv, improvement_per_seed.csv,
//   cka_gnn_fp.csv (+ per-seed), cka_gnn_gnn_<dataset>.csv (+ per-seed long),
//   predictions/<model>.csv, run_meta.
inline void write_reports(const RunResult& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  fs::create_directories(out_dir + "/predictions");
  const RunConfig& cfg = r.config;

  std::vector<std::string> ds_names;
  for (const auto& d : cfg.datasets) ds_names.push_back(d.name);

  {  // report.csv — seed-mean RMSE and CI bounds, models × datasets
    std::vector<std::string> lines;
    std::vector<std::string> head{"model"};
    for (const auto& ds : ds_names) {
      head.push_back(ds + "_rmse");
      head.push_back(ds + "_ci_low");
      head.push_back(ds + "_ci_high");
    }
    lines.push_back(csv_join(head));
    for (const auto& model : cfg.models) {
      std::vector<std::string> row{model};
      for (const auto& ds : ds_names) {
        row.push_back(detail::na_or_g6(detail::cell_mean(r, ds, model, &CellResult::rmse_value)));
        row.push_back(detail::na_or_g6(detail::cell_mean(r, ds, model, &CellResult::ci_low)));
        row.push_back(detail::na_or_g6(detail::cell_mean(r, ds, model, &CellResult::ci_high)));
      }
      lines.push_back(csv_join(row));
    }
    write_lines(out_dir + "/report.csv", lines);
  }

  {  // report_per_seed.csv
    std::vector<std::string> lines{
        csv_join({"dataset", "model", "seed", "rmse", "ci_low", "ci_high", "status", "error"})};
    for (const auto& c : r.cells)
      lines.push_back(csv_join({c.dataset, c.model, std::to_string(c.seed),
                                c.ok ? format_g6(c.rmse_value) : "NA",
                                c.ok ? format_g6(c.ci_low) : "NA",
                                c.ok ? format_g6(c.ci_high) : "NA", c.ok ? "ok" : "error",
                                c.error}));
    write_lines(out_dir + "/report_per_seed.csv", lines);
  }

  std::vector<std::string> archs;
  for (const char* arch : {"gcn", "gat", "gin", "sage"}) {
    bool have_plain = false, have_fp = false;
    for (const auto& m : cfg.models) {
      if (m == arch) have_plain = true;
      if (m == std::string(arch) + "+fp") have_fp = true;
    }
    if (have_plain && have_fp) archs.push_back(arch);
  }

  {  // improvement.csv — percentage improvement from seed-mean RMSEs
    std::vector<std::string> lines;
    std::vector<std::string> head{"model"};
    for (const auto& ds : ds_names) head.push_back(ds);
    lines.push_back(csv_join(head));
    std::map<std::string, std::vector<double>> col_values;
    for (const auto& arch : archs) {
      std::vector<std::string> row{arch};
      for (const auto& ds : ds_names) {
        auto g = detail::cell_mean(r, ds, arch, &CellResult::rmse_value);
        auto h = detail::cell_mean(r, ds, arch + "+fp", &CellResult::rmse_value);
        std::optional<double> pct;
        if (g && h && *g > 0.0) pct = improvement(*g, *h).pct_improvement;
        if (pct) col_values[ds].push_back(*pct);
        row.push_back(detail::na_or_g6(pct));
      }
      lines.push_back(csv_join(row));
    }
    std::vector<std::string> avg{"average"};
    for (const auto& ds : ds_names) avg.push_back(detail::na_or_g6(detail::mean_of(col_values[ds])));
    lines.push_back(csv_join(avg));
    write_lines(out_dir + "/improvement.csv", lines);
  }

  {  // improvement_per_seed.csv
    std::vector<std::string> lines{csv_join(
        {"dataset", "model", "seed", "rmse_gnn", "rmse_hybrid", "delta_rmse", "pct_improvement"})};
    for (const auto& ds : ds_names) {
      for (const auto& arch : archs) {
        for (uint64_t seed : cfg.seeds) {
          const CellResult* g = detail::find_cell(r.cells, ds, arch, seed);
          const CellResult* h = detail::find_cell(r.cells, ds, arch + "+fp", seed);
          if (!g || !h) continue;
          std::vector<std::string> row{ds, arch, std::to_string(seed)};
          if (g->ok && h->ok && g->rmse_value > 0.0) {
            ImprovementRecord rec = improvement(g->rmse_value, h->rmse_value);
            row.push_back(format_g6(g->rmse_value));
            row.push_back(format_g6(h->rmse_value));
            row.push_back(format_g6(rec.delta_rmse));
            row.push_back(format_g6(rec.pct_improvement));
          } else {
            row.insert(row.end(), {g->ok ? format_g6(g->rmse_value) : "NA",
                                   h->ok ? format_g6(h->rmse_value) : "NA", "NA", "NA"});
          }
          lines.push_back(csv_join(row));
        }
      }
    }
    write_lines(out_dir + "/improvement_per_seed.csv", lines);
  }

  std::vector<std::string> standalone = detail::standalone_architectures(cfg);

  {  // cka_gnn_fp.csv + per-seed
    std::vector<std::string> lines;
    std::vector<std::string> head{"model"};
    for (const auto& ds : ds_names) head.push_back(ds);
    lines.push_back(csv_join(head));
    for (const auto& arch : standalone) {
      std::vector<std::string> row{arch};
      for (const auto& ds : ds_names)
        row.push_back(detail::na_or_g6(detail::cka_mean(r.cka_fp, ds, arch, "fp")));
      lines.push_back(csv_join(row));
    }
    write_lines(out_dir + "/cka_gnn_fp.csv", lines);

    std::vector<std::string> per_seed{csv_join({"dataset", "model", "seed", "cka"})};
    for (const auto& c : r.cka_fp)
      per_seed.push_back(csv_join(
          {c.dataset, c.a, std::to_string(c.seed), c.ok ? format_g6(c.value) : "NA"}));
    write_lines(out_dir + "/cka_gnn_fp_per_seed.csv", per_seed);
  }

  for (const auto& ds : ds_names) {  // cka_gnn_gnn_<dataset>.csv
    std::vector<std::string> lines;
    std::vector<std::string> head{"model"};
    for (const auto& arch : standalone) head.push_back(arch);
    lines.push_back(csv_join(head));
    for (const auto& a : standalone) {
      std::vector<std::string> row{a};
      for (const auto& b : standalone)
        row.push_back(detail::na_or_g6(detail::cka_mean(r.cka_pairs, ds, a, b)));
      lines.push_back(csv_join(row));
    }
    write_lines(out_dir + "/cka_gnn_gnn_" + detail::sanitize_filename(ds) + ".csv", lines);
  }

  {  // cka_gnn_gnn_per_seed.csv (long form)
    std::vector<std::string> lines{csv_join({"dataset", "model_a", "model_b", "seed", "cka"})};
    for (const auto& c : r.cka_pairs)
      lines.push_back(csv_join({c.dataset, c.a, c.b, std::to_string(c.seed),
                                c.ok ? format_g6(c.value) : "NA"}));
    write_lines(out_dir + "/cka_gnn_gnn_per_seed.csv", lines);
  }

  for (const auto& model : cfg.models) {  // predictions/<model>.csv
    std::vector<std::string> lines{csv_join({"dataset", "seed", "row", "y_true", "y_pred"})};
    for (const auto& c : r.cells) {
      if (c.model != model || !c.ok) continue;
      for (size_t i = 0; i < c.y_true.size(); ++i)
        lines.push_back(csv_join({c.dataset, std::to_string(c.seed), std::to_string(i),
                                  format_g6(c.y_true[i]), format_g6(c.y_pred[i])}));
    }
    write_lines(out_dir + "/predictions/" + detail::sanitize_filename(model) + ".csv", lines);
  }

  {  // run_meta — seeds, grid, conventions, per-cell provenance
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : r.cells) {
      nlohmann::json j = {{"dataset", c.dataset},
                          {"model", c.model},
                          {"seed", c.seed},
                          {"status", c.ok ? "ok" : "error"}};
      if (!c.error.empty()) j["error"] = c.error;
      if (c.searched) {
        j["hidden_dim"] = c.hidden_dim;
        j["lr"] = c.lr;
        j["val_rmse"] = c.val_rmse;
        if (!c.diverged.empty()) j["diverged_grid_points"] = c.diverged;
      }
      cells.push_back(j);
    }
    nlohmann::json cka_errors = nlohmann::json::array();
    for (const auto& lists : {&r.cka_fp, &r.cka_pairs})
      for (const auto& c : *lists)
        if (!c.ok)
          cka_errors.push_back({{"dataset", c.dataset},
                                {"a", c.a},
                                {"b", c.b},
                                {"seed", c.seed},
                                {"error", c.error}});
    nlohmann::json rejections = nlohmann::json::object();
    for (const auto& [name, count] : r.rejections) rejections[name] = count;
    nlohmann::json meta = {{"config", cfg.to_json()},
                           {"rejections", rejections},
                           {"cells", cells},
                           {"cka_errors", cka_errors}};
    std::ofstream os(out_dir + "/run_meta", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + out_dir + "/run_meta");
    os << meta.dump(2) << "\n";
  }
}

}  // namespace molbench::bench
