// molbench — molecular GNN benchmarking CLI.
//
//   prep   standardize a SMILES/target CSV, dropping and logging bad rows
//   train  fit one model on a prepared CSV and save it
//   bench  run the full benchmark described by a JSON config
//   cka    CKA similarity between two embedding CSVs

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "molbench/molbench.hpp"

namespace mb = molbench;

namespace {

int cmd_prep(const std::string& in_path, const std::string& smiles_col,
             const std::string& target_col, const std::string& out_path,
             const std::string& fp_out) {
  mb::bench::Dataset ds = mb::bench::load_csv(in_path, smiles_col, target_col);
  std::vector<std::string> lines{mb::bench::csv_join({"smiles", "target"})};
  for (const auto& rec : ds.records)
    lines.push_back(mb::bench::csv_join({rec.smiles, mb::bench::format_g6(rec.target)}));
  mb::bench::write_lines(out_path, lines);
  if (!fp_out.empty()) {
    std::vector<std::string> hex;
    hex.reserve(ds.records.size());
    for (const auto& rec : ds.records) hex.push_back(rec.fingerprint.to_hex());
    mb::bench::write_lines(fp_out, hex);
  }
  for (const auto& rej : ds.rejections)
    std::cerr << "reject row " << rej.row << " [" << rej.smiles << "]: " << rej.reason
              << "\n";
  std::cerr << "kept " << ds.records.size() << " rows, rejected " << ds.rejections.size()
            << "\n";
  return 0;
}

int cmd_train(const std::string& data_path, const std::string& smiles_col,
              const std::string& target_col, const std::string& model_name, uint64_t seed,
              int hidden, double lr, int epochs, const std::string& out_path) {
  mb::models::ModelName name = mb::models::parse_model_name(model_name);
  mb::bench::Dataset ds = mb::bench::load_csv(data_path, smiles_col, target_col);
  std::vector<int> all(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) all[i] = static_cast<int>(i);

  std::vector<double> y_true = mb::bench::detail::to_std(mb::bench::target_rows(ds, all));
  std::vector<double> y_hat;

  if (name.family == mb::models::ModelName::Family::LinReg) {
    mb::core::Matrix X = mb::bench::fingerprint_rows(ds, all);
    Eigen::VectorXd y = mb::bench::target_rows(ds, all).col(0);
    mb::models::LinReg m = mb::models::LinReg::fit(X, y);
    mb::models::save_linreg(out_path, m);
    y_hat = mb::bench::detail::to_std(m.predict(X));
  } else if (name.family == mb::models::ModelName::Family::RandomForest) {
    mb::core::Matrix X = mb::bench::fingerprint_rows(ds, all);
    Eigen::VectorXd y = mb::bench::target_rows(ds, all).col(0);
    mb::models::RfConfig cfg;
    cfg.seed = seed;
    mb::models::RandomForest m = mb::models::RandomForest::fit(X, y, cfg);
    mb::models::save_rf(out_path, m);
    y_hat = mb::bench::detail::to_std(m.predict(X));
  } else {
    mb::models::ModelConfig cfg;
    cfg.layer_kind = name.layer;
    cfg.use_fingerprint = name.use_fingerprint;
    cfg.hidden_dim = hidden;
    cfg.lr = lr;
    cfg.epochs = epochs;
    cfg.seed = seed;
    auto graphs = mb::bench::graph_rows(ds, all);
    auto y = mb::bench::target_rows(ds, all);
    mb::core::Matrix fp_rows;
    if (name.use_fingerprint) fp_rows = mb::bench::fingerprint_rows(ds, all);
    mb::models::GnnModel m =
        mb::models::train_gnn(cfg, graphs, y, name.use_fingerprint ? &fp_rows : nullptr);
    mb::models::save_gnn(out_path, m);
    auto pred = m.predict(graphs, name.use_fingerprint ? &fp_rows : nullptr);
    y_hat = mb::bench::detail::to_std(pred.y_hat);
  }
  std::cout << "model: " << model_name << "\n"
            << "rows: " << ds.size() << "\n"
            << "train_rmse: " << mb::bench::format_g6(mb::bench::rmse(y_true, y_hat)) << "\n"
            << "saved: " << out_path << "\n";
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir) {
  mb::bench::RunConfig cfg = mb::bench::RunConfig::load(config_path);
  mb::bench::RunResult result = mb::bench::run_benchmark(cfg);
  mb::bench::write_reports(result, out_dir);
  int failed = 0;
  for (const auto& c : result.cells)
    if (!c.ok) ++failed;
  std::cout << "cells: " << result.cells.size() << " (" << failed << " failed)\n"
            << "reports: " << out_dir << "\n";
  return 0;
}

mb::core::Matrix read_embedding_csv(const std::string& path) {
  mb::bench::CsvTable t = mb::bench::read_csv(path);
  if (t.rows.empty()) throw std::runtime_error("no data rows in " + path);
  long cols = static_cast<long>(t.header.size());
  mb::core::Matrix m(static_cast<long>(t.rows.size()), cols);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    if (static_cast<long>(t.rows[i].size()) != cols)
      throw std::runtime_error(path + ": row " + std::to_string(i + 1) +
                               " has wrong field count");
    for (long j = 0; j < cols; ++j) m(static_cast<long>(i), j) = std::stod(t.rows[i][j]);
  }
  return m;
}

int cmd_cka(const std::string& path_a, const std::string& path_b,
            const std::string& convention) {
  mb::core::Matrix A = read_embedding_csv(path_a);
  mb::core::Matrix B = read_embedding_csv(path_b);
  mb::cka::CkaScore s =
      mb::cka::cka(A, B, mb::cka::sigma_convention_from_name(convention));
  std::cout << mb::bench::format_g6(s.value) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale molecular GNN benchmarking toolkit"};
  app.require_subcommand(1);

  auto* prep = app.add_subcommand("prep", "standardize a SMILES/target CSV");
  std::string prep_in, prep_smiles, prep_target, prep_out, prep_fp_out;
  prep->add_option("--in", prep_in, "input CSV")->required();
  prep->add_option("--smiles-col", prep_smiles, "SMILES column name")->required();
  prep->add_option("--target-col", prep_target, "target column name")->required();
  prep->add_option("--out", prep_out, "output CSV")->required();
  prep->add_option("--fp-out", prep_fp_out, "optional hex fingerprint dump, one line per row");

  auto* train = app.add_subcommand("train", "fit one model and save it");
  std::string train_data, train_model, train_out;
  std::string train_smiles = "smiles", train_target = "target";
  uint64_t train_seed = 0;
  int train_hidden = 64, train_epochs = 100;
  double train_lr = 1e-3;
  train->add_option("--data", train_data, "prepared CSV")->required();
  train->add_option("--model", train_model,
                    "gcn|gat|gin|sage|gcn+fp|gat+fp|gin+fp|sage+fp|linreg|rf")
      ->required();
  train->add_option("--seed", train_seed, "random seed")->required();
  train->add_option("--hidden", train_hidden, "hidden dimension (GNN models)");
  train->add_option("--lr", train_lr, "learning rate (GNN models)");
  train->add_option("--epochs", train_epochs, "training epochs (GNN models)");
  train->add_option("--smiles-col", train_smiles, "SMILES column name");
  train->add_option("--target-col", train_target, "target column name");
  train->add_option("--out", train_out, "model output file")->required();

  auto* bench = app.add_subcommand("bench", "run the full benchmark pipeline");
  std::string bench_config, bench_out;
  bench->add_option("--config", bench_config, "JSON run configuration")->required();
  bench->add_option("--out", bench_out, "output directory")->required();

  auto* cka = app.add_subcommand("cka", "CKA similarity of two embedding CSVs");
  std::string cka_a, cka_b, cka_conv = "median_sq";
  cka->add_option("--embeddings-a", cka_a, "first embedding CSV")->required();
  cka->add_option("--embeddings-b", cka_b, "second embedding CSV")->required();
  cka->add_option("--sigma-convention", cka_conv, "median_sq|sqrt_median")
      ->check(CLI::IsMember({"median_sq", "sqrt_median"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (prep->parsed())
      return cmd_prep(prep_in, prep_smiles, prep_target, prep_out, prep_fp_out);
    if (train->parsed())
      return cmd_train(train_data, train_smiles, train_target, train_model, train_seed,
                       train_hidden, train_lr, train_epochs, train_out);
    if (bench->parsed()) return cmd_bench(bench_config, bench_out);
    if (cka->parsed()) return cmd_cka(cka_a, cka_b, cka_conv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
