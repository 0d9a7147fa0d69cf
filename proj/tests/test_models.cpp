#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "molbench/chem/smiles.hpp"
#include "molbench/chem/standardize.hpp"
#include "molbench/fp/morgan.hpp"
#include "molbench/graph/molgraph.hpp"
#include "molbench/models/gnn_model.hpp"
#include "molbench/models/linreg.hpp"
#include "molbench/models/random_forest.hpp"
#include "molbench/models/serialize.hpp"

using namespace molbench;
using core::Matrix;
using core::Vector;
using models::ModelConfig;

namespace {

graph::MolGraph graph_of(const char* smi) {
  return graph::featurize(chem::standardize(chem::parse_smiles(smi)));
}

// tiny regression set: target = heavy atom count
struct TinySet {
  std::vector<graph::MolGraph> graphs;
  Matrix targets;
  Matrix fp_rows;
};

TinySet tiny_set() {
  const char* smis[] = {"C",    "CC",   "CCO",  "CCC",    "c1ccccc1", "CCN",
                        "CC=O", "CCCC", "CCCO", "CC(C)C", "CCCl",     "CC(=O)O"};
  TinySet s;
  std::vector<double> y;
  std::vector<fp::Fingerprint> fps;
  for (const char* smi : smis) {
    auto mol = chem::standardize(chem::parse_smiles(smi));
    s.graphs.push_back(graph::featurize(mol));
    fps.push_back(fp::ecfp4(mol));
    y.push_back(static_cast<double>(mol.natoms()));
  }
  s.targets = Matrix(static_cast<long>(y.size()), 1);
  for (size_t i = 0; i < y.size(); ++i) s.targets(static_cast<long>(i), 0) = y[i];
  s.fp_rows = Matrix::Zero(static_cast<long>(fps.size()), 1024);
  for (size_t i = 0; i < fps.size(); ++i)
    for (int bit = 0; bit < 1024; ++bit)
      if (fps[i].test(bit)) s.fp_rows(static_cast<long>(i), bit) = 1.0;
  return s;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("model names parse") {
  auto n = models::parse_model_name("gcn+fp");
  CHECK(n.family == models::ModelName::Family::Gnn);
  CHECK(n.layer == models::LayerKind::GCN);
  CHECK(n.use_fingerprint);
  CHECK(models::parse_model_name("sage").layer == models::LayerKind::SAGE);
  CHECK(!models::parse_model_name("gin").use_fingerprint);
  CHECK(models::parse_model_name("linreg").family == models::ModelName::Family::LinReg);
  CHECK(models::parse_model_name("rf").family == models::ModelName::Family::RandomForest);
  CHECK_THROWS(models::parse_model_name("transformer"));
  CHECK_THROWS(models::parse_model_name("rf+fp"));
}

TEST_CASE("parameter layout per architecture") {
  ModelConfig cfg;
  cfg.hidden_dim = 8;
  auto names = [](const models::GnnModel& m) {
    std::vector<std::string> out;
    for (const auto& [n, v] : m.params.items) out.push_back(n);
    return out;
  };

  cfg.layer_kind = models::LayerKind::GCN;
  auto gcn = models::GnnModel::init(cfg);
  CHECK(names(gcn) == std::vector<std::string>(
                          {"conv_w", "head_w1", "head_b1", "head_w2", "head_b2"}));
  CHECK(gcn.params.at("conv_w").rows() == graph::kNodeFeatureDim);
  CHECK(gcn.params.at("head_w2").cols() == 1);
  CHECK(gcn.params.at("head_b1").isZero());

  cfg.layer_kind = models::LayerKind::GAT;
  auto gat = models::GnnModel::init(cfg);
  CHECK(gat.params.at("conv_a").rows() == 16);

  cfg.layer_kind = models::LayerKind::GIN;
  CHECK(names(models::GnnModel::init(cfg)).size() == 8);

  cfg.layer_kind = models::LayerKind::SAGE;
  cfg.use_fingerprint = true;
  auto hybrid = models::GnnModel::init(cfg);
  CHECK(hybrid.params.at("fp_w").rows() == 1024);
  CHECK(hybrid.params.at("head_w1").rows() == 16);  // concat tap doubles the head input

  cfg.use_fingerprint = false;
  CHECK(models::GnnModel::init(cfg).params.at("head_w1").rows() == 8);

  // same seed reproduces weights exactly; different seed does not
  cfg.layer_kind = models::LayerKind::GCN;
  cfg.seed = 3;
  Matrix w1 = models::GnnModel::init(cfg).params.at("conv_w");
  CHECK((w1 - models::GnnModel::init(cfg).params.at("conv_w")).isZero(0.0));
  cfg.seed = 4;
  CHECK(!(w1 - models::GnnModel::init(cfg).params.at("conv_w")).isZero(0.0));
}

TEST_CASE("config validation") {
  ModelConfig cfg;
  cfg.hidden_dim = 0;
  CHECK_THROWS(cfg.validate());
  cfg.hidden_dim = 8;
  cfg.lr = 0.0;
  CHECK_THROWS(cfg.validate());
  cfg.lr = 1e-3;
  cfg.epochs = -1;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("training reduces loss") {
  TinySet s = tiny_set();
  ModelConfig cfg;
  cfg.layer_kind = models::LayerKind::GCN;
  cfg.hidden_dim = 16;
  cfg.lr = 0.01;
  cfg.epochs = 60;
  cfg.seed = 1;

  auto model = models::train_gnn(cfg, s.graphs, s.targets, nullptr);
  REQUIRE(model.train_loss_curve.size() == 60);
  CHECK(model.train_loss_curve.back() < model.train_loss_curve.front());
  for (double v : model.train_loss_curve) CHECK(std::isfinite(v));

  auto pred = model.predict(s.graphs, nullptr);
  REQUIRE(pred.y_hat.rows() == 12);
  CHECK(pred.embedding.cols() == 16);
  CHECK(pred.y_hat.allFinite());

  SECTION("hybrid consumes fingerprints and widens the tap") {
    cfg.use_fingerprint = true;
    auto hybrid = models::train_gnn(cfg, s.graphs, s.targets, &s.fp_rows);
    auto hp = hybrid.predict(s.graphs, &s.fp_rows);
    CHECK(hp.embedding.cols() == 32);
    CHECK(hp.y_hat.allFinite());
    CHECK_THROWS_AS(hybrid.predict(s.graphs, nullptr), std::invalid_argument);
    Matrix wrong = Matrix::Zero(3, 1024);
    CHECK_THROWS_AS(hybrid.predict(s.graphs, &wrong), std::invalid_argument);
  }
  SECTION("standalone model rejects stray fingerprints") {
    CHECK_THROWS_AS(model.predict(s.graphs, &s.fp_rows), std::invalid_argument);
  }
}

TEST_CASE("training diverges loudly") {
  TinySet s = tiny_set();
  ModelConfig cfg;
  cfg.layer_kind = models::LayerKind::GCN;
  cfg.hidden_dim = 8;
  cfg.lr = 1e100;
  cfg.epochs = 50;
  try {
    models::train_gnn(cfg, s.graphs, s.targets, nullptr);
    FAIL("expected DivergedError");
  } catch (const models::DivergedError& e) {
    CHECK(e.epoch >= 0);
    CHECK(e.epoch <= 50);
  }
}

TEST_CASE("training input validation") {
  TinySet s = tiny_set();
  ModelConfig cfg;
  CHECK_THROWS_AS(models::train_gnn(cfg, {}, Matrix::Zero(0, 1), nullptr),
                  std::invalid_argument);
  CHECK_THROWS_AS(models::train_gnn(cfg, s.graphs, Matrix::Zero(3, 1), nullptr),
                  std::invalid_argument);
}

TEST_CASE("gnn serialization round trip") {
  TinySet s = tiny_set();
  ModelConfig cfg;
  cfg.layer_kind = models::LayerKind::GAT;
  cfg.hidden_dim = 8;
  cfg.epochs = 10;
  cfg.seed = 9;
  auto model = models::train_gnn(cfg, s.graphs, s.targets, nullptr);

  std::string path = temp_path("molbench_test_gat.bin");
  models::save_gnn(path, model);
  CHECK(models::model_kind(path) == "gnn");
  auto loaded = models::load_gnn(path);
  CHECK(loaded.config.layer_kind == models::LayerKind::GAT);
  CHECK(loaded.config.hidden_dim == 8);
  CHECK(loaded.train_loss_curve == model.train_loss_curve);

  auto a = model.predict(s.graphs, nullptr);
  auto b = loaded.predict(s.graphs, nullptr);
  CHECK((a.y_hat - b.y_hat).isZero(0.0));  // bit-exact round trip
  std::remove(path.c_str());
}

TEST_CASE("serialization rejects foreign files") {
  std::string path = temp_path("molbench_test_junk.bin");
  {
    FILE* f = std::fopen(path.c_str(), "wb");
    REQUIRE(f);
    std::fputs("not a model", f);
    std::fclose(f);
  }
  CHECK_THROWS(models::model_kind(path));
  CHECK_THROWS(models::load_gnn(path));
  std::remove(path.c_str());
}

TEST_CASE("linear regression") {
  core::Rng rng(21);
  Matrix X(60, 2);
  Vector y(60);
  for (int i = 0; i < 60; ++i) {
    X(i, 0) = rng.normal();
    X(i, 1) = rng.normal();
    y(i) = 1.7 * X(i, 0) - 0.4 * X(i, 1) + 0.9;
  }

  SECTION("exact recovery with lambda 0") {
    auto lr = models::LinReg::fit(X, y, 0.0);
    REQUIRE(lr.beta.size() == 3);
    CHECK_THAT(lr.beta(0), Catch::Matchers::WithinAbs(1.7, 1e-9));
    CHECK_THAT(lr.beta(1), Catch::Matchers::WithinAbs(-0.4, 1e-9));
    CHECK_THAT(lr.beta(2), Catch::Matchers::WithinAbs(0.9, 1e-9));
    Vector resid = lr.predict(X) - y;
    CHECK(resid.norm() / std::sqrt(60.0) < 1e-10);
  }
  SECTION("ridge shrinks but stays close") {
    auto lr = models::LinReg::fit(X, y, 1e-6);
    CHECK_THAT(lr.beta(0), Catch::Matchers::WithinAbs(1.7, 1e-5));
  }
  SECTION("ridge matches the normal equations") {
    double lam = 0.5;
    auto lr = models::LinReg::fit(X, y, lam);
    Matrix Xa(60, 3);
    Xa << X, Matrix::Ones(60, 1);
    Matrix A = Xa.transpose() * Xa;
    A(0, 0) += lam;
    A(1, 1) += lam;  // intercept not penalized
    Vector ref = A.ldlt().solve(Xa.transpose() * y);
    CHECK((lr.beta - ref).norm() < 1e-10);
  }
  SECTION("singular design with lambda 0 is an error") {
    Matrix Xs(60, 2);
    Xs.col(0) = X.col(0);
    Xs.col(1) = 2.0 * X.col(0);  // collinear
    CHECK_THROWS_AS(models::LinReg::fit(Xs, y, 0.0), std::runtime_error);
    CHECK_NOTHROW(models::LinReg::fit(Xs, y, 1e-6));
  }
}

TEST_CASE("random forest") {
  // binary design, matching the fingerprint rows the forest is built for;
  // additive target so every impure node has a variance-reducing split
  core::Rng rng(33);
  Matrix X(80, 12);
  Vector y(80);
  for (int i = 0; i < 80; ++i) {
    y(i) = 0.0;
    for (int j = 0; j < 12; ++j) {
      X(i, j) = rng.index(2) == 0 ? 0.0 : 1.0;
      y(i) += (1.0 + 0.37 * j) * X(i, j);
    }
  }

  SECTION("depth zero predicts the training mean") {
    models::RfConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 0;
    cfg.bootstrap = false;
    auto rf = models::RandomForest::fit(X, y, cfg);
    Vector pred = rf.predict(X);
    double mean = y.mean();
    for (int i = 0; i < 80; ++i)
      CHECK_THAT(pred(i), Catch::Matchers::WithinAbs(mean, 1e-12));
  }
  SECTION("constant target is reproduced under bootstrap") {
    Vector yc = Vector::Constant(80, 3.25);
    models::RfConfig cfg;
    cfg.n_trees = 5;
    auto rf = models::RandomForest::fit(X, yc, cfg);
    CHECK_THAT(rf.predict(X)(7), Catch::Matchers::WithinAbs(3.25, 1e-12));
  }
  SECTION("deep single tree memorizes the training data") {
    models::RfConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 30;
    cfg.bootstrap = false;
    cfg.n_feature_candidates = 12;  // all features at every split
    auto rf = models::RandomForest::fit(X, y, cfg);
    Vector pred = rf.predict(X);
    CHECK((pred - y).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("forest learns a single-bit step function") {
    Vector ys(80);
    for (int i = 0; i < 80; ++i) ys(i) = X(i, 0) == 1.0 ? 2.0 : -2.0;
    models::RfConfig cfg;
    cfg.n_trees = 40;
    cfg.seed = 5;
    auto rf = models::RandomForest::fit(X, ys, cfg);
    Vector pred = rf.predict(X);
    double rmse = std::sqrt((pred - ys).squaredNorm() / 80.0);
    CHECK(rmse < 1.0);
  }
  SECTION("deterministic for a fixed seed") {
    models::RfConfig cfg;
    cfg.seed = 17;
    auto a = models::RandomForest::fit(X, y, cfg);
    auto b = models::RandomForest::fit(X, y, cfg);
    CHECK((a.predict(X) - b.predict(X)).isZero(0.0));
  }
  SECTION("round trips through the model file") {
    models::RfConfig cfg;
    cfg.n_trees = 10;
    cfg.seed = 2;
    auto rf = models::RandomForest::fit(X, y, cfg);
    std::string path = temp_path("molbench_test_rf.bin");
    models::save_rf(path, rf);
    CHECK(models::model_kind(path) == "rf");
    auto loaded = models::load_rf(path);
    CHECK((rf.predict(X) - loaded.predict(X)).isZero(0.0));
    std::remove(path.c_str());
  }
}

TEST_CASE("linreg serialization") {
  Matrix X(10, 2);
  Vector y(10);
  core::Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    X(i, 0) = rng.normal();
    X(i, 1) = rng.normal();
    y(i) = X(i, 0);
  }
  auto lr = models::LinReg::fit(X, y);
  std::string path = temp_path("molbench_test_lr.bin");
  models::save_linreg(path, lr);
  CHECK(models::model_kind(path) == "linreg");
  auto loaded = models::load_linreg(path);
  CHECK((loaded.beta - lr.beta).norm() == 0.0);
  CHECK(loaded.lambda == lr.lambda);
  std::remove(path.c_str());
}
