#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "molbench/cka/cka.hpp"
#include "molbench/core/rng.hpp"

using namespace molbench;
using core::Matrix;

namespace {
Matrix randn(core::Rng& rng, int r, int c) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.normal();
  return m;
}
}  // namespace

TEST_CASE("median of pairwise squared distances") {
  // four 1-d points 0, 1, 3: squared distances {1, 9, 4} -> median 4
  Matrix x(3, 1);
  x << 0, 1, 3;
  CHECK(cka::detail::raw_median_sq(x) == 4.0);

  // even count: {0, 2} -> distances {4} ... use 4 points for a real even case
  Matrix y(4, 1);
  y << 0, 1, 2, 4;  // squared: 1, 4, 16, 1, 9, 4 -> sorted 1 1 4 4 9 16 -> (4+4)/2
  CHECK(cka::detail::raw_median_sq(y) == 4.0);

  Matrix z(4, 1);
  z << 0, 1, 2, 3;  // squared: 1 4 9 1 4 1 -> sorted 1 1 1 4 4 9 -> (1+4)/2
  CHECK(cka::detail::raw_median_sq(z) == 2.5);

  CHECK_THROWS(cka::detail::raw_median_sq(Matrix::Zero(1, 3)));

  // all-identical rows give median 0; bandwidth falls back to 1
  CHECK(cka::median_sq_dist(Matrix::Zero(5, 2)) == 1.0);
}

TEST_CASE("rbf gram matrix") {
  Matrix x(2, 1);
  x << 0.0, 2.0;
  SECTION("sigma taken as the median itself") {
    auto g = cka::rbf_gram(x, cka::SigmaConvention::MedianSq);
    CHECK(g.sigma == 4.0);  // only squared distance
    CHECK(g.values(0, 0) == 1.0);
    CHECK(g.values(1, 1) == 1.0);
    // exp(-4 / (2 * 16))
    CHECK_THAT(g.values(0, 1), Catch::Matchers::WithinAbs(std::exp(-0.125), 1e-14));
  }
  SECTION("sigma as the square root of the median") {
    auto g = cka::rbf_gram(x, cka::SigmaConvention::SqrtMedian);
    CHECK(g.sigma == 2.0);
    // exp(-4 / (2 * 4))
    CHECK_THAT(g.values(0, 1), Catch::Matchers::WithinAbs(std::exp(-0.5), 1e-14));
  }
}

TEST_CASE("gram centering zeroes row and column sums") {
  core::Rng rng(3);
  Matrix x = randn(rng, 12, 4);
  auto g = cka::rbf_gram(x, cka::SigmaConvention::MedianSq);
  Matrix c = cka::center_gram(g.values);
  for (int i = 0; i < 12; ++i) {
    CHECK_THAT(c.row(i).sum(), Catch::Matchers::WithinAbs(0.0, 1e-10));
    CHECK_THAT(c.col(i).sum(), Catch::Matchers::WithinAbs(0.0, 1e-10));
  }
}

TEST_CASE("hsic matches the centering-matrix formula") {
  core::Rng rng(4);
  Matrix x = randn(rng, 10, 3);
  Matrix y = randn(rng, 10, 5);
  Matrix k = cka::rbf_gram(x, cka::SigmaConvention::MedianSq).values;
  Matrix l = cka::rbf_gram(y, cka::SigmaConvention::MedianSq).values;

  int n = 10;
  Matrix h = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / n);
  double ref = ((h * k * h).cwiseProduct(l)).sum() / ((n - 1.0) * (n - 1.0));
  double got = cka::hsic(cka::center_gram(k), cka::center_gram(l));
  CHECK_THAT(got, Catch::Matchers::WithinAbs(ref, 1e-12));
}

TEST_CASE("cka of a representation with itself is one") {
  core::Rng rng(9);
  for (int d : {1, 4, 16}) {
    Matrix x = randn(rng, 30, d);
    auto score = cka::cka(x, x);
    CHECK(score.n_samples == 30);
    CHECK_THAT(score.value, Catch::Matchers::WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("cka is exactly symmetric") {
  core::Rng rng(10);
  Matrix x = randn(rng, 25, 6);
  Matrix y = randn(rng, 25, 3);
  // bitwise equality, not approximate
  CHECK(cka::cka(x, y).value == cka::cka(y, x).value);
}

TEST_CASE("cka is invariant to orthogonal transforms") {
  core::Rng rng(11);
  Matrix x = randn(rng, 40, 8);
  Matrix y = randn(rng, 40, 8);
  Eigen::HouseholderQR<Matrix> qr(randn(rng, 8, 8));
  Matrix q = qr.householderQ();
  double base = cka::cka(x, y).value;
  CHECK_THAT(cka::cka(x * q, y).value, Catch::Matchers::WithinAbs(base, 1e-9));
  CHECK_THAT(cka::cka(x, y * q).value, Catch::Matchers::WithinAbs(base, 1e-9));
}

TEST_CASE("independent representations score low") {
  core::Rng rng(12);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    Matrix x = randn(rng, 100, 16);
    Matrix y = randn(rng, 100, 16);
    worst = std::max(worst, cka::cka(x, y).value);
  }
  CHECK(worst < 0.25);
}

TEST_CASE("related representations score high") {
  core::Rng rng(13);
  Matrix x = randn(rng, 60, 8);
  Matrix noise = randn(rng, 60, 8);
  Matrix y = x + 0.05 * noise;
  CHECK(cka::cka(x, y).value > 0.9);
}

TEST_CASE("cka input validation") {
  core::Rng rng(14);
  Matrix x = randn(rng, 10, 3);
  CHECK_THROWS(cka::cka(x, randn(rng, 9, 3)));
  CHECK_THROWS(cka::cka(randn(rng, 2, 3), randn(rng, 2, 3)));  // needs n >= 3
  // constant embedding has zero HSIC with itself: degenerate
  CHECK_THROWS_AS(cka::cka(Matrix::Zero(10, 3), x), std::runtime_error);
}

TEST_CASE("sigma convention names") {
  CHECK(std::string(cka::sigma_convention_name(cka::SigmaConvention::MedianSq)) == "median_sq");
  CHECK(std::string(cka::sigma_convention_name(cka::SigmaConvention::SqrtMedian)) == "sqrt_median");
  CHECK(cka::sigma_convention_from_name("median_sq") == cka::SigmaConvention::MedianSq);
  CHECK(cka::sigma_convention_from_name("sqrt_median") == cka::SigmaConvention::SqrtMedian);
  CHECK_THROWS(cka::sigma_convention_from_name("auto"));
}
