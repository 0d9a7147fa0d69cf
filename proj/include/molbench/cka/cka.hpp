#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "molbench/core/matrix.hpp"

namespace molbench::cka {

using core::Matrix;

// Bandwidth rule.  MedianSq takes σ equal to the median *squared* distance
// and uses it inside exp(−d²/(2σ²)) — deliberately literal; SqrtMedian is
// the textbook heuristic σ² = median(d²).
enum class SigmaConvention { MedianSq, SqrtMedian };

inline const char* sigma_convention_name(SigmaConvention c) {
  return c == SigmaConvention::MedianSq ? "median_sq" : "sqrt_median";
}

inline SigmaConvention sigma_convention_from_name(const std::string& s) {
  if (s == "median_sq") return SigmaConvention::MedianSq;
  if (s == "sqrt_median") return SigmaConvention::SqrtMedian;
  throw std::invalid_argument("unknown sigma convention: " + s);
}

struct GramMatrix {
  Matrix values;
  double sigma = 1.0;
};

struct CkaScore {
  double value = 0.0;
  int n_samples = 0;
};

namespace detail {

inline double raw_median_sq(const Matrix& X) {
  const long n = X.rows();
  if (n < 2) throw std::invalid_argument("median_sq_dist: need at least 2 rows");
  std::vector<double> d2;
  d2.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) d2.push_back((X.row(i) - X.row(j)).squaredNorm());
  std::sort(d2.begin(), d2.end());
  size_t m = d2.size();
  if (m % 2 == 1) return d2[m / 2];
  return 0.5 * (d2[m / 2 - 1] + d2[m / 2]);
}

}  // namespace detail

// σ = median of pairwise squared Euclidean distances (mean of the central
// pair for even counts); all-identical points fall back to σ = 1.
inline double median_sq_dist(const Matrix& X) {
  double med = detail::raw_median_sq(X);
  return med == 0.0 ? 1.0 : med;
}

inline double bandwidth_sigma(const Matrix& X, SigmaConvention conv) {
  double med = detail::raw_median_sq(X);
  if (med == 0.0) return 1.0;
  return conv == SigmaConvention::MedianSq ? med : std::sqrt(med);
}

inline GramMatrix rbf_gram(const Matrix& X, SigmaConvention conv = SigmaConvention::MedianSq) {
  GramMatrix g;
  g.sigma = bandwidth_sigma(X, conv);
  const long n = X.rows();
  g.values.resize(n, n);
  double denom = 2.0 * g.sigma * g.sigma;
  for (long i = 0; i < n; ++i) {
    g.values(i, i) = 1.0;
    for (long j = i + 1; j < n; ++j) {
      double d2 = (X.row(i) - X.row(j)).squaredNorm();
      double k = std::exp(-d2 / denom);
      g.values(i, j) = k;
      g.values(j, i) = k;
    }
  }
  return g;
}

// HKH with H = I − (1/n)·11ᵀ, via explicit row/column/total means.
inline Matrix center_gram(const Matrix& K) {
  if (K.rows() != K.cols())
    throw std::invalid_argument("center_gram: matrix must be square, got " +
                                core::shape_str(K));
  const long n = K.rows();
  Eigen::VectorXd row_mean = K.rowwise().mean();
  Eigen::RowVectorXd col_mean = K.colwise().mean();
  double total = K.mean();
  Matrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(i, j) = K(i, j) - row_mean(i) - col_mean(j) + total;
  return out;
}

// Biased HSIC estimator tr(K_c L_c)/(n−1)² for symmetric centered Grams.
inline double hsic(const Matrix& Kc, const Matrix& Lc) {
  if (Kc.rows() != Lc.rows() || Kc.cols() != Lc.cols())
    throw std::invalid_argument("hsic: shape mismatch " + core::shape_str(Kc) + " vs " +
                                core::shape_str(Lc));
  double n = static_cast<double>(Kc.rows());
  return Kc.cwiseProduct(Lc).sum() / ((n - 1.0) * (n - 1.0));
}

inline CkaScore cka(const Matrix& X, const Matrix& Y,
                    SigmaConvention conv = SigmaConvention::MedianSq) {
  if (X.rows() != Y.rows())
    throw std::invalid_argument("cka: row counts differ: " + core::shape_str(X) + " vs " +
                                core::shape_str(Y));
  if (X.rows() < 3) throw std::invalid_argument("cka: need at least 3 rows");
  Matrix Kc = center_gram(rbf_gram(X, conv).values);
  Matrix Lc = center_gram(rbf_gram(Y, conv).values);
  double hxx = hsic(Kc, Kc);
  double hyy = hsic(Lc, Lc);
  if (hxx == 0.0 || hyy == 0.0)
    throw std::runtime_error("cka: degenerate representation (constant embedding)");
  double hxy = hsic(Kc, Lc);
  CkaScore s;
  s.n_samples = static_cast<int>(X.rows());
  s.value = std::max(0.0, hxy / std::sqrt(hxx * hyy));
  return s;
}

}  // namespace molbench::cka
