#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "molbench/core/matrix.hpp"

namespace molbench::models {

// Closed-form ridge regression with an unpenalized intercept.  lambda
// defaults to a small numerical guard; lambda = 0 demands a full-rank design
// and solves by QR instead.
struct LinReg {
  Eigen::VectorXd beta;  // feature weights then intercept (last entry)
  double lambda = 1e-6;

  static LinReg fit(const core::Matrix& X, const Eigen::VectorXd& y, double lambda = 1e-6) {
    if (X.rows() < 1) throw std::invalid_argument("LinReg::fit: need at least one sample");
    if (X.rows() != y.rows())
      throw std::invalid_argument("LinReg::fit: X rows and y length differ");
    if (lambda < 0) throw std::invalid_argument("LinReg::fit: lambda must be >= 0");
    const long n = X.rows(), d = X.cols();
    core::Matrix Z(n, d + 1);
    Z.leftCols(d) = X;
    Z.col(d).setOnes();

    LinReg model;
    model.lambda = lambda;
    if (lambda == 0.0) {
      Eigen::ColPivHouseholderQR<core::Matrix> qr(Z);
      if (qr.rank() < d + 1)
        throw std::runtime_error(
            "LinReg::fit: singular system with lambda = 0; use lambda > 0");
      model.beta = qr.solve(y);
    } else {
      core::Matrix M = Z.transpose() * Z;
      for (long j = 0; j < d; ++j) M(j, j) += lambda;  // intercept unpenalized
      Eigen::LDLT<core::Matrix> ldlt(M);
      if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("LinReg::fit: normal-equation factorization failed");
      model.beta = ldlt.solve(Z.transpose() * y);
    }
    return model;
  }

  Eigen::VectorXd predict(const core::Matrix& X) const {
    if (X.cols() + 1 != beta.rows())
      throw std::invalid_argument("LinReg::predict: feature count mismatch");
    return X * beta.head(beta.rows() - 1) + Eigen::VectorXd::Constant(X.rows(), beta(beta.rows() - 1));
  }
};

}  // namespace molbench::models
