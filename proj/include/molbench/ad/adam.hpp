#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "molbench/core/matrix.hpp"

namespace molbench::ad {

// Adam with bias correction.  One state per parameter, allocated lazily on
// the first step; the caller must pass parameters in a stable order.
class Adam {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(std::vector<core::Matrix*> params, const std::vector<core::Matrix>& grads) {
    if (params.size() != grads.size())
      throw std::invalid_argument("Adam::step: param/grad count mismatch");
    if (states_.empty()) {
      states_.resize(params.size());
      for (size_t i = 0; i < params.size(); ++i) {
        states_[i].m = core::Matrix::Zero(params[i]->rows(), params[i]->cols());
        states_[i].v = core::Matrix::Zero(params[i]->rows(), params[i]->cols());
      }
    }
    if (states_.size() != params.size())
      throw std::invalid_argument("Adam::step: parameter count changed between steps");
    ++t_;
    double bc1 = 1.0 - std::pow(beta1_, t_);
    double bc2 = 1.0 - std::pow(beta2_, t_);
    for (size_t i = 0; i < params.size(); ++i) {
      State& s = states_[i];
      const core::Matrix& g = grads[i];
      s.m = beta1_ * s.m + (1.0 - beta1_) * g;
      s.v = beta2_ * s.v + (1.0 - beta2_) * g.array().square().matrix();
      core::Matrix m_hat = s.m / bc1;
      core::Matrix v_hat = s.v / bc2;
      params[i]->array() -= lr_ * m_hat.array() / (v_hat.array().sqrt() + eps_);
    }
  }

  long step_count() const { return t_; }
  double lr() const { return lr_; }

 private:
  struct State {
    core::Matrix m, v;
  };
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<State> states_;
};

}  // namespace molbench::ad
