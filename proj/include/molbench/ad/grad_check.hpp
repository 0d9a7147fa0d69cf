#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "molbench/ad/tape.hpp"

namespace molbench::ad {

// Central-difference gradient verification.  `build` receives a fresh tape
// plus one Var per parameter (requires_grad = true) and returns the scalar
// loss Var.  Returns the maximum relative error over all coordinates, with
// relative error |a − n| / max(1, |a|, |n|).
template <typename BuildFn>
double grad_check(BuildFn&& build, std::vector<Matrix> params, double h = 1e-5) {
  auto eval = [&](const std::vector<Matrix>& p, std::vector<Matrix>* grads) {
    Tape tape;
    std::vector<Var> vars;
    vars.reserve(p.size());
    for (const Matrix& m : p) vars.push_back(tape.input(m, true));
    Var loss = build(tape, vars);
    double value = tape.value(loss)(0, 0);
    if (grads) {
      tape.backward(loss);
      grads->clear();
      for (Var v : vars) grads->push_back(tape.grad(v));
    }
    return value;
  };

  std::vector<Matrix> analytic;
  eval(params, &analytic);

  double max_rel = 0.0;
  for (size_t pi = 0; pi < params.size(); ++pi) {
    for (long i = 0; i < params[pi].rows(); ++i) {
      for (long j = 0; j < params[pi].cols(); ++j) {
        double orig = params[pi](i, j);
        params[pi](i, j) = orig + h;
        double f_plus = eval(params, nullptr);
        params[pi](i, j) = orig - h;
        double f_minus = eval(params, nullptr);
        params[pi](i, j) = orig;
        double numeric = (f_plus - f_minus) / (2.0 * h);
        double a = analytic[pi](i, j);
        double rel = std::abs(a - numeric) / std::max({1.0, std::abs(a), std::abs(numeric)});
        max_rel = std::max(max_rel, rel);
      }
    }
  }
  return max_rel;
}

}  // namespace molbench::ad
