#pragma once

#include <cmath>
#include <vector>

#include "molbench/ad/tape.hpp"
#include "molbench/core/rng.hpp"
#include "molbench/graph/batch.hpp"

namespace molbench::gnn {

using ad::Tape;
using ad::Var;
using core::Matrix;
using graph::BatchedGraphs;

inline Matrix glorot_uniform(core::Rng& rng, int rows, int cols) {
  double limit = std::sqrt(6.0 / (rows + cols));
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(-limit, limit);
  return m;
}

namespace detail {

inline Var constant_column(Tape& t, const std::vector<double>& v) {
  Matrix m(static_cast<long>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return t.input(std::move(m), false);
}

}  // namespace detail

// H' = D̂^{-1/2} (A+I) D̂^{-1/2} X W, evaluated edge-wise over the
// self-loop-augmented edge list with weights 1/sqrt(d̂_u d̂_v), d̂ = deg + 1.
inline Var gcn_layer(Tape& t, const BatchedGraphs& b, Var x, Var w) {
  int n = b.n_nodes();
  Var h = t.matmul(x, w);
  std::vector<double> coeff(b.loop_src.size());
  for (size_t e = 0; e < b.loop_src.size(); ++e) {
    double du = b.degree[b.loop_src[e]] + 1.0;
    double dv = b.degree[b.loop_dst[e]] + 1.0;
    coeff[e] = 1.0 / std::sqrt(du * dv);
  }
  Var msg = t.gather_rows(h, b.loop_src);
  msg = t.mul_col_broadcast(msg, detail::constant_column(t, coeff));
  return t.scatter_sum(msg, b.loop_dst, n);
}

// Single-head attention over neighbors plus self-loop:
// e_uv = leaky_relu(aᵀ[Wx_u ‖ Wx_v]), α = softmax over sources per target v,
// h'_v = Σ α_uv W x_u.
inline Var gat_layer(Tape& t, const BatchedGraphs& b, Var x, Var w, Var a,
                     double slope = 0.2) {
  int n = b.n_nodes();
  Var h = t.matmul(x, w);
  Var src = t.gather_rows(h, b.loop_src);
  Var dst = t.gather_rows(h, b.loop_dst);
  Var scores = t.matmul(t.concat_cols(src, dst), a);
  scores = t.leaky_relu(scores, slope);
  Var alpha = t.segment_softmax(scores, b.loop_dst, n);
  Var msg = t.mul_col_broadcast(src, alpha);
  return t.scatter_sum(msg, b.loop_dst, n);
}

// h'_v = MLP((1+ε)x_v + Σ_{u∈N(v)} x_u) with ε = 0; MLP = linear→ReLU→linear.
inline Var gin_layer(Tape& t, const BatchedGraphs& b, Var x, Var w1, Var b1, Var w2,
                     Var b2) {
  int n = b.n_nodes();
  Var neigh = t.scatter_sum(t.gather_rows(x, b.edge_src), b.edge_dst, n);
  Var agg = t.add(x, neigh);
  Var hidden = t.relu(t.add_row_broadcast(t.matmul(agg, w1), b1));
  return t.add_row_broadcast(t.matmul(hidden, w2), b2);
}

// h'_v = W_self x_v + W_neigh · mean_{u∈N(v)} x_u; neighborless → zero
// neighbor term.  Optional L2 row normalization of the output.
inline Var sage_layer(Tape& t, const BatchedGraphs& b, Var x, Var w_self, Var w_neigh,
                      bool l2_normalize = false) {
  int n = b.n_nodes();
  Var neigh_sum = t.scatter_sum(t.gather_rows(x, b.edge_src), b.edge_dst, n);
  std::vector<double> inv_deg(n);
  for (int i = 0; i < n; ++i) inv_deg[i] = b.degree[i] > 0.0 ? 1.0 / b.degree[i] : 0.0;
  Var neigh_mean = t.mul_col_broadcast(neigh_sum, detail::constant_column(t, inv_deg));
  Var out = t.add(t.matmul(x, w_self), t.matmul(neigh_mean, w_neigh));
  if (l2_normalize) out = t.row_l2_normalize(out);
  return out;
}

inline Var global_mean_pool(Tape& t, Var node_embeddings, const BatchedGraphs& b) {
  return t.segment_mean(node_embeddings, b.graph_ids, b.n_graphs);
}

}  // namespace molbench::gnn
