#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "molbench/core/matrix.hpp"

namespace molbench::ad {

using core::Matrix;

// Handle into a Tape's node list.  Cheap to copy; only valid for the tape
// that created it.
struct Var {
  int idx = -1;
};

// Reverse-mode tape over dense 64-bit matrices.  Nodes are appended during
// the forward pass; backward() replays them in reverse creation order.
// Closures capture node indices, never pointers or references into the node
// vector, so it may reallocate freely while the graph grows.  Gradients only
// accumulate into nodes whose requires_grad flag propagated true.
class Tape {
 public:
  Var input(Matrix value, bool requires_grad) {
    return push(std::move(value), requires_grad, nullptr);
  }

  const Matrix& value(Var v) const { return node(v).value; }
  const Matrix& grad(Var v) const { return node(v).grad; }
  bool requires_grad(Var v) const { return node(v).requires_grad; }

  Var matmul(Var a, Var b) {
    const Matrix& A = value(a);
    const Matrix& B = value(b);
    if (A.cols() != B.rows()) throw shape_error("matmul", A, B);
    return binary_op(a, b, A * B, [ai = a.idx, bi = b.idx](Tape& t, const Matrix& g) {
      if (t.wants(ai)) t.nodes_[ai].grad.noalias() += g * t.nodes_[bi].value.transpose();
      if (t.wants(bi)) t.nodes_[bi].grad.noalias() += t.nodes_[ai].value.transpose() * g;
    });
  }

  Var add(Var a, Var b) {
    const Matrix& A = value(a);
    const Matrix& B = value(b);
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw shape_error("add", A, B);
    return binary_op(a, b, A + B, [ai = a.idx, bi = b.idx](Tape& t, const Matrix& g) {
      if (t.wants(ai)) t.nodes_[ai].grad += g;
      if (t.wants(bi)) t.nodes_[bi].grad += g;
    });
  }

  // A (m×d) plus a 1×d bias row added to every row.
  Var add_row_broadcast(Var a, Var bias) {
    const Matrix& A = value(a);
    const Matrix& B = value(bias);
    if (B.rows() != 1 || B.cols() != A.cols()) throw shape_error("add_row_broadcast", A, B);
    Matrix out = A.rowwise() + B.row(0);
    return binary_op(a, bias, std::move(out),
                     [ai = a.idx, bi = bias.idx](Tape& t, const Matrix& g) {
                       if (t.wants(ai)) t.nodes_[ai].grad += g;
                       if (t.wants(bi)) t.nodes_[bi].grad += g.colwise().sum();
                     });
  }

  Var relu(Var a) {
    Matrix out = value(a).cwiseMax(0.0);
    return unary_op(a, std::move(out), [ai = a.idx](Tape& t, const Matrix& g) {
      const Matrix& x = t.nodes_[ai].value;
      t.nodes_[ai].grad += (x.array() > 0.0).select(g, Matrix::Zero(g.rows(), g.cols()));
    });
  }

  Var leaky_relu(Var a, double slope = 0.2) {
    const Matrix& x = value(a);
    Matrix out = (x.array() > 0.0).select(x, x * slope);
    return unary_op(a, std::move(out), [ai = a.idx, slope](Tape& t, const Matrix& g) {
      const Matrix& x = t.nodes_[ai].value;
      Matrix scaled = g * slope;
      t.nodes_[ai].grad += (x.array() > 0.0).select(g, scaled);
    });
  }

  Var concat_cols(Var a, Var b) {
    const Matrix& A = value(a);
    const Matrix& B = value(b);
    if (A.rows() != B.rows()) throw shape_error("concat_cols", A, B);
    Matrix out(A.rows(), A.cols() + B.cols());
    out << A, B;
    long ca = A.cols();
    return binary_op(a, b, std::move(out),
                     [ai = a.idx, bi = b.idx, ca](Tape& t, const Matrix& g) {
                       if (t.wants(ai)) t.nodes_[ai].grad += g.leftCols(ca);
                       if (t.wants(bi)) t.nodes_[bi].grad += g.rightCols(g.cols() - ca);
                     });
  }

  // Row selection with repetition: out.row(k) = A.row(indices[k]).
  Var gather_rows(Var a, std::vector<int> indices) {
    const Matrix& A = value(a);
    for (int i : indices)
      if (i < 0 || i >= A.rows())
        throw std::invalid_argument("gather_rows: index " + std::to_string(i) +
                                    " out of range for " + core::shape_str(A));
    Matrix out(static_cast<long>(indices.size()), A.cols());
    for (size_t k = 0; k < indices.size(); ++k) out.row(k) = A.row(indices[k]);
    return unary_op(a, std::move(out),
                    [ai = a.idx, idx = std::move(indices)](Tape& t, const Matrix& g) {
                      for (size_t k = 0; k < idx.size(); ++k)
                        t.nodes_[ai].grad.row(idx[k]) += g.row(k);
                    });
  }

  // out.row(s) = sum of A rows whose segment id is s; result has n_segments rows.
  Var scatter_sum(Var a, std::vector<int> segment_ids, int n_segments) {
    const Matrix& A = value(a);
    check_segments(A, segment_ids, n_segments, "scatter_sum");
    Matrix out = Matrix::Zero(n_segments, A.cols());
    for (size_t i = 0; i < segment_ids.size(); ++i) out.row(segment_ids[i]) += A.row(i);
    return unary_op(a, std::move(out),
                    [ai = a.idx, ids = std::move(segment_ids)](Tape& t, const Matrix& g) {
                      for (size_t i = 0; i < ids.size(); ++i)
                        t.nodes_[ai].grad.row(i) += g.row(ids[i]);
                    });
  }

  Var segment_mean(Var a, std::vector<int> segment_ids, int n_segments) {
    const Matrix& A = value(a);
    check_segments(A, segment_ids, n_segments, "segment_mean");
    std::vector<double> count(n_segments, 0.0);
    for (int s : segment_ids) count[s] += 1.0;
    for (int s = 0; s < n_segments; ++s)
      if (count[s] == 0.0)
        throw std::invalid_argument("segment_mean: empty segment " + std::to_string(s));
    Matrix out = Matrix::Zero(n_segments, A.cols());
    for (size_t i = 0; i < segment_ids.size(); ++i) out.row(segment_ids[i]) += A.row(i);
    for (int s = 0; s < n_segments; ++s) out.row(s) /= count[s];
    return unary_op(a, std::move(out),
                    [ai = a.idx, ids = std::move(segment_ids), count](Tape& t, const Matrix& g) {
                      for (size_t i = 0; i < ids.size(); ++i)
                        t.nodes_[ai].grad.row(i) += g.row(ids[i]) / count[ids[i]];
                    });
  }

  // Softmax of an m×1 score column within each segment, max-shifted for
  // stability.  Outputs are positive and sum to 1 per segment.
  Var segment_softmax(Var scores, std::vector<int> segment_ids, int n_segments) {
    const Matrix& S = value(scores);
    if (S.cols() != 1)
      throw std::invalid_argument("segment_softmax: scores must be a column, got " +
                                  core::shape_str(S));
    check_segments(S, segment_ids, n_segments, "segment_softmax");
    const size_t m = segment_ids.size();
    std::vector<double> seg_max(n_segments, -std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < m; ++i)
      seg_max[segment_ids[i]] = std::max(seg_max[segment_ids[i]], S(i, 0));
    Matrix out(S.rows(), 1);
    std::vector<double> seg_sum(n_segments, 0.0);
    for (size_t i = 0; i < m; ++i) {
      out(i, 0) = std::exp(S(i, 0) - seg_max[segment_ids[i]]);
      seg_sum[segment_ids[i]] += out(i, 0);
    }
    for (size_t i = 0; i < m; ++i) out(i, 0) /= seg_sum[segment_ids[i]];
    int self_hint = static_cast<int>(nodes_.size());
    return unary_op(scores, std::move(out),
                    [si = scores.idx, ids = std::move(segment_ids), n_segments, self_hint](
                        Tape& t, const Matrix& g) {
                      const Matrix& alpha = t.nodes_[self_hint].value;
                      std::vector<double> dot(n_segments, 0.0);
                      for (long i = 0; i < alpha.rows(); ++i) dot[ids[i]] += alpha(i, 0) * g(i, 0);
                      for (long i = 0; i < alpha.rows(); ++i)
                        t.nodes_[si].grad(i, 0) += alpha(i, 0) * (g(i, 0) - dot[ids[i]]);
                    });
  }

  // out.row(i) = A.row(i) scaled by c(i); c is m×1.
  Var mul_col_broadcast(Var a, Var c) {
    const Matrix& A = value(a);
    const Matrix& C = value(c);
    if (C.cols() != 1 || C.rows() != A.rows()) throw shape_error("mul_col_broadcast", A, C);
    Matrix out = (A.array().colwise() * C.col(0).array()).matrix();
    return binary_op(a, c, std::move(out), [ai = a.idx, ci = c.idx](Tape& t, const Matrix& g) {
      const Matrix& A = t.nodes_[ai].value;
      const Matrix& C = t.nodes_[ci].value;
      if (t.wants(ai)) t.nodes_[ai].grad += (g.array().colwise() * C.col(0).array()).matrix();
      if (t.wants(ci)) t.nodes_[ci].grad += (g.array() * A.array()).rowwise().sum().matrix();
    });
  }

  // Rows rescaled to unit L2 norm; near-zero rows pass through unchanged.
  Var row_l2_normalize(Var a) {
    const Matrix& A = value(a);
    Eigen::VectorXd norms = A.rowwise().norm();
    Matrix out = A;
    for (long i = 0; i < A.rows(); ++i)
      if (norms(i) > 1e-12) out.row(i) /= norms(i);
    int self_hint = static_cast<int>(nodes_.size());
    return unary_op(a, std::move(out),
                    [ai = a.idx, norms, self_hint](Tape& t, const Matrix& g) {
                      const Matrix& y = t.nodes_[self_hint].value;
                      for (long i = 0; i < g.rows(); ++i) {
                        if (norms(i) <= 1e-12) {
                          t.nodes_[ai].grad.row(i) += g.row(i);
                        } else {
                          double proj = g.row(i).dot(y.row(i));
                          t.nodes_[ai].grad.row(i) += (g.row(i) - proj * y.row(i)) / norms(i);
                        }
                      }
                    });
  }

  // Mean of squared differences over all entries; target is a constant.
  Var mse(Var pred, const Matrix& target) {
    const Matrix& P = value(pred);
    if (P.rows() != target.rows() || P.cols() != target.cols())
      throw shape_error("mse", P, target);
    double n = static_cast<double>(P.size());
    Matrix diff = P - target;
    Matrix out(1, 1);
    out(0, 0) = diff.squaredNorm() / n;
    return unary_op(pred, std::move(out),
                    [pi = pred.idx, diff = std::move(diff), n](Tape& t, const Matrix& g) {
                      t.nodes_[pi].grad += g(0, 0) * 2.0 / n * diff;
                    });
  }

  void backward(Var loss) {
    Node& ln = node(loss);
    if (ln.value.rows() != 1 || ln.value.cols() != 1)
      throw std::invalid_argument("backward: loss must be 1x1, got " +
                                  core::shape_str(ln.value));
    ln.grad(0, 0) = 1.0;
    for (int i = loss.idx; i >= 0; --i)
      if (nodes_[i].back && nodes_[i].requires_grad) nodes_[i].back(*this, i);
  }

  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
    std::function<void(Tape&, int)> back;
  };

  Node& node(Var v) { return nodes_.at(v.idx); }
  const Node& node(Var v) const { return nodes_.at(v.idx); }

  bool wants(int idx) const { return nodes_[idx].requires_grad; }

  Var push(Matrix value, bool requires_grad, std::function<void(Tape&, const Matrix&)> back) {
    Node n;
    n.grad = Matrix::Zero(value.rows(), value.cols());
    n.value = std::move(value);
    n.requires_grad = requires_grad;
    if (back && requires_grad)
      n.back = [f = std::move(back)](Tape& t, int self) { f(t, t.nodes_[self].grad); };
    nodes_.push_back(std::move(n));
    return Var{static_cast<int>(nodes_.size()) - 1};
  }

  Var unary_op(Var a, Matrix out, std::function<void(Tape&, const Matrix&)> back) {
    return push(std::move(out), node(a).requires_grad, std::move(back));
  }

  Var binary_op(Var a, Var b, Matrix out, std::function<void(Tape&, const Matrix&)> back) {
    return push(std::move(out), node(a).requires_grad || node(b).requires_grad,
                std::move(back));
  }

  static std::invalid_argument shape_error(const char* op, const Matrix& a, const Matrix& b) {
    return std::invalid_argument(std::string(op) + ": incompatible shapes " +
                                 core::shape_str(a) + " and " + core::shape_str(b));
  }

  static void check_segments(const Matrix& A, const std::vector<int>& ids, int n_segments,
                             const char* op) {
    if (static_cast<long>(ids.size()) != A.rows())
      throw std::invalid_argument(std::string(op) + ": ids length " +
                                  std::to_string(ids.size()) + " vs rows " +
                                  std::to_string(A.rows()));
    if (n_segments <= 0)
      throw std::invalid_argument(std::string(op) + ": n_segments must be positive");
    for (int s : ids)
      if (s < 0 || s >= n_segments)
        throw std::invalid_argument(std::string(op) + ": segment id " + std::to_string(s) +
                                    " out of range [0, " + std::to_string(n_segments) + ")");
  }

  std::vector<Node> nodes_;
};

}  // namespace molbench::ad
