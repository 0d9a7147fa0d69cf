#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "molbench/graph/molgraph.hpp"

namespace molbench::graph {

// A disjoint union of molecular graphs packed for message passing.  Edge
// arrays are directed (each undirected bond appears twice) and sorted by
// (dst, src) so that per-target segments are contiguous.
struct BatchedGraphs {
  Matrix features;               // (total_nodes, kNodeFeatureDim)
  std::vector<int> edge_src;     // without self-loops
  std::vector<int> edge_dst;
  std::vector<int> loop_src;     // with self-loops appended
  std::vector<int> loop_dst;
  std::vector<int> graph_ids;    // node -> graph index
  std::vector<double> degree;    // undirected degree per node
  int n_graphs = 0;

  int n_nodes() const { return static_cast<int>(graph_ids.size()); }
};

inline BatchedGraphs make_batch(const std::vector<MolGraph>& graphs) {
  if (graphs.empty()) throw std::invalid_argument("make_batch: empty graph list");
  int total = 0;
  for (const MolGraph& g : graphs) total += g.n_nodes;

  BatchedGraphs b;
  b.n_graphs = static_cast<int>(graphs.size());
  b.features.resize(total, kNodeFeatureDim);
  b.graph_ids.resize(total);
  b.degree.assign(total, 0.0);

  std::vector<std::pair<int, int>> directed;
  int offset = 0;
  for (int gi = 0; gi < b.n_graphs; ++gi) {
    const MolGraph& g = graphs[gi];
    if (g.features.rows() != g.n_nodes || g.features.cols() != kNodeFeatureDim)
      throw std::invalid_argument("make_batch: graph " + std::to_string(gi) +
                                  " has feature matrix " + core::shape_str(g.features) +
                                  ", expected " + std::to_string(g.n_nodes) + "x" +
                                  std::to_string(kNodeFeatureDim));
    b.features.middleRows(offset, g.n_nodes) = g.features;
    for (int i = 0; i < g.n_nodes; ++i) b.graph_ids[offset + i] = gi;
    for (auto [u, v] : g.edges) {
      directed.emplace_back(offset + u, offset + v);
      directed.emplace_back(offset + v, offset + u);
      b.degree[offset + u] += 1.0;
      b.degree[offset + v] += 1.0;
    }
    offset += g.n_nodes;
  }

  auto by_dst_src = [](const std::pair<int, int>& x, const std::pair<int, int>& y) {
    return x.second != y.second ? x.second < y.second : x.first < y.first;
  };
  std::sort(directed.begin(), directed.end(), by_dst_src);
  b.edge_src.reserve(directed.size());
  b.edge_dst.reserve(directed.size());
  for (auto [s, d] : directed) {
    b.edge_src.push_back(s);
    b.edge_dst.push_back(d);
  }

  for (int i = 0; i < total; ++i) directed.emplace_back(i, i);
  std::sort(directed.begin(), directed.end(), by_dst_src);
  b.loop_src.reserve(directed.size());
  b.loop_dst.reserve(directed.size());
  for (auto [s, d] : directed) {
    b.loop_src.push_back(s);
    b.loop_dst.push_back(d);
  }
  return b;
}

}  // namespace molbench::graph
