#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "molbench/chem/molecule.hpp"
#include "molbench/fp/fingerprint.hpp"

namespace molbench::fp {

namespace detail {

// Platform-independent 32-bit tuple hash: FNV-1a over the little-endian
// serialized fields, then a murmur-style avalanche finalizer.
inline uint32_t fmix32(uint32_t h) {
  h ^= h >> 16;
  h *= 0x85ebca6bu;
  h ^= h >> 13;
  h *= 0xc2b2ae35u;
  h ^= h >> 16;
  return h;
}

inline uint32_t hash_tuple(const std::vector<uint32_t>& fields) {
  uint32_t h = 2166136261u;
  for (uint32_t f : fields) {
    for (int k = 0; k < 4; ++k) {
      h ^= (f >> (8 * k)) & 0xffu;
      h *= 16777619u;
    }
  }
  return fmix32(h);
}

// Ring-bond detection: a bond is in a ring iff it is not a bridge.
// Iterative Tarjan lowlink over the bond graph.
inline std::vector<bool> ring_bonds(const chem::Molecule& mol) {
  const int n = mol.natoms();
  auto adj = mol.adjacency();
  std::vector<bool> in_ring(mol.nbonds(), false);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;

  struct Frame {
    int node;
    int parent_bond;
    size_t next_edge;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next_edge < adj[f.node].size()) {
        auto [nbr, bidx] = adj[f.node][f.next_edge++];
        if (bidx == f.parent_bond) continue;
        if (disc[nbr] == -1) {
          disc[nbr] = low[nbr] = timer++;
          stack.push_back({nbr, bidx, 0});
        } else {
          in_ring[bidx] = true;  // a back edge always closes a cycle
          low[f.node] = std::min(low[f.node], disc[nbr]);
        }
      } else {
        int child = f.node;
        int bond = f.parent_bond;
        stack.pop_back();
        if (!stack.empty()) {
          int parent = stack.back().node;
          low[parent] = std::min(low[parent], low[child]);
          if (low[child] <= disc[parent]) in_ring[bond] = true;
        }
      }
    }
  }
  return in_ring;
}

inline std::vector<bool> ring_atoms(const chem::Molecule& mol) {
  auto rb = ring_bonds(mol);
  std::vector<bool> out(mol.natoms(), false);
  for (int i = 0; i < mol.nbonds(); ++i) {
    if (rb[i]) {
      out[mol.bonds[i].a] = true;
      out[mol.bonds[i].b] = true;
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<uint32_t> initial_invariants(const chem::Molecule& mol) {
  auto in_ring = detail::ring_atoms(mol);
  std::vector<uint32_t> ids;
  ids.reserve(mol.natoms());
  for (int i = 0; i < mol.natoms(); ++i) {
    const chem::Atom& a = mol.atoms[i];
    ids.push_back(detail::hash_tuple({
        static_cast<uint32_t>(a.atomic_number),
        static_cast<uint32_t>(mol.heavy_degree(i)),
        static_cast<uint32_t>(a.total_h()),
        static_cast<uint32_t>(static_cast<int32_t>(a.formal_charge)),
        static_cast<uint32_t>(in_ring[i] ? 1 : 0),
        static_cast<uint32_t>(a.aromatic ? 1 : 0),
    }));
  }
  return ids;
}

// Iterative ECFP identifier generation.  Each round widens every atom's
// environment by one bond; an environment covering an atom set already
// emitted (this round or earlier) is dropped — within a round the smaller
// identifier wins.
inline std::vector<uint32_t> morgan_identifiers(const chem::Molecule& mol, int radius) {
  if (radius < 0) throw std::invalid_argument("morgan_identifiers: radius must be >= 0");
  const int n = mol.natoms();
  auto adj = mol.adjacency();

  std::vector<uint32_t> current = initial_invariants(mol);
  std::vector<std::vector<int>> env(n);
  for (int i = 0; i < n; ++i) env[i] = {i};

  std::vector<uint32_t> out = current;
  std::set<std::vector<int>> seen;
  for (int i = 0; i < n; ++i) seen.insert(env[i]);

  for (int r = 1; r <= radius; ++r) {
    std::vector<uint32_t> next(n);
    std::vector<std::vector<int>> next_env(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<uint32_t, uint32_t>> nbrs;
      std::set<int> cover(env[i].begin(), env[i].end());
      for (auto [j, bidx] : adj[i]) {
        nbrs.emplace_back(
            static_cast<uint32_t>(chem::bond_order_code(mol.bonds[bidx].order)),
            current[j]);
        cover.insert(env[j].begin(), env[j].end());
      }
      std::sort(nbrs.begin(), nbrs.end());
      std::vector<uint32_t> fields{static_cast<uint32_t>(r), current[i]};
      for (auto [code, id] : nbrs) {
        fields.push_back(code);
        fields.push_back(id);
      }
      next[i] = detail::hash_tuple(fields);
      next_env[i].assign(cover.begin(), cover.end());
    }

    std::map<std::vector<int>, uint32_t> round_best;
    for (int i = 0; i < n; ++i) {
      if (seen.count(next_env[i])) continue;
      auto [it, inserted] = round_best.emplace(next_env[i], next[i]);
      if (!inserted) it->second = std::min(it->second, next[i]);
    }
    for (const auto& [atoms, id] : round_best) {
      out.push_back(id);
      seen.insert(atoms);
    }

    current = std::move(next);
    env = std::move(next_env);
  }
  return out;
}

inline Fingerprint ecfp4(const chem::Molecule& mol, int n_bits = 1024) {
  return fold(morgan_identifiers(mol, 2), n_bits);
}

}  // namespace molbench::fp
