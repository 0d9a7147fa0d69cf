#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "molbench/chem/molecule.hpp"
#include "molbench/core/matrix.hpp"

namespace molbench::graph {

using core::Matrix;

inline constexpr int kNodeFeatureDim = 6;

// Molecular graph with one feature row per atom and each undirected edge
// stored once (lower index first). The adjacency matrix is never
// materialized; the edge list carries the same information.
struct MolGraph {
  int n_nodes = 0;
  Matrix features;  // n_nodes x 6
  std::vector<std::pair<int, int>> edges;
};

enum class Hybridization { Other = 0, Sp = 1, Sp2 = 2, Sp3 = 3 };

// sp: a triple bond or two or more double bonds. sp2: aromatic or exactly
// one double bond. sp3: all single bonds on a main-group organic element.
// Everything else (halogens, metals) maps to Other.
inline Hybridization perceive_hybridization(const chem::Molecule& mol, int atom_index) {
  if (atom_index < 0 || atom_index >= mol.natoms())
    throw std::out_of_range("perceive_hybridization: bad atom index");
  int doubles = 0, triples = 0, total = 0;
  for (const chem::Bond& b : mol.bonds) {
    if (b.a != atom_index && b.b != atom_index) continue;
    ++total;
    if (b.order == chem::BondOrder::Double) ++doubles;
    if (b.order == chem::BondOrder::Triple) ++triples;
  }
  if (triples >= 1 || doubles >= 2) return Hybridization::Sp;
  const chem::Atom& a = mol.atoms[static_cast<std::size_t>(atom_index)];
  if (a.aromatic || doubles == 1) return Hybridization::Sp2;
  switch (a.atomic_number) {
    case 5:
    case 6:
    case 7:
    case 8:
    case 15:
    case 16:
      return Hybridization::Sp3;
    default:
      return Hybridization::Other;
  }
}

// Node features, one row per atom:
//   [atomic number, heavy-atom degree, implicit valence (total H count),
//    formal charge, hybridization code, aromatic flag]
inline MolGraph featurize(const chem::Molecule& mol) {
  if (mol.natoms() == 0) throw std::invalid_argument("featurize: empty molecule");
  MolGraph g;
  g.n_nodes = mol.natoms();
  g.features.resize(g.n_nodes, kNodeFeatureDim);
  for (int i = 0; i < g.n_nodes; ++i) {
    const chem::Atom& a = mol.atoms[static_cast<std::size_t>(i)];
    g.features(i, 0) = a.atomic_number;
    g.features(i, 1) = mol.heavy_degree(i);
    g.features(i, 2) = a.total_h();
    g.features(i, 3) = a.formal_charge;
    g.features(i, 4) = static_cast<double>(perceive_hybridization(mol, i));
    g.features(i, 5) = a.aromatic ? 1.0 : 0.0;
  }
  g.edges.reserve(mol.bonds.size());
  for (const chem::Bond& b : mol.bonds) g.edges.emplace_back(b.a, b.b);
  return g;
}

}  // namespace molbench::graph
