#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "molbench/chem/molecule.hpp"
#include "molbench/chem/smiles.hpp"

namespace molbench::chem {

// Keep the connected component with the most heavy atoms. Ties go to the
// component with more bonds, then to the one containing the lowest original
// atom index. Atom order within the kept component is preserved.
inline Molecule strip_salts(const Molecule& mol) {
  if (mol.fragment_count <= 1) return mol;

  const int n = mol.natoms();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  const auto adj = mol.adjacency();
  int n_comp = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[static_cast<std::size_t>(start)] >= 0) continue;
    std::vector<int> stack{start};
    comp[static_cast<std::size_t>(start)] = n_comp;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& [v, bond] : adj[static_cast<std::size_t>(u)]) {
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = n_comp;
          stack.push_back(v);
        }
      }
    }
    ++n_comp;
  }

  std::vector<int> heavy(static_cast<std::size_t>(n_comp), 0);
  std::vector<int> nbonds(static_cast<std::size_t>(n_comp), 0);
  std::vector<int> first_atom(static_cast<std::size_t>(n_comp), n);
  for (int i = 0; i < n; ++i) {
    const int c = comp[static_cast<std::size_t>(i)];
    if (mol.atoms[static_cast<std::size_t>(i)].is_heavy()) ++heavy[static_cast<std::size_t>(c)];
    first_atom[static_cast<std::size_t>(c)] = std::min(first_atom[static_cast<std::size_t>(c)], i);
  }
  for (const Bond& b : mol.bonds) ++nbonds[static_cast<std::size_t>(comp[static_cast<std::size_t>(b.a)])];

  int best = 0;
  for (int c = 1; c < n_comp; ++c) {
    const auto key = [&](int k) {
      return std::make_tuple(heavy[static_cast<std::size_t>(k)], nbonds[static_cast<std::size_t>(k)],
                             -first_atom[static_cast<std::size_t>(k)]);
    };
    if (key(c) > key(best)) best = c;
  }

  Molecule out;
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (comp[static_cast<std::size_t>(i)] != best) continue;
    remap[static_cast<std::size_t>(i)] = out.natoms();
    out.atoms.push_back(mol.atoms[static_cast<std::size_t>(i)]);
  }
  for (const Bond& b : mol.bonds) {
    if (comp[static_cast<std::size_t>(b.a)] != best) continue;
    out.bonds.emplace_back(remap[static_cast<std::size_t>(b.a)], remap[static_cast<std::size_t>(b.b)],
                           b.order);
  }
  out.fragment_count = 1;
  return out;
}

// Neutralization rule table:
//   O-/S- with no positively charged neighbor -> gain a hydrogen, charge 0.
//   N+/P+ carrying at least one hydrogen and only single bonds -> lose a
//   hydrogen, charge 0.
// Quaternary N+ and charge-separated ylide patterns are left untouched.
// Hydrogen adjustment is realized by dropping the bracket hydrogen count and
// recomputing the implicit count from the default valence.
inline Molecule neutralize(const Molecule& mol) {
  Molecule out = mol;
  const auto adj = out.adjacency();
  for (int i = 0; i < out.natoms(); ++i) {
    Atom& atom = out.atoms[static_cast<std::size_t>(i)];
    const int z = atom.atomic_number;
    if ((z == 8 || z == 16) && atom.formal_charge == -1) {
      bool pos_neighbor = false;
      for (const auto& [v, bond] : adj[static_cast<std::size_t>(i)]) {
        if (out.atoms[static_cast<std::size_t>(v)].formal_charge > 0) pos_neighbor = true;
      }
      if (pos_neighbor) continue;
      atom.formal_charge = 0;
      atom.explicit_h.reset();
    } else if ((z == 7 || z == 15) && atom.formal_charge == 1) {
      if (atom.total_h() < 1) continue;
      bool only_single = true;
      for (const auto& [v, bond] : adj[static_cast<std::size_t>(i)])
        if (out.bonds[static_cast<std::size_t>(bond)].order != BondOrder::Single)
          only_single = false;
      if (!only_single) continue;
      atom.formal_charge = 0;
      atom.explicit_h.reset();
    }
  }
  detail::assign_implicit_h_inplace(out);
  return out;
}

// The preprocessing applied to every dataset molecule before featurization.
inline Molecule standardize(const Molecule& mol) { return neutralize(strip_salts(mol)); }

inline int net_charge(const Molecule& mol) {
  int q = 0;
  for (const Atom& a : mol.atoms) q += a.formal_charge;
  return q;
}

}  // namespace molbench::chem
