#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace molbench::chem {

struct Atom {
  int atomic_number = 0;
  int formal_charge = 0;
  bool aromatic = false;
  std::optional<int> isotope;
  // Set for bracket atoms (possibly 0); plain atoms get implicit_h instead.
  std::optional<int> explicit_h;
  int implicit_h = 0;

  int total_h() const { return implicit_h + explicit_h.value_or(0); }
  bool is_heavy() const { return atomic_number > 1; }
};

enum class BondOrder { Single, Double, Triple, Aromatic };

inline double bond_order_value(BondOrder o) {
  switch (o) {
    case BondOrder::Single:
      return 1.0;
    case BondOrder::Double:
      return 2.0;
    case BondOrder::Triple:
      return 3.0;
    case BondOrder::Aromatic:
      return 1.5;
  }
  return 0.0;
}

// Integer code used when hashing bonds into fingerprints.
inline int bond_order_code(BondOrder o) {
  switch (o) {
    case BondOrder::Single:
      return 1;
    case BondOrder::Double:
      return 2;
    case BondOrder::Triple:
      return 3;
    case BondOrder::Aromatic:
      return 4;
  }
  return 0;
}

struct Bond {
  int a = 0;  // always a < b
  int b = 0;
  BondOrder order = BondOrder::Single;

  Bond() = default;
  Bond(int u, int v, BondOrder o) : a(std::min(u, v)), b(std::max(u, v)), order(o) {}
};

struct Molecule {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  int fragment_count = 1;

  int natoms() const { return static_cast<int>(atoms.size()); }
  int nbonds() const { return static_cast<int>(bonds.size()); }

  bool has_bond(int u, int v) const {
    const Bond probe(u, v, BondOrder::Single);
    return std::any_of(bonds.begin(), bonds.end(), [&](const Bond& bd) {
      return bd.a == probe.a && bd.b == probe.b;
    });
  }

  // Neighbor atom indices paired with the connecting bond index.
  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(atoms.size());
    for (int i = 0; i < nbonds(); ++i) {
      adj[static_cast<std::size_t>(bonds[i].a)].emplace_back(bonds[i].b, i);
      adj[static_cast<std::size_t>(bonds[i].b)].emplace_back(bonds[i].a, i);
    }
    return adj;
  }

  double bond_order_sum(int atom) const {
    double s = 0.0;
    for (const Bond& bd : bonds) {
      if (bd.a == atom || bd.b == atom) s += bond_order_value(bd.order);
    }
    return s;
  }

  int heavy_degree(int atom) const {
    int d = 0;
    for (const Bond& bd : bonds) {
      const int other = bd.a == atom ? bd.b : (bd.b == atom ? bd.a : -1);
      if (other >= 0 && atoms[static_cast<std::size_t>(other)].is_heavy()) ++d;
    }
    return d;
  }

  void check_valid() const {
    for (const Bond& bd : bonds) {
      if (bd.a < 0 || bd.b >= natoms() || bd.a == bd.b)
        throw std::logic_error("molecule: bond references invalid atom");
      if (bd.order == BondOrder::Aromatic &&
          !(atoms[static_cast<std::size_t>(bd.a)].aromatic &&
            atoms[static_cast<std::size_t>(bd.b)].aromatic))
        throw std::logic_error("molecule: aromatic bond between non-aromatic atoms");
    }
  }
};

}  // namespace molbench::chem
