#pragma once

#include <array>
#include <string_view>

namespace molbench::chem {

// Symbols indexed by atomic number, 1..118.
inline constexpr std::array<std::string_view, 119> kElementSymbols = {
    "",   "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
    "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
    "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

// 0 if the symbol is not an element.
inline int atomic_number_of(std::string_view symbol) {
  for (int z = 1; z <= 118; ++z) {
    if (kElementSymbols[static_cast<std::size_t>(z)] == symbol) return z;
  }
  return 0;
}

inline bool is_organic_subset(int z) {
  switch (z) {
    case 5:   // B
    case 6:   // C
    case 7:   // N
    case 8:   // O
    case 9:   // F
    case 15:  // P
    case 16:  // S
    case 17:  // Cl
    case 35:  // Br
    case 53:  // I
      return true;
    default:
      return false;
  }
}

// Elements that may appear lowercase (aromatic) in SMILES.
inline bool may_be_aromatic(int z) {
  switch (z) {
    case 5:
    case 6:
    case 7:
    case 8:
    case 15:
    case 16:
    case 33:  // as (brackets only)
    case 34:  // se (brackets only)
      return true;
    default:
      return false;
  }
}

// Smallest default valence of `z` that is >= bond_sum; 0 when the element
// has no default valence model (then no implicit hydrogens are assigned).
inline double default_valence(int z, double bond_sum) {
  auto pick = [bond_sum](std::initializer_list<int> vs) -> double {
    for (int v : vs) {
      if (static_cast<double>(v) >= bond_sum) return v;
    }
    return *(vs.end() - 1);
  };
  switch (z) {
    case 5:
      return 3;
    case 6:
      return 4;
    case 7:
      return 3;
    case 8:
      return 2;
    case 15:
      return pick({3, 5});
    case 16:
      return pick({2, 4, 6});
    case 9:
    case 17:
    case 35:
    case 53:
      return 1;
    default:
      return 0;
  }
}

// Largest allowed valence for the plain (non-bracket) organic subset;
// exceeding it is a parse-time valence overflow.
inline int max_default_valence(int z) {
  switch (z) {
    case 5:
      return 3;
    case 6:
      return 4;
    case 7:
      return 3;
    case 8:
      return 2;
    case 15:
      return 5;
    case 16:
      return 6;
    case 9:
    case 17:
    case 35:
    case 53:
      return 1;
    default:
      return 0;
  }
}

}  // namespace molbench::chem
