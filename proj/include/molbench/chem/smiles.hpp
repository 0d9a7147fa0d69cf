#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "molbench/chem/element.hpp"
#include "molbench/chem/molecule.hpp"

namespace molbench::chem {

class SmilesError : public std::runtime_error {
 public:
  SmilesError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

namespace detail {

// Recompute implicit hydrogen counts in place. Bracket atoms keep their
// explicit count and get implicit_h = 0; plain organic-subset atoms get
// default_valence - bond_order_sum, fractional sums (aromatic bonds count
// 1.5) rounded down, clamped at 0.
inline void assign_implicit_h_inplace(Molecule& mol) {
  for (int i = 0; i < mol.natoms(); ++i) {
    Atom& atom = mol.atoms[static_cast<std::size_t>(i)];
    if (atom.explicit_h.has_value()) {
      atom.implicit_h = 0;
      continue;
    }
    if (!is_organic_subset(atom.atomic_number)) {
      atom.implicit_h = 0;
      continue;
    }
    const double sum = mol.bond_order_sum(i);
    const double dv = default_valence(atom.atomic_number, sum);
    const int h = static_cast<int>(std::floor(dv - sum));
    atom.implicit_h = h > 0 ? h : 0;
  }
}

inline int count_fragments(const Molecule& mol) {
  const int n = mol.natoms();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Bond& b : mol.bonds) {
    parent[static_cast<std::size_t>(find(b.a))] = find(b.b);
  }
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    if (find(i) == i) ++roots;
  }
  return roots;
}

class SmilesParser {
 public:
  explicit SmilesParser(std::string_view text) : text_(text) {}

  Molecule parse() {
    if (text_.empty()) throw SmilesError("empty SMILES", 0);
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') {
        if (prev_ < 0) throw SmilesError("branch with no preceding atom", pos_);
        if (pending_.has_value()) throw SmilesError("bond symbol before '('", pos_);
        branch_stack_.push_back({prev_, pos_});
        ++pos_;
      } else if (c == ')') {
        if (branch_stack_.empty()) throw SmilesError("unmatched ')'", pos_);
        if (pending_.has_value()) throw SmilesError("dangling bond before ')'", pos_);
        prev_ = branch_stack_.back().prev_atom;
        branch_stack_.pop_back();
        ++pos_;
      } else if (c == '.') {
        if (pending_.has_value()) throw SmilesError("bond symbol before '.'", pos_);
        prev_ = -1;
        ++pos_;
      } else if (is_bond_char(c)) {
        if (pending_.has_value()) throw SmilesError("two bond symbols in a row", pos_);
        if (prev_ < 0) throw SmilesError("bond with no preceding atom", pos_);
        pending_ = bond_from_char(c);
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        ring_closure();
      } else if (c == '[') {
        bracket_atom();
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        organic_atom();
      } else if (c == '*') {
        throw SmilesError("wildcard atom not supported", pos_);
      } else if (c == '>') {
        throw SmilesError("reaction SMILES not supported", pos_);
      } else {
        throw SmilesError(std::string("unexpected character '") + c + "'", pos_);
      }
    }
    if (!branch_stack_.empty())
      throw SmilesError("unclosed '('", branch_stack_.back().open_pos);
    if (pending_.has_value()) throw SmilesError("dangling bond at end of input", text_.size());
    if (!open_rings_.empty()) {
      const auto& [num, open] = *open_rings_.begin();
      throw SmilesError("unmatched ring closure " + std::to_string(num), open.open_pos);
    }
    if (mol_.atoms.empty()) throw SmilesError("no atoms in SMILES", 0);

    assign_implicit_h_inplace(mol_);
    check_valences();
    mol_.fragment_count = count_fragments(mol_);
    return std::move(mol_);
  }

 private:
  struct BranchFrame {
    int prev_atom;
    std::size_t open_pos;
  };
  struct RingOpen {
    int atom;
    std::optional<BondOrder> order;
    std::size_t open_pos;
  };

  static bool is_bond_char(char c) {
    return c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\';
  }

  static BondOrder bond_from_char(char c) {
    switch (c) {
      case '=':
        return BondOrder::Double;
      case '#':
        return BondOrder::Triple;
      case ':':
        return BondOrder::Aromatic;
      default:
        return BondOrder::Single;  // '-', and '/' '\' with stereo discarded
    }
  }

  void add_bond(int u, int v, std::optional<BondOrder> order, std::size_t at) {
    if (u == v) throw SmilesError("bond to self", at);
    if (mol_.has_bond(u, v)) throw SmilesError("duplicate bond", at);
    const Atom& au = mol_.atoms[static_cast<std::size_t>(u)];
    const Atom& av = mol_.atoms[static_cast<std::size_t>(v)];
    BondOrder o;
    if (order.has_value()) {
      o = *order;
      if (o == BondOrder::Aromatic && !(au.aromatic && av.aromatic))
        throw SmilesError("aromatic bond between non-aromatic atoms", at);
    } else {
      o = (au.aromatic && av.aromatic) ? BondOrder::Aromatic : BondOrder::Single;
    }
    mol_.bonds.emplace_back(u, v, o);
  }

  int push_atom(Atom atom, std::size_t at, bool bracket) {
    const int idx = mol_.natoms();
    mol_.atoms.push_back(atom);
    atom_pos_.push_back(at);
    atom_bracket_.push_back(bracket);
    if (prev_ >= 0) {
      add_bond(prev_, idx, pending_, at);
    } else if (pending_.has_value()) {
      throw SmilesError("bond with no preceding atom", at);
    }
    pending_.reset();
    prev_ = idx;
    return idx;
  }

  void organic_atom() {
    const std::size_t at = pos_;
    Atom atom;
    // Two-letter symbols first.
    if (text_.compare(pos_, 2, "Cl") == 0) {
      atom.atomic_number = 17;
      pos_ += 2;
    } else if (text_.compare(pos_, 2, "Br") == 0) {
      atom.atomic_number = 35;
      pos_ += 2;
    } else {
      const char c = text_[pos_];
      static constexpr std::string_view upper = "BCNOPSFI";
      static constexpr std::string_view lower = "bcnops";
      if (upper.find(c) != std::string_view::npos) {
        atom.atomic_number = atomic_number_of(std::string_view(&text_[pos_], 1));
      } else if (lower.find(c) != std::string_view::npos) {
        const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        atom.atomic_number = atomic_number_of(std::string_view(&up, 1));
        atom.aromatic = true;
      } else {
        throw SmilesError(std::string("unknown element symbol '") + c + "'", pos_);
      }
      ++pos_;
    }
    push_atom(atom, at, /*bracket=*/false);
  }

  void bracket_atom() {
    const std::size_t at = pos_;
    ++pos_;  // '['
    Atom atom;

    // Optional isotope.
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int iso = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        iso = iso * 10 + (text_[pos_] - '0');
        ++pos_;
      }
      atom.isotope = iso;
    }

    if (pos_ >= text_.size()) throw SmilesError("unterminated bracket atom", at);
    if (text_[pos_] == '*') throw SmilesError("wildcard atom not supported", pos_);

    // Element symbol, longest match; lowercase means aromatic.
    const char first = text_[pos_];
    if (!std::isalpha(static_cast<unsigned char>(first)))
      throw SmilesError("expected element symbol in brackets", pos_);
    const bool lower = std::islower(static_cast<unsigned char>(first));
    std::string sym(1, static_cast<char>(std::toupper(static_cast<unsigned char>(first))));
    if (pos_ + 1 < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
      // Candidate two-letter symbol; only take it if it names an element and
      // is not the start of an H-count ('H' cannot begin a two-letter match
      // here because no element symbol has a lowercase 'h' second letter).
      const std::string two = sym + text_[pos_ + 1];
      if (atomic_number_of(two) > 0) {
        sym = two;
      }
    }
    atom.atomic_number = atomic_number_of(sym);
    if (atom.atomic_number == 0)
      throw SmilesError("unknown element symbol '" + sym + "'", pos_);
    if (lower) {
      if (!may_be_aromatic(atom.atomic_number))
        throw SmilesError("element '" + sym + "' cannot be aromatic", pos_);
      atom.aromatic = true;
    }
    pos_ += sym.size();

    // Chirality markers are consumed and discarded.
    while (pos_ < text_.size() && text_[pos_] == '@') ++pos_;

    // Hydrogen count.
    int hcount = 0;
    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      hcount = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        hcount = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          hcount = hcount * 10 + (text_[pos_] - '0');
          ++pos_;
        }
      }
    }
    atom.explicit_h = hcount;

    // Charge.
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const int sign = text_[pos_] == '+' ? 1 : -1;
      const char mark = text_[pos_];
      ++pos_;
      int magnitude = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        magnitude = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          magnitude = magnitude * 10 + (text_[pos_] - '0');
          ++pos_;
        }
      } else {
        while (pos_ < text_.size() && text_[pos_] == mark) {
          ++magnitude;
          ++pos_;
        }
      }
      atom.formal_charge = sign * magnitude;
    }

    // Atom class, parsed and discarded.
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw SmilesError("expected atom class number after ':'", pos_);
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    if (pos_ >= text_.size() || text_[pos_] != ']')
      throw SmilesError("expected ']'", pos_ < text_.size() ? pos_ : text_.size());
    ++pos_;

    push_atom(atom, at, /*bracket=*/true);
  }

  void ring_closure() {
    const std::size_t at = pos_;
    if (prev_ < 0) throw SmilesError("ring closure with no preceding atom", pos_);
    int num;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
        throw SmilesError("'%' requires two digits", pos_);
      num = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      num = text_[pos_] - '0';
      ++pos_;
    }
    auto it = open_rings_.find(num);
    if (it == open_rings_.end()) {
      open_rings_[num] = RingOpen{prev_, pending_, at};
      pending_.reset();
      return;
    }
    const RingOpen open = it->second;
    open_rings_.erase(it);
    if (open.atom == prev_) throw SmilesError("ring closure to self", at);
    std::optional<BondOrder> order;
    if (open.order.has_value() && pending_.has_value()) {
      if (*open.order != *pending_)
        throw SmilesError("conflicting ring closure bond orders", at);
      order = pending_;
    } else if (open.order.has_value()) {
      order = open.order;
    } else if (pending_.has_value()) {
      order = pending_;
    }
    add_bond(open.atom, prev_, order, at);
    pending_.reset();
  }

  // A plain atom whose bond order total exceeds its largest default valence
  // cannot be assigned a consistent hydrogen count. Aromatic atoms get one
  // extra unit of slack: counting every ring bond at 1.5 overstates the
  // valence of fused and substituted aromatic atoms.
  void check_valences() const {
    for (int i = 0; i < mol_.natoms(); ++i) {
      if (atom_bracket_[static_cast<std::size_t>(i)]) continue;
      const Atom& atom = mol_.atoms[static_cast<std::size_t>(i)];
      const int used = static_cast<int>(std::floor(mol_.bond_order_sum(i)));
      const int cap = max_default_valence(atom.atomic_number) + (atom.aromatic ? 1 : 0);
      if (used > cap)
        throw SmilesError("valence overflow at atom " + std::to_string(i),
                          atom_pos_[static_cast<std::size_t>(i)]);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Molecule mol_;
  std::vector<std::size_t> atom_pos_;
  std::vector<bool> atom_bracket_;
  std::vector<BranchFrame> branch_stack_;
  std::map<int, RingOpen> open_rings_;
  int prev_ = -1;
  std::optional<BondOrder> pending_;
};

}  // namespace detail

// Parse a SMILES string into a molecule with implicit hydrogens assigned.
// Stereo markers are consumed and discarded. Throws SmilesError with the
// offending position on malformed input or valence overflow.
inline Molecule parse_smiles(std::string_view text) {
  return detail::SmilesParser(text).parse();
}

inline Molecule assign_implicit_hydrogens(Molecule mol) {
  detail::assign_implicit_h_inplace(mol);
  return mol;
}

}  // namespace molbench::chem
