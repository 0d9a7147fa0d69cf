#include <catch2/catch_amalgamated.hpp>

#include "molbench/chem/element.hpp"
#include "molbench/chem/smiles.hpp"
#include "molbench/chem/standardize.hpp"

using namespace molbench::chem;

TEST_CASE("element lookup") {
  CHECK(atomic_number_of("C") == 6);
  CHECK(atomic_number_of("Cl") == 17);
  CHECK(atomic_number_of("Br") == 35);
  CHECK(atomic_number_of("Na") == 11);
  CHECK(atomic_number_of("Xx") == 0);
  CHECK(atomic_number_of("c") == 0);  // lookup is by canonical symbol
  CHECK(kElementSymbols[8] == "O");
  CHECK(is_organic_subset(6));
  CHECK(!is_organic_subset(11));
  CHECK(max_default_valence(7) == 3);
  CHECK(default_valence(16, 3.0) == 4);  // sulfur steps 2 -> 4 -> 6
  CHECK(default_valence(16, 5.0) == 6);
  CHECK(default_valence(15, 4.0) == 5);
}

TEST_CASE("linear chain with implicit hydrogens") {
  Molecule m = parse_smiles("CCO");
  REQUIRE(m.natoms() == 3);
  REQUIRE(m.nbonds() == 2);
  CHECK(m.atoms[0].atomic_number == 6);
  CHECK(m.atoms[2].atomic_number == 8);
  CHECK(m.atoms[0].total_h() == 3);
  CHECK(m.atoms[1].total_h() == 2);
  CHECK(m.atoms[2].total_h() == 1);
  CHECK(m.has_bond(0, 1));
  CHECK(m.has_bond(1, 2));
  CHECK(!m.has_bond(0, 2));
}

TEST_CASE("branches and bond orders") {
  Molecule m = parse_smiles("CC(=O)O");  // acetic acid
  REQUIRE(m.natoms() == 4);
  REQUIRE(m.nbonds() == 3);
  int doubles = 0;
  for (const Bond& b : m.bonds)
    if (b.order == BondOrder::Double) ++doubles;
  CHECK(doubles == 1);
  CHECK(m.atoms[1].total_h() == 0);  // carbonyl carbon is saturated
  CHECK(m.atoms[3].total_h() == 1);  // hydroxyl oxygen

  Molecule nitrile = parse_smiles("CC#N");
  CHECK(nitrile.bonds[1].order == BondOrder::Triple);
  CHECK(nitrile.atoms[2].total_h() == 0);

  Molecule iso = parse_smiles("CC(C)O");
  CHECK(iso.heavy_degree(1) == 3);
  CHECK(iso.atoms[1].total_h() == 1);
}

TEST_CASE("rings") {
  Molecule hexane = parse_smiles("C1CCCCC1");
  REQUIRE(hexane.natoms() == 6);
  REQUIRE(hexane.nbonds() == 6);
  for (int i = 0; i < 6; ++i) CHECK(hexane.atoms[i].total_h() == 2);

  // %nn ring-closure spelling
  Molecule pent = parse_smiles("C%12CCCC%12");
  CHECK(pent.natoms() == 5);
  CHECK(pent.nbonds() == 5);

  // ring-closure digit reuse after closing
  Molecule bicyclic = parse_smiles("C1CC1C1CC1");
  CHECK(bicyclic.nbonds() == 7);

  // ring bond with an explicit order at the opening digit
  Molecule cyclohexene = parse_smiles("C=1CCCCC1");
  int doubles = 0;
  for (const Bond& b : cyclohexene.bonds)
    if (b.order == BondOrder::Double) ++doubles;
  CHECK(doubles == 1);
}

TEST_CASE("aromatic rings") {
  Molecule benz = parse_smiles("c1ccccc1");
  REQUIRE(benz.natoms() == 6);
  REQUIRE(benz.nbonds() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(benz.atoms[i].aromatic);
    CHECK(benz.atoms[i].total_h() == 1);
  }
  for (const Bond& b : benz.bonds) CHECK(b.order == BondOrder::Aromatic);

  Molecule pyridine = parse_smiles("c1ccncc1");
  int n_idx = -1;
  for (int i = 0; i < pyridine.natoms(); ++i)
    if (pyridine.atoms[i].atomic_number == 7) n_idx = i;
  REQUIRE(n_idx >= 0);
  CHECK(pyridine.atoms[n_idx].total_h() == 0);

  Molecule pyrrole = parse_smiles("c1cc[nH]c1");
  int nh = -1;
  for (int i = 0; i < pyrrole.natoms(); ++i)
    if (pyrrole.atoms[i].atomic_number == 7) nh = i;
  REQUIRE(nh >= 0);
  CHECK(pyrrole.atoms[nh].total_h() == 1);
  CHECK(pyrrole.atoms[nh].aromatic);

  // aromatic oxygen carries no hydrogen
  Molecule furan = parse_smiles("c1ccoc1");
  for (const Atom& a : furan.atoms)
    if (a.atomic_number == 8) CHECK(a.total_h() == 0);

  // single bond between two aromatic systems stays single
  Molecule biphenyl = parse_smiles("c1ccc(-c2ccccc2)cc1");
  int singles = 0;
  for (const Bond& b : biphenyl.bonds)
    if (b.order == BondOrder::Single) ++singles;
  CHECK(singles == 1);
}

TEST_CASE("bracket atoms") {
  Molecule ammonium = parse_smiles("[NH4+]");
  REQUIRE(ammonium.natoms() == 1);
  CHECK(ammonium.atoms[0].formal_charge == 1);
  CHECK(ammonium.atoms[0].total_h() == 4);
  CHECK(ammonium.atoms[0].explicit_h == 4);
  CHECK(ammonium.atoms[0].implicit_h == 0);

  Molecule acetate = parse_smiles("CC(=O)[O-]");
  CHECK(acetate.atoms[3].formal_charge == -1);
  CHECK(acetate.atoms[3].total_h() == 0);

  Molecule labeled = parse_smiles("[13CH4]");
  CHECK(labeled.atoms[0].isotope == 13);
  CHECK(labeled.atoms[0].total_h() == 4);

  Molecule dication = parse_smiles("[Ca+2]");
  CHECK(dication.atoms[0].formal_charge == 2);
  CHECK(parse_smiles("[Fe++]").atoms[0].formal_charge == 2);

  // deuterium appears as an explicit graph atom
  Molecule d = parse_smiles("[2H]OC");
  CHECK(d.atoms[0].atomic_number == 1);
  CHECK(!d.atoms[0].is_heavy());
  CHECK(d.heavy_degree(1) == 1);  // O sees only the carbon
}

TEST_CASE("stereo markers are accepted and discarded") {
  CHECK(parse_smiles("C/C=C/C").natoms() == 4);
  CHECK(parse_smiles("C/C=C\\C").natoms() == 4);
  Molecule ala = parse_smiles("C[C@@H](N)C(=O)O");
  Molecule flat = parse_smiles("CC(N)C(=O)O");
  REQUIRE(ala.natoms() == flat.natoms());
  CHECK(ala.atoms[1].total_h() == flat.atoms[1].total_h());
}

TEST_CASE("dot-separated fragments") {
  Molecule two = parse_smiles("C.C");
  CHECK(two.natoms() == 2);
  CHECK(two.nbonds() == 0);
  CHECK(two.fragment_count == 2);
  CHECK(parse_smiles("CCO").fragment_count == 1);
  CHECK(parse_smiles("[Na+].[Cl-]").fragment_count == 2);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_smiles(""), SmilesError);
  CHECK_THROWS_AS(parse_smiles("C("), SmilesError);
  CHECK_THROWS_AS(parse_smiles("C)"), SmilesError);
  CHECK_THROWS_AS(parse_smiles("C1CC"), SmilesError);
  CHECK_THROWS_AS(parse_smiles("C="), SmilesError);
  CHECK_THROWS_AS(parse_smiles("=C"), SmilesError);
  CHECK_THROWS_AS(parse_smiles("C=#C"), SmilesError);
  CHECK_THROWS_AS(parse_smiles("[Xx]"), SmilesError);
  CHECK_THROWS_AS(parse_smiles("[C"), SmilesError);
  CHECK_THROWS_AS(parse_smiles("*"), SmilesError);
  CHECK_THROWS_AS(parse_smiles("C>>C"), SmilesError);
  CHECK_THROWS_AS(parse_smiles("qq"), SmilesError);

  try {
    parse_smiles("CC)C");
    FAIL("expected SmilesError");
  } catch (const SmilesError& e) {
    CHECK(e.position == 2);
  }
}

TEST_CASE("valence overflow is a parse error") {
  CHECK_THROWS_AS(parse_smiles("CC(C)(C)(C)C"), SmilesError);  // 5-valent carbon
  CHECK_THROWS_AS(parse_smiles("N(C)(C)(C)C"), SmilesError);   // 4-valent neutral N
  CHECK_THROWS_AS(parse_smiles("O(C)(C)C"), SmilesError);
  CHECK_THROWS_AS(parse_smiles("FC(F)F(F)F"), SmilesError);
  // bracket atoms opt out of the default valence model
  CHECK_NOTHROW(parse_smiles("[N](C)(C)(C)C"));
  // sulfur and phosphorus use their extended valences
  CHECK_NOTHROW(parse_smiles("CS(=O)(=O)C"));
  CHECK_NOTHROW(parse_smiles("OP(=O)(O)O"));
}

TEST_CASE("salt stripping keeps the largest organic fragment") {
  Molecule m = standardize(parse_smiles("CC(=O)[O-].[Na+]"));
  REQUIRE(m.natoms() == 4);
  CHECK(net_charge(m) == 0);
  // carboxylate got protonated on neutralization
  int oh = 0;
  for (const Atom& a : m.atoms)
    if (a.atomic_number == 8 && a.total_h() == 1) ++oh;
  CHECK(oh == 1);

  // two counterions
  Molecule carb = standardize(parse_smiles("C(=O)([O-])[O-].[Na+].[Na+]"));
  CHECK(carb.natoms() == 4);
  CHECK(net_charge(carb) == 0);

  // tie on heavy-atom count: earliest fragment wins
  Molecule tie = standardize(parse_smiles("C.N"));
  REQUIRE(tie.natoms() == 1);
  CHECK(tie.atoms[0].atomic_number == 6);
}

TEST_CASE("neutralization") {
  Molecule amine = standardize(parse_smiles("CC[NH3+]"));
  int n_idx = -1;
  for (int i = 0; i < amine.natoms(); ++i)
    if (amine.atoms[i].atomic_number == 7) n_idx = i;
  REQUIRE(n_idx >= 0);
  CHECK(amine.atoms[n_idx].formal_charge == 0);
  CHECK(amine.atoms[n_idx].total_h() == 2);
  CHECK(net_charge(amine) == 0);

  Molecule phenolate = standardize(parse_smiles("[O-]c1ccccc1"));
  CHECK(net_charge(phenolate) == 0);

  // quaternary ammonium has no proton to drop and stays charged
  Molecule choline = standardize(parse_smiles("OCC[N+](C)(C)C.[Cl-]"));
  CHECK(net_charge(choline) == 1);

  // nitro nitrogen is positively charged but bonded to =O, not neutralized
  Molecule nitro = standardize(parse_smiles("C[N+](=O)[O-]"));
  int plus = 0, minus = 0;
  for (const Atom& a : nitro.atoms) {
    if (a.formal_charge > 0) ++plus;
    if (a.formal_charge < 0) ++minus;
  }
  CHECK(plus == 1);
  CHECK(minus == 1);  // the O- neighbors a positive atom, left alone
  CHECK(net_charge(nitro) == 0);
}

TEST_CASE("standardize is idempotent") {
  for (const char* s : {"CC(=O)[O-].[Na+]", "CC[NH3+]", "c1ccccc1", "CCO",
                        "OCC[N+](C)(C)C.[Cl-]"}) {
    Molecule once = standardize(parse_smiles(s));
    Molecule twice = standardize(once);
    REQUIRE(twice.natoms() == once.natoms());
    REQUIRE(twice.nbonds() == once.nbonds());
    for (int i = 0; i < once.natoms(); ++i) {
      CHECK(twice.atoms[i].formal_charge == once.atoms[i].formal_charge);
      CHECK(twice.atoms[i].total_h() == once.atoms[i].total_h());
    }
  }
}
