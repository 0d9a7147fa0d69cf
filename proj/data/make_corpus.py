#!/usr/bin/env python3
"""Regenerate corpus.csv.

The structures are ordinary small molecules: homologous series (alkanes,
alcohols, acids, esters, amines, halides, ...), substituted benzenes, common
heterocycles, plus a curated set of drugs, natural products and salts.  The
target is *synthetic*: a deterministic additive model over atom counts and a
few substructure flags computed directly from the SMILES text, plus seeded
Gaussian noise.  It is meant to behave like a log-solubility column for
benchmarking purposes; it is not experimental data.
"""

import random
import re

CURATED = [
    # branched alkanes / cycloalkanes
    "CC(C)C", "CC(C)CC", "CC(C)(C)C", "CCC(C)CC", "CC(C)C(C)C", "CCCC(C)C",
    "CC(C)CC(C)C", "C1CC1", "C1CCC1", "C1CCCC1", "C1CCCCC1", "C1CCCCCC1",
    "CC1CCCCC1", "CC1CCC(C)CC1", "C1CCC2CCCCC2C1", "CC1(C)CCCCC1",
    # alkenes / alkynes
    "C=C", "CC=C", "CC=CC", "CC(C)=C", "C=CC=C", "CC=CCC", "C#C", "CC#C",
    "CC#CC", "C=CCC=C", "CCC=C", "C=CCCC=C",
    # polyols, ether alcohols
    "OCCO", "OCCCO", "OCCCCO", "OCCCCCO", "OCC(O)CO", "OCC(O)C(O)CO",
    "OCC(O)C(O)C(O)CO", "OCC1CCCCC1", "CC(O)CC", "CCC(O)CC", "CC(O)C(C)C",
    "CC(C)(C)O", "COCCO", "CCCCOCCO", "OCCN(CC)CC", "NCCO",
    # ethers
    "COC", "CCOC", "CCOCC", "C1CCOC1", "C1CCOCC1", "COCCOC", "CCOCCC",
    "CC1CCCO1",
    # ketones
    "CC(C)=O", "CC(=O)CC", "CC(=O)CCC", "CCC(=O)CC", "O=C1CCCCC1",
    "O=C1CCCC1", "O=C1CCCCCC1", "CC(=O)C(C)C", "CC(=O)C(C)(C)C",
    # diacids, hydroxy acids
    "OC=O", "OC(=O)C(=O)O", "OC(=O)CC(=O)O", "OC(=O)CCC(=O)O",
    "OC(=O)CCCCC(=O)O", "CC(O)C(=O)O", "CC(C)C(=O)O", "CC(C)(C)C(=O)O",
    "OC(=O)CC(O)(C(=O)O)CC(=O)O",
    # esters beyond the series
    "COC=O", "CC(=O)OC(C)C", "CC(=O)OCC(C)C", "CCOC(=O)CC(=O)OCC",
    "CC(=O)OCC(OC(=O)C)COC(=O)C", "CCOS(=O)(=O)OCC",
    # amines
    "CNC", "CN(C)C", "CCNCC", "NCCN", "NCCCN", "CN(C)CC", "CC(C)N",
    "C1CCNCC1", "C1CCNC1", "C1CNCCN1", "C1COCCN1", "CCCCN(CCCC)CCCC",
    "NC1CCCCC1",
    # amides / ureas / nitriles
    "NC=O", "CC(=O)N", "CC(=O)NC", "CC(=O)N(C)C", "CCC(=O)N", "NC(N)=O",
    "CNC(=O)NC", "C=CC#N", "N#CCC#N", "CC(C)C#N",
    # halogenated aliphatics
    "ClCCl", "ClC(Cl)Cl", "ClC(Cl)(Cl)Cl", "FCF", "CC(F)(F)F", "BrCCBr",
    "ClCCCl", "CC(Cl)C", "ClC=CCl", "FC(F)(F)C(F)(F)F", "CI",
    # alkylbenzenes
    "c1ccccc1", "CC(C)c1ccccc1", "Cc1ccccc1C", "Cc1cccc(C)c1",
    "Cc1ccc(C)c(C)c1", "CC(C)(C)c1ccccc1", "C=Cc1ccccc1", "C#Cc1ccccc1",
    "c1ccc(-c2ccccc2)cc1", "Cc1ccccc1CC", "CCCCc1ccccc1", "CCCc1ccccc1",
    # fused rings
    "c1ccc2ccccc2c1", "Cc1ccc2ccccc2c1", "Cc1cccc2ccccc12",
    "c1ccc2cc3ccccc3cc2c1", "c1ccc2c(c1)ccc1ccccc12", "C1Cc2ccccc2C1",
    "c1ccc2c(c1)CCCC2", "C1Cc2ccccc2CC1", "Oc1cccc2ccccc12",
    "Oc1ccc2ccccc2c1",
    # phenols / anilines / anisoles beyond the generated set
    "Oc1ccccc1O", "Oc1cccc(O)c1", "CNc1ccccc1", "CN(C)c1ccccc1",
    "COc1ccc(OC)cc1", "COc1ccccc1O", "Oc1ccc(C)c(C)c1", "CCOc1ccccc1",
    "Cc1ccccc1O", "Cc1ccccc1N", "Cc1cccc(O)c1", "CC(C)(C)c1ccc(O)cc1",
    "CCc1ccc(O)cc1", "CCCc1ccc(O)cc1",
    # polysubstituted / polyhalogenated aromatics
    "Clc1ccccc1Cl", "Clc1cccc(Cl)c1", "Clc1cc(Cl)cc(Cl)c1", "Fc1ccccc1C",
    "Clc1ccccc1C", "Oc1ccc(Cl)cc1Cl", "Oc1cc(Cl)cc(Cl)c1", "Nc1ccc(Cl)cc1Cl",
    "Cc1c([N+](=O)[O-])cc([N+](=O)[O-])cc1[N+](=O)[O-]", "C[N+](=O)[O-]",
    # heteroaromatics
    "c1ccncc1", "Cc1ccncc1", "Cc1ccccn1", "c1ccoc1", "Cc1ccco1", "c1ccsc1",
    "Cc1cccs1", "c1cc[nH]c1", "Cc1ccc[nH]1", "c1cnc[nH]1", "c1cncnc1",
    "c1cnccn1", "c1ccc2[nH]ccc2c1", "c1ccc2ncccc2c1", "c1ccc2cnccc2c1",
    "Cc1cccnc1", "Nc1ccccn1", "Oc1ccccn1", "c1ccc(-c2ccccn2)cc1",
    "O=Cc1ccco1", "OCc1ccco1", "Cc1ncc[nH]1",
    # sulfur / phosphorus
    "CS", "CCS", "CSC", "CCSC", "CSSC", "CCSSCC", "CS(=O)C", "CS(=O)(=O)C",
    "OP(=O)(O)O", "COP(=O)(OC)OC", "CSc1ccccc1", "Sc1ccccc1",
    "OS(=O)(=O)c1ccccc1", "Cc1ccc(S(=O)(=O)O)cc1", "CCCCSCCCC",
    # drugs & natural products
    "CC(=O)Oc1ccccc1C(=O)O", "CC(=O)Nc1ccc(O)cc1",
    "Cn1cnc2c1c(=O)n(C)c(=O)n2C", "Cn1cnc2c1c(=O)[nH]c(=O)n2C",
    "CC(C)Cc1ccc(C(C)C(=O)O)cc1", "CN1CCCC1c1cccnc1",
    "CCOC(=O)c1ccc(N)cc1", "OC(=O)c1ccccc1O", "CC(=O)Nc1ccccc1",
    "OCC(O)C(O)C(O)C(O)C=O", "COc1cc(C=O)ccc1O", "C=CCc1ccc(O)c(OC)c1",
    "CC(C)C1CCC(C)CC1O", "CC1(C)C2CCC1(C)C(=O)C2", "CC(=C)C1CCC(C)=CC1",
    "NCC(=O)O", "CC(N)C(=O)O", "NC(Cc1ccccc1)C(=O)O", "NC(CO)C(=O)O",
    "NC(=O)c1cccnc1", "OC(=O)c1cccnc1", "NNC(=O)c1ccncc1",
    "CCC1(CC)C(=O)NC(=O)NC1=O", "CCC1(c2ccccc2)C(=O)NC(=O)NC1=O",
    "O=C1NS(=O)(=O)c2ccccc21", "CCN(CC)C(=O)c1cccc(C)c1",
    "CCN(CC)CC(=O)Nc1c(C)cccc1C", "CCNc1nc(Cl)nc(NC(C)C)n1",
    "O=c1ccc2ccccc2o1", "Cc1ncc(CO)c(CO)c1O", "Nc1ccc(C(=O)O)cc1",
    "Nc1ccc(S(N)(=O)=O)cc1", "NCCc1ccc(O)c(O)c1", "CNCC(O)c1ccc(O)c(O)c1",
    "NCCc1cnc[nH]1", "NCCc1c[nH]c2ccccc12", "NCCc1c[nH]c2ccc(O)cc12",
    "CC(=O)NCCc1c[nH]c2ccc(OC)cc12", "Nc1ncnc2[nH]cnc12",
    "O=c1cc[nH]c(=O)[nH]1", "Cc1c[nH]c(=O)[nH]c1=O", "Nc1cc[nH]c(=O)n1",
    "CNC(=O)Oc1cccc2ccccc12", "Clc1ccc(C(c2ccc(Cl)cc2)C(Cl)(Cl)Cl)cc1",
    "CC(C)NCC(O)COc1ccc2ccccc2c1", "COc1ccc2cc(C(C)C(=O)O)ccc2c1",
    "CC(C)(C)NCC(O)c1ccc(O)c(CO)c1", "COc1ccc(CC=O)cc1", "COc1ccc(CCO)cc1",
    "CC(C)=CCCC(C)=CCO", "CC1=CCC(CC1)C(C)C",
    "CC(C)CCCC(C)CCCC(C)CCCC(C)C",
    # salts / charged species
    "CC(=O)[O-].[Na+]", "[O-]C(=O)c1ccccc1.[K+]",
    "C(=O)([O-])[O-].[Na+].[Na+]", "CC[NH3+].[Cl-]", "OCC[N+](C)(C)C.[Cl-]",
    "C[N+](C)(C)C.[Cl-]", "CCCCCCCCCCCCOS(=O)(=O)[O-].[Na+]",
    "[NH4+].[O-]C(=O)C", "OC(=O)C[NH3+].[Cl-]",
    # isotopes / small inorganics / diaryl
    "[13CH3]CO", "[2H]OC([2H])([2H])C", "N", "O",
    "c1ccc(Cc2ccccc2)cc1", "c1ccc(Oc2ccccc2)cc1", "c1ccc(Sc2ccccc2)cc1",
    "c1ccc(Nc2ccccc2)cc1", "O=C(c1ccccc1)c1ccccc1", "OC(c1ccccc1)c1ccccc1",
    "C(c1ccccc1)(c1ccccc1)c1ccccc1", "CC(O)c1ccccc1", "OCCc1ccccc1",
    "NCc1ccccc1", "NCCc1ccccc1", "ClCc1ccccc1", "O=CNc1ccccc1",
]


def chain(n: int) -> str:
    return "C" * n

def homologous_series():
    rows = []
    for n in range(1, 13):                     # n-alkanes C1..C12
        rows.append(chain(n))
    for n in range(1, 11):                     # 1-alkanols
        rows.append(chain(n) + "O")
    for n in range(1, 9):                      # 1-alkanamines
        rows.append(chain(n) + "N")
    for n in range(1, 9):                      # 1-chloro / 1-bromo / 1-iodo
        rows.append(chain(n) + "Cl")
    for n in range(1, 7):
        rows.append(chain(n) + "Br")
    for n in range(2, 7):
        rows.append(chain(n) + "I")
    for n in range(1, 10):                     # alkanoic acids C2..C10
        rows.append(chain(n) + "C(=O)O")
    for n in range(1, 7):                      # methyl esters
        rows.append(chain(n) + "C(=O)OC")
    for n in range(1, 7):                      # ethyl esters
        rows.append(chain(n) + "C(=O)OCC")
    for n in range(1, 7):                      # primary amides
        rows.append(chain(n) + "C(=O)N")
    for n in range(2, 9):                      # aldehydes
        rows.append(chain(n) + "=O")
    for n in range(1, 8):                      # nitriles
        rows.append(chain(n) + "C#N")
    for n in range(2, 8):                      # acetate esters of alkanols
        rows.append("CC(=O)O" + chain(n))
    return rows


# benzene substituent in branch form; prefix map for the leading position
PREFIX = {"C": "C", "CC": "CC", "O": "O", "OC": "CO", "N": "N", "Cl": "Cl",
          "F": "F", "Br": "Br"}
BRANCH = ["C", "CC", "O", "OC", "N", "NC", "Cl", "F", "Br", "I", "C=O",
          "C(=O)O", "C(=O)OC", "C(=O)N", "C(=O)C", "C#N", "[N+](=O)[O-]",
          "CO", "CCO", "S"]

def benzenes():
    rows = []
    for b in BRANCH:                           # monosubstituted
        rows.append(PREFIX.get(b, None) + "c1ccccc1" if b in PREFIX
                    else "c1ccc(" + b + ")cc1")
    for x in ["C", "O", "N", "Cl", "Br", "F"]:  # para-disubstituted
        for y in BRANCH:
            rows.append(PREFIX[x] + "c1ccc(" + y + ")cc1")
    for x in ["C", "O", "Cl"]:                  # ortho-disubstituted subset
        for y in ["C", "O", "N", "Cl", "C=O", "C(=O)O", "OC"]:
            rows.append(PREFIX[x] + "c1ccccc1" + y)
    return rows


HAL_COEF = {"F": -0.40, "CL": -0.90, "BR": -1.10, "I": -1.30}


def atom_tokens(smiles: str):
    """Element symbols in order, bracket atoms reduced to their symbol."""
    tokens = []
    i = 0
    while i < len(smiles):
        ch = smiles[i]
        if ch == "[":
            j = smiles.index("]", i)
            body = smiles[i + 1 : j]
            m = re.search(r"([A-Z][a-z]?|[a-z]{1,2})", body)
            if m:
                tokens.append(m.group(1))
            i = j + 1
        elif smiles[i : i + 2] in ("Cl", "Br"):
            tokens.append(smiles[i : i + 2])
            i += 2
        elif ch.isalpha() and ch != "H":
            tokens.append(ch)
            i += 1
        else:
            i += 1
    return tokens


def ring_count(smiles: str) -> int:
    body = re.sub(r"\[[^]]*\]", "A", smiles)
    digits = re.findall(r"%\d\d|\d", body)
    return len(digits) // 2


def features(smiles: str):
    toks = atom_tokens(smiles)
    up = [t.upper() for t in toks]
    hal = sum(HAL_COEF.get(t, 0.0) for t in up)
    n_nitro = smiles.count("[N+](=O)[O-]")
    return dict(
        n_c=up.count("C"),
        n_n=up.count("N") - 2 * n_nitro,
        n_o=up.count("O") - 2 * n_nitro,
        n_s=up.count("S"),
        hal=hal,
        n_arom=sum(1 for t in toks if t[0].islower()),
        rings=ring_count(smiles),
        n_nitro=n_nitro,
        has_acid=int(bool(re.search(
            r"C\(=O\)O(?![C])|OC\(=O\)|C\(=O\)\[O-\]|\(=O\)\(O\)O", smiles))),
        has_amide=int(bool(re.search(
            r"C\(=O\)N|NC\(=O\)|C\(N\)=O|c\(=O\)n|n\(C\)c\(=O\)", smiles))),
        has_ester=int(bool(re.search(r"C\(=O\)OC|COC\(=O\)|OC\(=O\)C", smiles))),
        has_phenol=int(bool(re.search(r"Oc1|c\d?\(O\)|\(O\)c", smiles))),
    )


def target(smiles: str, rng: random.Random) -> float:
    f = features(smiles)
    v = (1.1
         - 0.45 * f["n_c"]
         + 0.65 * f["n_o"]
         + 0.50 * f["n_n"]
         + 0.20 * f["n_s"]
         + f["hal"]
         - 0.50 * f["rings"]
         - 0.08 * f["n_arom"]
         + 1.40 * f["has_acid"]
         + 1.00 * f["has_amide"]
         - 0.80 * f["has_ester"]
         - 1.20 * f["n_nitro"]
         + 0.80 * f["has_phenol"])
    return v + rng.gauss(0.0, 0.10)


def main():
    rng = random.Random(20260823)
    seen = set()
    rows = []
    for s in homologous_series() + benzenes() + CURATED:
        s = s.strip()
        if not s or s in seen:
            continue
        seen.add(s)
        rows.append((s, target(s, rng)))
    with open("corpus.csv", "w") as fh:
        fh.write("smiles,target\n")
        for s, t in rows:
            fh.write(f"{s},{t:.3f}\n")
    print(f"wrote {len(rows)} rows")


if __name__ == "__main__":
    main()
