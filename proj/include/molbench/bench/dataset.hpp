#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "molbench/bench/csv.hpp"
#include "molbench/chem/smiles.hpp"
#include "molbench/chem/standardize.hpp"
#include "molbench/fp/morgan.hpp"
#include "molbench/graph/molgraph.hpp"

namespace molbench::bench {

struct Record {
  std::string smiles;
  double target = 0.0;
  chem::Molecule mol;           // standardized
  graph::MolGraph graph;
  fp::Fingerprint fingerprint{1024};
};

struct Rejection {
  long row = 0;  // 1-based data row (header excluded)
  std::string smiles;
  std::string reason;
};

struct Dataset {
  std::string name;
  std::vector<Record> records;
  std::vector<Rejection> rejections;

  size_t size() const { return records.size(); }
};

// Parses, standardizes, featurizes and fingerprints every row; rows that
// fail SMILES parsing or have non-numeric targets are dropped and logged.
inline Dataset load_csv(const std::string& path, const std::string& smiles_col,
                        const std::string& target_col, const std::string& name = "") {
  CsvTable t = read_csv(path);
  int si = t.column(smiles_col);
  int ti = t.column(target_col);
  Dataset ds;
  ds.name = name.empty() ? path : name;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    long rownum = static_cast<long>(r) + 1;
    if (si >= static_cast<int>(row.size()) || ti >= static_cast<int>(row.size())) {
      ds.rejections.push_back({rownum, "", "too few fields"});
      continue;
    }
    const std::string& smiles = row[si];
    if (smiles.empty()) {
      ds.rejections.push_back({rownum, smiles, "empty SMILES"});
      continue;
    }
    double target;
    try {
      size_t pos = 0;
      target = std::stod(row[ti], &pos);
      while (pos < row[ti].size() && std::isspace(static_cast<unsigned char>(row[ti][pos])))
        ++pos;
      if (pos != row[ti].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      ds.rejections.push_back({rownum, smiles, "non-numeric target '" + row[ti] + "'"});
      continue;
    }
    if (!std::isfinite(target)) {
      ds.rejections.push_back({rownum, smiles, "non-finite target"});
      continue;
    }
    Record rec;
    rec.smiles = smiles;
    rec.target = target;
    try {
      rec.mol = chem::standardize(chem::parse_smiles(smiles));
      rec.graph = graph::featurize(rec.mol);
      rec.fingerprint = fp::ecfp4(rec.mol);
    } catch (const std::exception& e) {
      ds.rejections.push_back({rownum, smiles, e.what()});
      continue;
    }
    ds.records.push_back(std::move(rec));
  }
  if (ds.records.empty())
    throw std::runtime_error("no valid rows in " + path + " (" +
                             std::to_string(ds.rejections.size()) + " rejected)");
  return ds;
}

// Fingerprint bit rows as a dense 0/1 matrix for the given record indices.
inline core::Matrix fingerprint_rows(const Dataset& ds, const std::vector<int>& indices) {
  int bits = indices.empty() ? 1024 : ds.records[indices[0]].fingerprint.n_bits();
  core::Matrix m = core::Matrix::Zero(static_cast<long>(indices.size()), bits);
  for (size_t r = 0; r < indices.size(); ++r) {
    const auto& f = ds.records[indices[r]].fingerprint;
    for (int b = 0; b < f.n_bits(); ++b)
      if (f.test(b)) m(static_cast<long>(r), b) = 1.0;
  }
  return m;
}

inline std::vector<graph::MolGraph> graph_rows(const Dataset& ds,
                                               const std::vector<int>& indices) {
  std::vector<graph::MolGraph> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(ds.records[i].graph);
  return out;
}

inline core::Matrix target_rows(const Dataset& ds, const std::vector<int>& indices) {
  core::Matrix y(static_cast<long>(indices.size()), 1);
  for (size_t r = 0; r < indices.size(); ++r) y(static_cast<long>(r), 0) = ds.records[indices[r]].target;
  return y;
}

}  // namespace molbench::bench
