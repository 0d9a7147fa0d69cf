#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "molbench/core/rng.hpp"

namespace molbench::bench {

struct SplitPlan {
  uint64_t seed = 0;
  int downsample_n = 1000;
  std::vector<int> train_indices;
  std::vector<int> test_indices;
};

// Seeded downsample to min(downsample_n, n) without replacement, then a
// shuffled 80/20 cut (train size = round(0.8·k)).
inline SplitPlan sample_and_split(int n_records, uint64_t seed, int downsample_n = 1000) {
  if (n_records < 10) throw std::invalid_argument("sample_and_split: need >= 10 records");
  if (downsample_n < 10)
    throw std::invalid_argument("sample_and_split: downsample_n must be >= 10");
  core::Rng rng(seed);
  std::vector<int> pool(n_records);
  std::iota(pool.begin(), pool.end(), 0);
  rng.shuffle(pool);
  int k = std::min(downsample_n, n_records);
  pool.resize(k);
  rng.shuffle(pool);
  int n_train = static_cast<int>(std::llround(0.8 * k));

  SplitPlan plan;
  plan.seed = seed;
  plan.downsample_n = downsample_n;
  plan.train_indices.assign(pool.begin(), pool.begin() + n_train);
  plan.test_indices.assign(pool.begin() + n_train, pool.end());
  return plan;
}

}  // namespace molbench::bench
