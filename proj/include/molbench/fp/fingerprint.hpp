#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace molbench::fp {

// Fixed-length binary fingerprint with a cached popcount.
class Fingerprint {
 public:
  explicit Fingerprint(int n_bits) : n_bits_(n_bits) {
    if (n_bits <= 0) throw std::invalid_argument("Fingerprint: n_bits must be positive");
    words_.assign((n_bits + 63) / 64, 0);
  }

  int n_bits() const { return n_bits_; }

  void set(int i) {
    check_index(i);
    uint64_t mask = uint64_t{1} << (i % 64);
    uint64_t& w = words_[i / 64];
    if (!(w & mask)) {
      w |= mask;
      ++popcount_;
    }
  }

  bool test(int i) const {
    check_index(i);
    return (words_[i / 64] >> (i % 64)) & 1;
  }

  int popcount() const { return popcount_; }
  const std::vector<uint64_t>& words() const { return words_; }

  bool operator==(const Fingerprint& o) const {
    return n_bits_ == o.n_bits_ && words_ == o.words_;
  }
  bool operator!=(const Fingerprint& o) const { return !(*this == o); }

  // Hex digit j encodes bits 4j..4j+3, with bit 4j as the digit's LSB.
  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve((n_bits_ + 3) / 4);
    for (int j = 0; j * 4 < n_bits_; ++j) {
      int nib = 0;
      for (int k = 0; k < 4 && j * 4 + k < n_bits_; ++k)
        if (test(j * 4 + k)) nib |= 1 << k;
      out.push_back(digits[nib]);
    }
    return out;
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= n_bits_) throw std::out_of_range("Fingerprint: bit index out of range");
  }

  int n_bits_;
  int popcount_ = 0;
  std::vector<uint64_t> words_;
};

// |A ∩ B| / |A ∪ B|; two all-zero fingerprints count as identical.
inline double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.n_bits() != b.n_bits())
    throw std::invalid_argument("tanimoto: fingerprint lengths differ");
  long inter = 0, uni = 0;
  for (size_t i = 0; i < a.words().size(); ++i) {
    inter += std::popcount(a.words()[i] & b.words()[i]);
    uni += std::popcount(a.words()[i] | b.words()[i]);
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline Fingerprint fold(const std::vector<uint32_t>& ids, int n_bits) {
  Fingerprint f(n_bits);
  for (uint32_t id : ids) f.set(static_cast<int>(id % static_cast<uint32_t>(n_bits)));
  return f;
}

}  // namespace molbench::fp
