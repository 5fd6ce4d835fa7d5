// Frequency-lattice primitives.
//
// Conventions fixed project-wide:
//   D_j = [-2^{j-1}, 2^{j-1}) ∩ Z, with D_0 = {0}
//   P_0 = {0}, P_j = { ℓ : 2^{j-1} ≤ |ℓ| < 2^j } for j > 0
//   nodes x_k^j = πk/2^{j-1} = 2πk/2^j
//   |k| in hybrid weights always means |k|_∞
#pragma once

#include <bit>
#include <complex>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

namespace sgw {

using FreqIndex = std::vector<int>;
using Complex = std::complex<double>;

// Sorted keys give deterministic iteration order, which keeps every
// reduction in the library bit-reproducible without extra bookkeeping.
using CoeffMap = std::map<FreqIndex, Complex>;

inline int norm1(const FreqIndex& k) {
  int s = 0;
  for (int v : k) s += std::abs(v);
  return s;
}

inline int normInf(const FreqIndex& k) {
  int m = 0;
  for (int v : k) m = std::max(m, std::abs(v));
  return m;
}

inline long dLower(int j) { return j == 0 ? 0 : -(1L << (j - 1)); }
inline long dUpper(int j) { return j == 0 ? 1 : (1L << (j - 1)); }  // exclusive
inline long dSize(int j) { return 1L << j; }

inline bool inD(long ell, int j) { return ell >= dLower(j) && ell < dUpper(j); }

// Level j with ℓ ∈ P_j.
inline int blockLevel(long ell) {
  if (ell == 0) return 0;
  return static_cast<int>(std::bit_width(static_cast<unsigned long>(std::labs(ell))));
}

inline bool inP(long ell, int j) { return blockLevel(ell) == j; }

inline FreqIndex blockLevels(const FreqIndex& k) {
  FreqIndex lv(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) lv[i] = blockLevel(k[i]);
  return lv;
}

// The unique representative of ℓ (mod 2^j) lying in D_j.
inline long reduceToD(long ell, int j) {
  long m = 1L << j;
  long shift = (j == 0) ? 0 : (1L << (j - 1));
  return ((ell + shift) % m + m) % m - shift;
}

inline void checkDim(int dim, const FreqIndex& k, const char* where) {
  if (static_cast<int>(k.size()) != dim)
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

}  // namespace sgw
