// Sparse level-index sets Δ(n,T) and Δ(ξ), their cardinalities, the sparse
// node grids Γ(n,T), and complement tail sums.
//
//   Δ(n,T) = { k ∈ Z_+^d : |k|_1 - T|k|_∞ ≤ (1-T)n },  T < 1,
// with T = -∞ (full box |k|_∞ ≤ n) as a dedicated sentinel that never enters
// arithmetic. Node identity uses exact dyadic fractions of a turn.
#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "sgw/freq.hpp"

namespace sgw {

inline constexpr double kFullBoxT = -std::numeric_limits<double>::infinity();

struct SparseIndexSet {
  int dim = 1;
  std::vector<FreqIndex> members;  // sorted lexicographically
  std::string descriptor;

  bool contains(const FreqIndex& k) const;
  std::size_t size() const { return members.size(); }
};

SparseIndexSet build_delta(int n, double T, int d);

// Δ(ξ) = { k : (α-σ-ε)|k|_1 - (γ-β-ε)|k|_∞ ≤ ξ }, requiring
// 0 < ε < γ-β < α-σ. Coincides with Δ(n,T) for T = (γ-β-ε)/(α-σ-ε),
// n = ξ/(α-σ-γ+β).
SparseIndexSet build_energy(double xi, double alpha, double beta, double gamma, double eps,
                            double sigma, int d);

// Wraps a user-supplied member list; asserts downward closure.
SparseIndexSet explicit_set(int d, std::vector<FreqIndex> members);

// Σ_{k∈Γ} 2^{|k|_1}: the frequency budget of P_Γ (exact integer).
unsigned long long frequency_count(const SparseIndexSet& gamma);

struct CardinalityProfile {
  std::vector<int> levels;
  std::vector<unsigned long long> counts;
  double fittedExponent = 0.0;  // log2(count) ≈ E·n + L·log2(n) + c
  double fittedLogPower = 0.0;
  bool logRegressor = false;
};

CardinalityProfile cardinality_profile(double T, int d, const std::vector<int>& levels);

// A node coordinate as the reduced dyadic fraction num/den of a turn;
// the angle is 2π·num/den.
struct Frac {
  std::uint32_t num = 0;
  std::uint32_t den = 1;
  auto operator<=>(const Frac&) const = default;
};

Frac make_frac(long nodeIndex, int level);
double frac_angle(const Frac& f);

using GridPoint = std::vector<Frac>;

// Γ = ∪_{j∈Γset} I_{j_1} × … × I_{j_d}, deduplicated exactly.
std::set<GridPoint> grid_points(const SparseIndexSet& set);
std::set<GridPoint> grid_points(int n, double T, int d);

struct TailSumResult {
  double sum = 0.0;        // enumerated Σ_{k∉Δ, |k|_∞≤kmax} 2^{-t|k|_1+r|k|_∞}
  double sup = 0.0;        // enumerated sup over the same range
  double remainder = 0.0;  // certified bound for the |k|_∞ > kmax part
  double supRemainder = 0.0;
  double sumBound = 0.0;  // printed bound value per regime
  double supBound = 0.0;
  bool boundaryRegime = false;  // T ≥ r/t
};

// Complement sums of Δ(n,T) with weights 2^{-t|k|_1 + r|k|_∞}; requires
// t ≥ 0 and r < t. Enumeration within |k|_∞ ≤ kmax plus a geometric
// per-axis majorant for the remainder.
TailSumResult tail_sum(int n, double T, double t, double r, int d, int kmax);

// Same enumeration machinery over the complement of an arbitrary finite set.
struct ComplementSum {
  double sum = 0.0;
  double sup = 0.0;
  double remainder = 0.0;
};
ComplementSum complement_sum(const SparseIndexSet& gamma, double t, double r, int kmax);

}  // namespace sgw
