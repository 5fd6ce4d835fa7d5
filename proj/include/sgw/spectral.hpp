// Frequency-space representation of multivariate periodic functions:
//   f(x) = Σ_k f̂(k) e^{i(k,x)},  k ∈ Z^d.
//
// A SpectralFunction stores a finite coefficient map. Rule-backed functions
// additionally carry the analytic coefficient rule, the box [-M,M]^d the map
// covers, and a certified bound for the A_1 mass left outside the box.
// Coefficients are complex throughout; no real-symmetry shortcut.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sgw/freq.hpp"
#include "sgw/kernels.hpp"

namespace sgw {

struct RuleInfo {
  std::string name;  // "korobov" is the only built-in rule
  double a = 0.0;
  double b = 0.0;
  std::uint64_t seed = 0;
  std::function<Complex(const FreqIndex&)> eval;
  // Upper bound for Σ_{k ∉ [-M,M]^d} Π_i (1+|k_i|)^{extra} |f̂(k)| via the
  // radially monotone per-axis majorant. Throws when the majorant diverges.
  std::function<double(int M, double extra)> weightedTail;
};

struct SpectralFunction {
  int dim = 1;
  CoeffMap coeffs;
  double tailA1 = 0.0;  // certified A_1 mass not held in `coeffs`
  int cutoff = 0;       // box radius covered by `coeffs` (rule-backed only)
  std::shared_ptr<const RuleInfo> rule;
};

SpectralFunction make_finite(int dim, CoeffMap coeffs);

// Materializes the rule on [-cutoff, cutoff]^d and certifies the tail.
SpectralFunction make_from_rule(int dim, RuleInfo rule, int cutoff);

// f̂(k) = Π_i (1+|k_i|)^{-a} · (1+|k|_∞)^{-b} · e^{2πi u(k)} with u(k)
// hashed from the seed.
RuleInfo korobov_rule(int dim, double a, double b, std::uint64_t seed);

struct TrigPolynomial {
  int dim = 1;
  FreqIndex degrees;  // spectrum lies in D_{j_1} × … × D_{j_d}
  CoeffMap coeffs;
};

TrigPolynomial make_polynomial(int dim, FreqIndex degrees, CoeffMap coeffs);
SpectralFunction to_spectral(const TrigPolynomial& t);

Complex evaluate(const SpectralFunction& f, const std::vector<double>& x);
Complex evaluate(const TrigPolynomial& t, const std::vector<double>& x);

// δ_k(f): restriction of f to P_{k_1} × … × P_{k_d}, returned with degrees k.
TrigPolynomial dyadic_block(const SpectralFunction& f, const FreqIndex& levels);

// Exact values of (f ∗ φ̃_level) at the 2^level nodes x_k = πk/2^{level-1},
// k ∈ D_level, by direct summation over the stored support. Univariate.
std::vector<Complex> sample_convolution(const SpectralFunction& f, const KernelFamily& tilde,
                                        int level);

SpectralFunction add(const SpectralFunction& f, const SpectralFunction& g);
SpectralFunction subtract(const SpectralFunction& f, const SpectralFunction& g);
SpectralFunction scale(const SpectralFunction& f, Complex c);

double a1_norm(const SpectralFunction& f);
double a1_distance(const SpectralFunction& f, const SpectralFunction& g);

}  // namespace sgw
