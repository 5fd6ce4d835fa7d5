// Weighted Wiener norms of spectral functions.
//
// Primed norms are ℓ_q sums of weight(k)·|f̂(k)| over the lattice, with
//   isotropic(γ):  (1+|k|_∞)^γ
//   mixed(γ):      Π_i (1+|k_i|)^γ
//   hybrid(α,β):   Π_i (1+|k_i|)^α · (1+|k|_∞)^β
// (|k| in the isotropic factor is fixed to |k|_∞ project-wide). The dyadic
// block norm and the η-block characterization norm are the equivalent norms
// used by the rate machinery; their equivalence constants are measured, never
// asserted as specific values.
#pragma once

#include "sgw/kernels.hpp"
#include "sgw/spectral.hpp"

namespace sgw {

enum class WeightVariant { Isotropic, Mixed, Hybrid };

struct NormParams {
  double q = 2.0;  // may be inf
  WeightVariant variant = WeightVariant::Isotropic;
  double alpha = 0.0;  // hybrid only
  double beta = 0.0;   // hybrid only
  double gamma = 0.0;  // isotropic / mixed
};

NormParams iso_norm(double gamma, double q);
NormParams mixed_norm(double gamma, double q);
NormParams hybrid_norm(double alpha, double beta, double q);

double weight(const FreqIndex& k, const NormParams& p);

struct NormResult {
  double value = 0.0;
  double tail = 0.0;  // certified bound for mass outside the stored support
};

NormResult wiener_norm(const SpectralFunction& f, const NormParams& p);

// (Σ_k 2^{q(α|k|_1+β|k|_∞)} ‖δ_k(f)‖_{A_q}^q)^{1/q}; requires α ≥ 0, α+β ≥ 0.
// Finite supports only.
double block_norm(const SpectralFunction& f, double alpha, double beta, double q);

struct CharNormResult {
  double value = 0.0;
  double remainder = 0.0;  // geometric estimate for the |j|_∞ > jmax shells
};

// ‖f‖⁺ = (Σ_j 2^{q(α|j|_1+β|j|_∞)} ‖η_j(f)‖_{A_q}^q)^{1/q}, truncated at
// |j|_∞ ≤ jmax. Refuses (std::invalid_argument naming the inequality) when
// the scheme's declared (N, s) or amalgam bound do not cover (α, β, q).
CharNormResult lp_char_norm(const SpectralFunction& f, const QuasiInterpScheme& scheme,
                            double alpha, double beta, double q, int jmax);

// ‖f‖_{A_q^{α,β}} / (2^{α|ℓ|_1+(β-γ)|ℓ|_∞} ‖f‖_{A_q^γ}) for f with degrees ℓ;
// requires min(α, α+β-γ) > 0. The contract is ratio ≤ 1.
double bernstein_ratio(const TrigPolynomial& f, double alpha, double beta, double gamma, double q);

// σ_{p,q} = (1/q - 1/p)_+ with 1/∞ = 0.
double sigma_pq(double p, double q);

// Hölder conjugate, with conj(1) = inf and conj(inf) = 1.
double conjugate_exponent(double p);

}  // namespace sgw
