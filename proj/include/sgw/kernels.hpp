// Level-indexed Fourier symbols for quasi-interpolation kernel pairs.
//
// A scheme is a pair (φ_j, φ̃_j): φ_j a trigonometric polynomial with
// spectrum in D_j, φ̃_j a periodic function/distribution. Everything the
// library does with kernels goes through the symbols ĥ_j(ℓ).
//
// Built-in schemes and their symbols:
//   lagrange                φ̂ = 1 on D_j            φ̃̂(ℓ) = 1
//   averaged                φ̂ = 1 on D_j            φ̃̂(ℓ) = cos²(πℓ/2^{j+1})
//   averaged_corrected      φ̂ = 1/cos²(πℓ/2^{j+1})  φ̃̂(ℓ) = cos²(πℓ/2^{j+1})
//   derivative(a,b)         φ̂ = 1 on D_j            φ̃̂(ℓ) = 1 + a(iℓ)2^{-j} + b(iℓ)²2^{-2j}
//   kantorovich(σ)          φ̂ = 1 on D_j            φ̃̂(ℓ) = sinc(π2^{-j-σ}ℓ)
//   kantorovich_corrected(σ) φ̂ = 1/sinc(...)  on D_j φ̃̂(ℓ) = sinc(π2^{-j-σ}ℓ)
//
// The conditions certified here are numerical certificates over finite probe
// ranges, not proofs: a growth trend at s+0.5 is the practical witness that
// an order s is sharp.
#pragma once

#include <functional>
#include <limits>
#include <string>

#include "sgw/freq.hpp"

namespace sgw {

inline constexpr double kInfOrder = std::numeric_limits<double>::infinity();

enum class KernelKind { Polynomial, Distribution };

struct KernelFamily {
  std::string name;
  KernelKind kind = KernelKind::Distribution;
  std::function<Complex(int j, long ell)> symbol;

  // Envelope |ĥ_j(m)| ≤ tailConst · (|m|/2^j)^tailExponent for |m| beyond D_j;
  // tailExponent ≤ 0 means decay, > 0 polynomial growth (declared degree bound).
  double tailExponent = 0.0;
  double tailConst = 1.0;
  // sup_{j,ℓ}|ĥ_j(ℓ)|; +inf when the symbol is unbounded.
  double supBound = 1.0;
};

struct QuasiInterpScheme {
  std::string name;
  KernelFamily phi;       // polynomial kind
  KernelFamily phiTilde;  // distribution kind
  double N = 0.0;         // growth order of φ̃
  double s = kInfOrder;   // compatibility order (inf sentinel: holds for every s)
  double sigma = 0.0;     // Kantorovich averaging parameter, when applicable
};

QuasiInterpScheme make_lagrange();
QuasiInterpScheme make_averaged();
QuasiInterpScheme make_averaged_corrected();
QuasiInterpScheme make_derivative(double a, double b);
QuasiInterpScheme make_kantorovich(double sigma);
QuasiInterpScheme make_kantorovich_corrected(double sigma);

// Parses "lagrange", "derivative(0.5,0)", "kantorovich(1)", ...
QuasiInterpScheme builtin_scheme(const std::string& name);
std::vector<std::string> builtin_scheme_names();

// max over j ≤ jmax, |ℓ| ≤ 2^{jmax+4} of |ĥ_j(ℓ)| / (1 + |2^{-j}ℓ|^N);
// the ℓ = 0 term contributes |ĥ_j(0)| itself.
double check_growth(const KernelFamily& fam, int jmax, double N);

// max over j ≤ jmax, ℓ ∈ D_j of |φ̂_j(ℓ)|. Polynomial kind only.
double check_uniform(const KernelFamily& fam, int jmax);

// max over j ≤ jmax, ℓ ∈ D_j \ {0} of |1 - φ̂_j(ℓ)φ̃̂_j(ℓ)| / |2^{-j}ℓ|^s.
// Throws if the residual at ℓ = 0 exceeds 1e-12 on any level.
double check_compatibility(const QuasiInterpScheme& scheme, int jmax, double s);

struct AmalgamResult {
  double value = 0.0;  // truncated sup_{ℓ∈D_j} (Σ_{|μ|≤muMax} |ψ̂(ℓ+2^jμ)|^p)^{1/p}
  double tail = 0.0;   // bound for the discarded |μ| > muMax mass, from the envelope
  bool divergent = false;
};

// ‖ψ‖_{Ã_{p,j}}; p = inf uses the sup over the probed frequencies.
AmalgamResult amalgam_norm(const KernelFamily& fam, double p, int j, long muMax);

// Whether sup_j ‖ψ‖_{Ã_{p,j}} is finite under the declared envelope.
bool amalgam_finite(const KernelFamily& fam, double p);

// sinc(x) = sin(x)/x and its reciprocal, with series branches near 0.
double sinc(double x);
double invSinc(double x);

}  // namespace sgw
