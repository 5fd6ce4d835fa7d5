// Univariate quasi-interpolation operators Q_j applied along tensor axes,
// tensor difference blocks η_j = Π_i (Q_{j_i} - Q_{j_i-1}) with Q_{-1} = 0,
// and combination operators P_Γ = Σ_{j∈Γ} η_j.
//
// Production path is the aliasing identity, exact in coefficient space:
//   (Q_j f)^(ℓ) = φ̂_j(ℓ) · Σ_μ f̂(ℓ+2^jμ) φ̃̂_j(ℓ+2^jμ),  ℓ ∈ D_j.
// The sampling definition
//   Q_j f = 2^{-j} Σ_{k∈D_j} (f∗φ̃_j)(x_k^j) φ_j(·-x_k^j)
// is retained solely as the independent oracle (apply_Q_direct).
#pragma once

#include "sgw/index_set.hpp"
#include "sgw/kernels.hpp"
#include "sgw/spectral.hpp"

namespace sgw {

// Q at `level` along `axis`, via the aliasing identity.
SpectralFunction apply_Q(const QuasiInterpScheme& scheme, int level, int axis,
                         const SpectralFunction& f);

// Same contract, computed from node samples of f ∗ φ̃_j. Oracle.
SpectralFunction apply_Q_direct(const QuasiInterpScheme& scheme, int level, int axis,
                                const SpectralFunction& f);

// η_j(f) by axis-sequential differencing; spectrum lies in the D-box of j.
TrigPolynomial apply_eta(const QuasiInterpScheme& scheme, const FreqIndex& levels,
                         const SpectralFunction& f);

// η_j(f) by expanding the product into 2^d signed tensor terms; must agree
// with apply_eta and is kept for cross-checking.
TrigPolynomial apply_eta_signed(const QuasiInterpScheme& scheme, const FreqIndex& levels,
                                const SpectralFunction& f);

// P_Γ(f) = Σ_{j∈Γ} η_j(f), accumulated by pairwise tree reduction over the
// sorted member list so sums are bit-reproducible.
SpectralFunction apply_P(const QuasiInterpScheme& scheme, const SparseIndexSet& gamma,
                         const SpectralFunction& f);

}  // namespace sgw
