#include "sgw/quasi_interp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgw {

namespace {
constexpr double kPi = std::numbers::pi;

// A_1 budget for the mass of f that is not stored in the coefficient map.
// For N = 0 the aliasing sum folds unstored coefficients in with bounded
// symbols; for N > 0 the fold is weighted and needs the rule majorant.
double propagateTail(const QuasiInterpScheme& scheme, int level, const SpectralFunction& f) {
  if (f.tailA1 == 0.0) return 0.0;
  double phiBound = scheme.phi.supBound;
  if (scheme.N == 0.0) return phiBound * scheme.phiTilde.supBound * f.tailA1;
  if (f.rule) {
    double weighted = f.rule->weightedTail(f.cutoff, scheme.N);
    return phiBound * scheme.phiTilde.tailConst *
           (f.tailA1 + std::exp2(-level * scheme.N) * weighted);
  }
  throw std::runtime_error(
      "apply_Q: aliasing tail with growth order N > 0 needs a rule majorant; "
      "cutoff too small for the requested tolerance");
}

void pruneZeros(CoeffMap& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second == Complex(0.0, 0.0))
      it = m.erase(it);
    else
      ++it;
  }
}

SpectralFunction etaSpectral(const QuasiInterpScheme& scheme, const FreqIndex& levels,
                             const SpectralFunction& f) {
  SpectralFunction g = f;
  for (int axis = 0; axis < f.dim; ++axis) {
    int j = levels[axis];
    SpectralFunction hi = apply_Q(scheme, j, axis, g);
    // Q_{-1} = 0: at level 0 the difference degenerates to Q_0 itself
    g = (j == 0) ? std::move(hi) : subtract(hi, apply_Q(scheme, j - 1, axis, g));
  }
  return g;
}
}  // namespace

SpectralFunction apply_Q(const QuasiInterpScheme& scheme, int level, int axis,
                         const SpectralFunction& f) {
  if (axis < 0 || axis >= f.dim) throw std::invalid_argument("apply_Q: axis out of range");
  if (level < 0) throw std::invalid_argument("apply_Q: level must be >= 0");
  SpectralFunction out;
  out.dim = f.dim;
  out.tailA1 = propagateTail(scheme, level, f);
  for (const auto& [k, c] : f.coeffs) {
    long nu = k[axis];
    Complex w = scheme.phiTilde.symbol(level, nu);
    if (w == Complex(0.0, 0.0)) continue;
    long ell = reduceToD(nu, level);
    Complex p = scheme.phi.symbol(level, ell);
    if (p == Complex(0.0, 0.0)) continue;
    FreqIndex kk = k;
    kk[axis] = static_cast<int>(ell);
    out.coeffs[kk] += c * p * w;
  }
  pruneZeros(out.coeffs);
  return out;
}

SpectralFunction apply_Q_direct(const QuasiInterpScheme& scheme, int level, int axis,
                                const SpectralFunction& f) {
  if (axis < 0 || axis >= f.dim) throw std::invalid_argument("apply_Q_direct: axis out of range");
  if (level < 0) throw std::invalid_argument("apply_Q_direct: level must be >= 0");

  // group the support into univariate slices over the chosen axis
  std::map<FreqIndex, std::vector<std::pair<long, Complex>>> slices;
  for (const auto& [k, c] : f.coeffs) {
    FreqIndex rest = k;
    rest.erase(rest.begin() + axis);
    slices[rest].emplace_back(k[axis], c);
  }

  long m = 1L << level;
  double nodeStep = (level == 0) ? 0.0 : kPi / std::exp2(level - 1);

  SpectralFunction out;
  out.dim = f.dim;
  out.tailA1 = propagateTail(scheme, level, f);
  for (const auto& [rest, slice] : slices) {
    // v_k = (f_slice ∗ φ̃_j)(x_k^j)
    std::vector<Complex> v(static_cast<std::size_t>(m));
    std::size_t vi = 0;
    for (long k = dLower(level); k < dUpper(level); ++k, ++vi) {
      double node = nodeStep * static_cast<double>(k);
      Complex acc = 0.0;
      for (const auto& [nu, c] : slice) {
        double arg = static_cast<double>(nu) * node;
        acc += c * scheme.phiTilde.symbol(level, nu) * Complex(std::cos(arg), std::sin(arg));
      }
      v[vi] = acc;
    }
    // coefficient at ℓ: φ̂_j(ℓ) · 2^{-j} Σ_k v_k e^{-iℓ x_k^j}
    for (long ell = dLower(level); ell < dUpper(level); ++ell) {
      Complex acc = 0.0;
      vi = 0;
      for (long k = dLower(level); k < dUpper(level); ++k, ++vi) {
        double arg = -static_cast<double>(ell) * nodeStep * static_cast<double>(k);
        acc += v[vi] * Complex(std::cos(arg), std::sin(arg));
      }
      Complex coef = scheme.phi.symbol(level, ell) * acc / static_cast<double>(m);
      if (coef == Complex(0.0, 0.0)) continue;
      FreqIndex kk = rest;
      kk.insert(kk.begin() + axis, static_cast<int>(ell));
      out.coeffs[kk] += coef;
    }
  }
  return out;
}

TrigPolynomial apply_eta(const QuasiInterpScheme& scheme, const FreqIndex& levels,
                         const SpectralFunction& f) {
  checkDim(f.dim, levels, "apply_eta");
  for (int v : levels)
    if (v < 0) throw std::invalid_argument("apply_eta: levels must be >= 0");
  SpectralFunction g = etaSpectral(scheme, levels, f);
  TrigPolynomial out;
  out.dim = f.dim;
  out.degrees = levels;
  out.coeffs = std::move(g.coeffs);
  return out;
}

TrigPolynomial apply_eta_signed(const QuasiInterpScheme& scheme, const FreqIndex& levels,
                                const SpectralFunction& f) {
  checkDim(f.dim, levels, "apply_eta_signed");
  int d = f.dim;
  SpectralFunction acc;
  acc.dim = d;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    bool dead = false;
    int signBits = 0;
    for (int i = 0; i < d && !dead; ++i)
      if (mask & (1u << i)) {
        ++signBits;
        if (levels[i] == 0) dead = true;  // Q_{-1} = 0 kills the term
      }
    if (dead) continue;
    SpectralFunction term = f;
    for (int i = 0; i < d; ++i) {
      int j = levels[i] - ((mask & (1u << i)) ? 1 : 0);
      term = apply_Q(scheme, j, i, term);
    }
    acc = (signBits % 2 == 0) ? add(acc, term) : subtract(acc, term);
  }
  TrigPolynomial out;
  out.dim = d;
  out.degrees = levels;
  out.coeffs = std::move(acc.coeffs);
  return out;
}

SpectralFunction apply_P(const QuasiInterpScheme& scheme, const SparseIndexSet& gamma,
                         const SpectralFunction& f) {
  if (gamma.dim != f.dim) throw std::invalid_argument("apply_P: dimension mismatch");
  SpectralFunction zero;
  zero.dim = f.dim;
  if (gamma.members.empty()) return zero;

  std::vector<SpectralFunction> terms;
  terms.reserve(gamma.members.size());
  for (const auto& j : gamma.members) terms.push_back(etaSpectral(scheme, j, f));

  // pairwise tree reduction keeps the sum deterministic and parallel-safe;
  // add() accumulates the per-term tail budgets
  while (terms.size() > 1) {
    std::vector<SpectralFunction> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2)
      next.push_back(add(terms[i], terms[i + 1]));
    if (terms.size() % 2 == 1) next.push_back(std::move(terms.back()));
    terms = std::move(next);
  }
  return std::move(terms[0]);
}

}  // namespace sgw
