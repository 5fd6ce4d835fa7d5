#include "sgw/norms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sgw/quasi_interp.hpp"

namespace sgw {

NormParams iso_norm(double gamma, double q) {
  NormParams p;
  p.variant = WeightVariant::Isotropic;
  p.gamma = gamma;
  p.q = q;
  return p;
}

NormParams mixed_norm(double gamma, double q) {
  NormParams p;
  p.variant = WeightVariant::Mixed;
  p.gamma = gamma;
  p.q = q;
  return p;
}

NormParams hybrid_norm(double alpha, double beta, double q) {
  NormParams p;
  p.variant = WeightVariant::Hybrid;
  p.alpha = alpha;
  p.beta = beta;
  p.q = q;
  return p;
}

double sigma_pq(double p, double q) {
  double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  return std::max(0.0, iq - ip);
}

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

double weight(const FreqIndex& k, const NormParams& p) {
  switch (p.variant) {
    case WeightVariant::Isotropic:
      return std::pow(1.0 + normInf(k), p.gamma);
    case WeightVariant::Mixed: {
      double w = 1.0;
      for (int v : k) w *= std::pow(1.0 + std::abs(v), p.gamma);
      return w;
    }
    case WeightVariant::Hybrid: {
      double w = 1.0;
      for (int v : k) w *= std::pow(1.0 + std::abs(v), p.alpha);
      return w * std::pow(1.0 + normInf(k), p.beta);
    }
  }
  return 1.0;
}

namespace {
void checkQ(double q, const char* where) {
  if (!(q >= 1.0))
    throw std::invalid_argument(std::string(where) + ": q must be in [1, inf]");
}

// Per-axis exponent that dominates the weight: weight(k) ≤ Π (1+|k_i|)^extra.
double weightAxisExponent(const NormParams& p) {
  switch (p.variant) {
    case WeightVariant::Isotropic:
      return std::max(p.gamma, 0.0);
    case WeightVariant::Mixed:
      return std::max(p.gamma, 0.0);
    case WeightVariant::Hybrid:
      return std::max(p.alpha, 0.0) + std::max(p.beta, 0.0);
  }
  return 0.0;
}
}  // namespace

NormResult wiener_norm(const SpectralFunction& f, const NormParams& p) {
  checkQ(p.q, "wiener_norm");
  NormResult out;
  if (std::isinf(p.q)) {
    for (const auto& [k, c] : f.coeffs) out.value = std::max(out.value, weight(k, p) * std::abs(c));
  } else {
    double acc = 0.0;
    for (const auto& [k, c] : f.coeffs) acc += std::pow(weight(k, p) * std::abs(c), p.q);
    out.value = std::pow(acc, 1.0 / p.q);
  }
  if (f.rule) {
    try {
      out.tail = f.rule->weightedTail(f.cutoff, weightAxisExponent(p));
    } catch (const std::runtime_error&) {
      throw std::runtime_error("wiener_norm: certified divergence of the weighted tail");
    }
  } else if (f.tailA1 > 0.0) {
    // an unstructured budget can only be charged when the weight is ≤ 1
    if (weightAxisExponent(p) > 0.0)
      throw std::runtime_error("wiener_norm: positive weights need a rule majorant for the tail");
    out.tail = f.tailA1;
  }
  return out;
}

double block_norm(const SpectralFunction& f, double alpha, double beta, double q) {
  checkQ(q, "block_norm");
  if (!(alpha >= 0.0 && alpha + beta >= 0.0))
    throw std::invalid_argument("block_norm: needs alpha >= 0 and alpha+beta >= 0");
  if (f.tailA1 > 0.0)
    throw std::invalid_argument("block_norm: finite supports only");

  std::map<FreqIndex, double> perBlock;  // ‖δ_k f‖_{A_q}^q, or block max for q = inf
  for (const auto& [k, c] : f.coeffs) {
    FreqIndex lv = blockLevels(k);
    double m = std::abs(c);
    if (std::isinf(q)) {
      auto [it, fresh] = perBlock.try_emplace(lv, m);
      if (!fresh) it->second = std::max(it->second, m);
    } else {
      perBlock[lv] += std::pow(m, q);
    }
  }
  double acc = 0.0;
  for (const auto& [lv, v] : perBlock) {
    double w = std::exp2(alpha * norm1(lv) + beta * normInf(lv));
    if (std::isinf(q))
      acc = std::max(acc, w * v);
    else
      acc += std::pow(w, q) * v;
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

CharNormResult lp_char_norm(const SpectralFunction& f, const QuasiInterpScheme& scheme,
                            double alpha, double beta, double q, int jmax) {
  checkQ(q, "lp_char_norm");
  if (!(alpha > 0.0 && alpha + beta > 0.0))
    throw std::invalid_argument("lp_char_norm: needs alpha > 0 and alpha+beta > 0");
  double smax = std::max(alpha + beta, alpha);
  if (!(scheme.s > smax)) {
    std::ostringstream msg;
    msg << "lp_char_norm: scheme '" << scheme.name << "' violates s > max(alpha+beta, alpha) (s="
        << scheme.s << ", need > " << smax << ")";
    throw std::invalid_argument(msg.str());
  }
  double qp = conjugate_exponent(q);
  double smin = std::min(alpha + beta, alpha);
  bool condI = smin > scheme.N + (std::isinf(qp) ? 0.0 : 1.0 / qp);
  bool condII = scheme.N == 0.0 && amalgam_finite(scheme.phiTilde, qp);
  if (!condI && !condII) {
    std::ostringstream msg;
    msg << "lp_char_norm: scheme '" << scheme.name
        << "' satisfies neither min(alpha+beta, alpha) > N + 1/q' (=" << smin << " vs "
        << scheme.N + (std::isinf(qp) ? 0.0 : 1.0 / qp)
        << ") nor (N = 0 with a q'-finite amalgam norm)";
    throw std::invalid_argument(msg.str());
  }

  CharNormResult out;
  double acc = 0.0;
  double lastShell = 0.0;  // contribution of the |j|_∞ = jmax shell
  int d = f.dim;
  FreqIndex j(d, 0);
  while (true) {
    TrigPolynomial eta = apply_eta(scheme, j, f);
    double etaNorm = 0.0;
    if (std::isinf(q)) {
      for (const auto& [k, c] : eta.coeffs) etaNorm = std::max(etaNorm, std::abs(c));
    } else {
      for (const auto& [k, c] : eta.coeffs) etaNorm += std::pow(std::abs(c), q);
      etaNorm = std::pow(etaNorm, 1.0 / q);
    }
    double w = std::exp2(alpha * norm1(j) + beta * normInf(j));
    double contrib = std::isinf(q) ? w * etaNorm : std::pow(w * etaNorm, q);
    if (std::isinf(q))
      acc = std::max(acc, contrib);
    else
      acc += contrib;
    if (normInf(j) == jmax) lastShell = std::isinf(q) ? std::max(lastShell, contrib) : lastShell + contrib;
    int axis = 0;
    while (axis < d && ++j[axis] > jmax) j[axis++] = 0;
    if (axis == d) break;
  }
  out.value = std::isinf(q) ? acc : std::pow(acc, 1.0 / q);

  // Each shell beyond jmax decays at least like 2^{-(s - max(alpha+beta,alpha))}
  // per level in norm terms; report the geometric estimate.
  if (std::isinf(scheme.s)) {
    out.remainder = 0.0;
  } else {
    double decay = scheme.s - smax;
    double r = std::isinf(q) ? std::exp2(-decay) : std::exp2(-q * decay);
    double rem = lastShell * r / (1.0 - r);
    out.remainder = std::isinf(q) ? rem : std::pow(rem, 1.0 / q);
  }
  return out;
}

double bernstein_ratio(const TrigPolynomial& f, double alpha, double beta, double gamma,
                       double q) {
  if (!(std::min(alpha, alpha + beta - gamma) > 0.0))
    throw std::invalid_argument("bernstein_ratio: needs min(alpha, alpha+beta-gamma) > 0");
  SpectralFunction g = to_spectral(f);
  double num = wiener_norm(g, hybrid_norm(alpha, beta, q)).value;
  double den = std::exp2(alpha * norm1(f.degrees) + (beta - gamma) * normInf(f.degrees)) *
               wiener_norm(g, iso_norm(gamma, q)).value;
  if (den == 0.0) return 0.0;
  return num / den;
}

}  // namespace sgw
