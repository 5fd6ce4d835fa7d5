#include "sgw/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sgw/rng.hpp"

namespace sgw {

namespace {
constexpr double kPi = std::numbers::pi;

void dropZeros(CoeffMap& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second == Complex(0.0, 0.0))
      it = m.erase(it);
    else
      ++it;
  }
}
}  // namespace

SpectralFunction make_finite(int dim, CoeffMap coeffs) {
  if (dim < 1) throw std::invalid_argument("make_finite: dim must be >= 1");
  for (const auto& [k, c] : coeffs) checkDim(dim, k, "make_finite");
  SpectralFunction f;
  f.dim = dim;
  f.coeffs = std::move(coeffs);
  dropZeros(f.coeffs);
  return f;
}

RuleInfo korobov_rule(int dim, double a, double b, std::uint64_t seed) {
  RuleInfo r;
  r.name = "korobov";
  r.a = a;
  r.b = b;
  r.seed = seed;
  r.eval = [a, b, seed](const FreqIndex& k) -> Complex {
    double mag = 1.0;
    for (int v : k) mag *= std::pow(1.0 + std::abs(v), -a);
    mag *= std::pow(1.0 + normInf(k), -b);
    return mag * rng::unimodular(seed, k);
  };
  // Π(1+|k_i|)^{-a} (1+|k|_∞)^{-b} ≤ Π(1+|k_i|)^e with e = -a + max(-b,0),
  // so the box-complement sum is bounded by (s_M + t_M)^d - s_M^d with
  // per-axis head s_M (exact finite sum) and integral tail t_M.
  r.weightedTail = [a, b, dim](int M, double extra) -> double {
    double e = -a + extra + std::max(-b, 0.0);
    if (e >= -1.0)
      throw std::runtime_error("korobov tail majorant diverges (axis exponent >= -1)");
    double head = 1.0;
    for (int m = 1; m <= M; ++m) head += 2.0 * std::pow(1.0 + m, e);
    double tail = 2.0 * std::pow(1.0 + M, e + 1.0) / (-e - 1.0);
    return std::pow(head + tail, dim) - std::pow(head, dim);
  };
  return r;
}

SpectralFunction make_from_rule(int dim, RuleInfo rule, int cutoff) {
  if (dim < 1) throw std::invalid_argument("make_from_rule: dim must be >= 1");
  if (cutoff < 0) throw std::invalid_argument("make_from_rule: cutoff must be >= 0");
  double boxPoints = std::pow(2.0 * cutoff + 1.0, dim);
  if (boxPoints > 2.0e7)
    throw std::invalid_argument("make_from_rule: cutoff box too large to materialize");

  SpectralFunction f;
  f.dim = dim;
  f.cutoff = cutoff;

  FreqIndex k(dim, -cutoff);
  while (true) {
    Complex c = rule.eval(k);
    if (c != Complex(0.0, 0.0)) f.coeffs[k] = c;
    int axis = 0;
    while (axis < dim && ++k[axis] > cutoff) k[axis++] = -cutoff;
    if (axis == dim) break;
  }

  f.rule = std::make_shared<const RuleInfo>(std::move(rule));
  f.tailA1 = f.rule->weightedTail(cutoff, 0.0);
  return f;
}

TrigPolynomial make_polynomial(int dim, FreqIndex degrees, CoeffMap coeffs) {
  if (dim < 1) throw std::invalid_argument("make_polynomial: dim must be >= 1");
  checkDim(dim, degrees, "make_polynomial");
  for (const auto& [k, c] : coeffs) {
    checkDim(dim, k, "make_polynomial");
    for (int i = 0; i < dim; ++i)
      if (!inD(k[i], degrees[i]))
        throw std::invalid_argument("make_polynomial: coefficient outside D-box");
  }
  TrigPolynomial t;
  t.dim = dim;
  t.degrees = std::move(degrees);
  t.coeffs = std::move(coeffs);
  dropZeros(t.coeffs);
  return t;
}

SpectralFunction to_spectral(const TrigPolynomial& t) { return make_finite(t.dim, t.coeffs); }

namespace {
Complex evalMap(const CoeffMap& coeffs, const std::vector<double>& x) {
  Complex acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    double dot = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) dot += k[i] * x[i];
    acc += c * Complex(std::cos(dot), std::sin(dot));
  }
  return acc;
}
}  // namespace

Complex evaluate(const SpectralFunction& f, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != f.dim)
    throw std::invalid_argument("evaluate: dimension mismatch");
  return evalMap(f.coeffs, x);
}

Complex evaluate(const TrigPolynomial& t, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != t.dim)
    throw std::invalid_argument("evaluate: dimension mismatch");
  return evalMap(t.coeffs, x);
}

TrigPolynomial dyadic_block(const SpectralFunction& f, const FreqIndex& levels) {
  checkDim(f.dim, levels, "dyadic_block");
  for (int v : levels)
    if (v < 0) throw std::invalid_argument("dyadic_block: levels must be >= 0");
  if (f.rule) {
    for (int v : levels)
      if ((1L << v) - 1 > f.cutoff)
        throw std::invalid_argument("dyadic_block: block outside the certified cutoff box");
  }
  TrigPolynomial out;
  out.dim = f.dim;
  out.degrees = levels;
  for (const auto& [k, c] : f.coeffs) {
    bool in = true;
    for (int i = 0; i < f.dim && in; ++i) in = inP(k[i], levels[i]);
    if (in) out.coeffs.emplace(k, c);
  }
  return out;
}

std::vector<Complex> sample_convolution(const SpectralFunction& f, const KernelFamily& tilde,
                                        int level) {
  if (f.dim != 1) throw std::invalid_argument("sample_convolution: univariate input required");
  long m = 1L << level;
  std::vector<Complex> values(static_cast<std::size_t>(m));
  long idx = 0;
  for (long k = dLower(level); k < dUpper(level); ++k, ++idx) {
    double node = (level == 0) ? 0.0 : kPi * static_cast<double>(k) / std::exp2(level - 1);
    Complex acc = 0.0;
    for (const auto& [kk, c] : f.coeffs) {
      double arg = kk[0] * node;
      acc += c * tilde.symbol(level, kk[0]) * Complex(std::cos(arg), std::sin(arg));
    }
    values[static_cast<std::size_t>(idx)] = acc;
  }
  return values;
}

SpectralFunction add(const SpectralFunction& f, const SpectralFunction& g) {
  if (f.dim != g.dim) throw std::invalid_argument("add: dimension mismatch");
  SpectralFunction out;
  out.dim = f.dim;
  out.coeffs = f.coeffs;
  for (const auto& [k, c] : g.coeffs) out.coeffs[k] += c;
  dropZeros(out.coeffs);
  out.tailA1 = f.tailA1 + g.tailA1;
  return out;
}

SpectralFunction subtract(const SpectralFunction& f, const SpectralFunction& g) {
  return add(f, scale(g, Complex(-1.0, 0.0)));
}

SpectralFunction scale(const SpectralFunction& f, Complex c) {
  SpectralFunction out;
  out.dim = f.dim;
  out.tailA1 = f.tailA1 * std::abs(c);
  out.cutoff = f.cutoff;
  out.rule = f.rule;
  if (c == Complex(0.0, 0.0)) return out;
  out.coeffs = f.coeffs;
  for (auto& [k, v] : out.coeffs) v *= c;
  return out;
}

double a1_norm(const SpectralFunction& f) {
  double acc = 0.0;
  for (const auto& [k, c] : f.coeffs) acc += std::abs(c);
  return acc;
}

double a1_distance(const SpectralFunction& f, const SpectralFunction& g) {
  return a1_norm(subtract(f, g));
}

}  // namespace sgw
