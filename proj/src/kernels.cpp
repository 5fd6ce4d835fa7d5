#include "sgw/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sgw {

namespace {
constexpr double kPi = std::numbers::pi;

KernelFamily dirichlet() {
  KernelFamily f;
  f.name = "dirichlet";
  f.kind = KernelKind::Polynomial;
  f.symbol = [](int j, long ell) -> Complex { return inD(ell, j) ? 1.0 : 0.0; };
  f.supBound = 1.0;
  return f;
}

double cos2Arg(int j, long ell) { return kPi * static_cast<double>(ell) / std::exp2(j + 1); }
}  // namespace

double sinc(double x) {
  double ax = std::fabs(x);
  if (ax < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double invSinc(double x) {
  double ax = std::fabs(x);
  if (ax < 1e-4) {
    double x2 = x * x;
    return 1.0 + x2 / 6.0 + 7.0 * x2 * x2 / 360.0;
  }
  return x / std::sin(x);
}

QuasiInterpScheme make_lagrange() {
  QuasiInterpScheme s;
  s.name = "lagrange";
  s.phi = dirichlet();
  s.phiTilde.name = "delta";
  s.phiTilde.kind = KernelKind::Distribution;
  s.phiTilde.symbol = [](int, long) -> Complex { return 1.0; };
  s.phiTilde.tailExponent = 0.0;
  s.phiTilde.tailConst = 1.0;
  s.phiTilde.supBound = 1.0;
  s.N = 0.0;
  s.s = kInfOrder;
  return s;
}

QuasiInterpScheme make_averaged() {
  QuasiInterpScheme s;
  s.name = "averaged";
  s.phi = dirichlet();
  s.phiTilde.name = "cos2_average";
  s.phiTilde.kind = KernelKind::Distribution;
  s.phiTilde.symbol = [](int j, long ell) -> Complex {
    double c = std::cos(cos2Arg(j, ell));
    return c * c;
  };
  s.phiTilde.tailExponent = 0.0;
  s.phiTilde.tailConst = 1.0;
  s.phiTilde.supBound = 1.0;
  s.N = 0.0;
  s.s = 2.0;
  return s;
}

QuasiInterpScheme make_averaged_corrected() {
  QuasiInterpScheme s = make_averaged();
  s.name = "averaged_corrected";
  s.phi.name = "dirichlet_cos2_corrected";
  s.phi.symbol = [](int j, long ell) -> Complex {
    if (!inD(ell, j)) return 0.0;
    double c = std::cos(cos2Arg(j, ell));
    return 1.0 / (c * c);
  };
  // |φ̂| peaks at ℓ = -2^{j-1} where the argument is -π/4.
  s.phi.supBound = 2.0;
  s.s = kInfOrder;
  return s;
}

QuasiInterpScheme make_derivative(double a, double b) {
  QuasiInterpScheme s;
  std::ostringstream nm;
  nm << "derivative(" << a << "," << b << ")";
  s.name = nm.str();
  s.phi = dirichlet();
  s.phiTilde.name = "delta_derivative_jet";
  s.phiTilde.kind = KernelKind::Distribution;
  s.phiTilde.symbol = [a, b](int j, long ell) -> Complex {
    double u = static_cast<double>(ell) * std::exp2(-j);
    // 1 + a(iℓ)2^{-j} + b(iℓ)²2^{-2j}
    return Complex(1.0 - b * u * u, a * u);
  };
  s.N = (b != 0.0) ? 2.0 : (a != 0.0 ? 1.0 : 0.0);
  // s = 2 for a = 0, b ≠ 0 is assigned by the quadratic-residual analogy.
  s.s = (a != 0.0) ? 1.0 : (b != 0.0 ? 2.0 : kInfOrder);
  s.phiTilde.tailExponent = s.N;
  s.phiTilde.tailConst = 1.0 + std::fabs(a) + std::fabs(b);
  s.phiTilde.supBound = (s.N > 0.0) ? kInfOrder : 1.0;
  return s;
}

QuasiInterpScheme make_kantorovich(double sigma) {
  if (sigma < 1.0) throw std::invalid_argument("kantorovich: sigma must be >= 1");
  QuasiInterpScheme s;
  std::ostringstream nm;
  nm << "kantorovich(" << sigma << ")";
  s.name = nm.str();
  s.phi = dirichlet();
  s.phiTilde.name = "box_average";
  s.phiTilde.kind = KernelKind::Distribution;
  s.phiTilde.symbol = [sigma](int j, long ell) -> Complex {
    return sinc(kPi * std::exp2(-j - sigma) * static_cast<double>(ell));
  };
  s.N = 0.0;
  s.s = 2.0;
  s.sigma = sigma;
  s.phiTilde.tailExponent = -1.0;
  s.phiTilde.tailConst = std::exp2(sigma) / kPi;
  s.phiTilde.supBound = 1.0;
  return s;
}

QuasiInterpScheme make_kantorovich_corrected(double sigma) {
  QuasiInterpScheme s = make_kantorovich(sigma);
  std::ostringstream nm;
  nm << "kantorovich_corrected(" << sigma << ")";
  s.name = nm.str();
  s.phi.name = "dirichlet_sinc_corrected";
  s.phi.symbol = [sigma](int j, long ell) -> Complex {
    if (!inD(ell, j)) return 0.0;
    return invSinc(kPi * std::exp2(-j - sigma) * static_cast<double>(ell));
  };
  double xmax = kPi * std::exp2(-sigma - 1.0);  // attained at ℓ = -2^{j-1}
  s.phi.supBound = invSinc(xmax);
  s.s = kInfOrder;
  return s;
}

QuasiInterpScheme builtin_scheme(const std::string& name) {
  auto paren = name.find('(');
  std::string head = name.substr(0, paren);
  std::vector<double> args;
  if (paren != std::string::npos) {
    if (name.back() != ')') throw std::invalid_argument("builtin_scheme: malformed '" + name + "'");
    std::string inner = name.substr(paren + 1, name.size() - paren - 2);
    std::istringstream in(inner);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        args.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::invalid_argument("builtin_scheme: bad parameter in '" + name + "'");
      }
    }
  }
  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw std::invalid_argument("builtin_scheme: '" + head + "' expects " + std::to_string(n) +
                                  " parameter(s)");
  };
  if (head == "lagrange") {
    want(0);
    return make_lagrange();
  }
  if (head == "averaged") {
    want(0);
    return make_averaged();
  }
  if (head == "averaged_corrected") {
    want(0);
    return make_averaged_corrected();
  }
  if (head == "derivative") {
    want(2);
    return make_derivative(args[0], args[1]);
  }
  if (head == "kantorovich") {
    want(1);
    return make_kantorovich(args[0]);
  }
  if (head == "kantorovich_corrected") {
    want(1);
    return make_kantorovich_corrected(args[0]);
  }
  throw std::invalid_argument("builtin_scheme: unknown scheme '" + name + "'");
}

std::vector<std::string> builtin_scheme_names() {
  return {"lagrange",        "averaged",       "averaged_corrected",
          "derivative(a,b)", "kantorovich(s)", "kantorovich_corrected(s)"};
}

double check_growth(const KernelFamily& fam, int jmax, double N) {
  if (N < 0.0) throw std::invalid_argument("check_growth: N must be >= 0");
  double best = 0.0;
  long probe = 1L << (jmax + 4);
  for (int j = 0; j <= jmax; ++j) {
    for (long ell = -probe; ell <= probe; ++ell) {
      double denom = 1.0;
      if (ell != 0) denom += std::pow(std::fabs(static_cast<double>(ell)) * std::exp2(-j), N);
      best = std::max(best, std::abs(fam.symbol(j, ell)) / denom);
    }
  }
  return best;
}

double check_uniform(const KernelFamily& fam, int jmax) {
  if (fam.kind != KernelKind::Polynomial)
    throw std::invalid_argument("check_uniform: polynomial-kind family required");
  double best = 0.0;
  for (int j = 0; j <= jmax; ++j)
    for (long ell = dLower(j); ell < dUpper(j); ++ell)
      best = std::max(best, std::abs(fam.symbol(j, ell)));
  return best;
}

double check_compatibility(const QuasiInterpScheme& scheme, int jmax, double s) {
  if (s <= 0.0) throw std::invalid_argument("check_compatibility: s must be > 0");
  double best = 0.0;
  for (int j = 0; j <= jmax; ++j) {
    Complex origin = 1.0 - scheme.phi.symbol(j, 0) * scheme.phiTilde.symbol(j, 0);
    if (std::abs(origin) > 1e-12)
      throw std::runtime_error("check_compatibility: scheme '" + scheme.name +
                               "' violates the condition at the origin");
    for (long ell = dLower(j); ell < dUpper(j); ++ell) {
      if (ell == 0) continue;
      Complex r = 1.0 - scheme.phi.symbol(j, ell) * scheme.phiTilde.symbol(j, ell);
      // residuals at rounding level are exact cancellations; dividing them
      // by u^s would amplify noise into a spurious constant
      if (std::abs(r) <= 1e-14) continue;
      double u = std::fabs(static_cast<double>(ell)) * std::exp2(-j);
      best = std::max(best, std::abs(r) / std::pow(u, s));
    }
  }
  return best;
}

AmalgamResult amalgam_norm(const KernelFamily& fam, double p, int j, long muMax) {
  if (p < 1.0) throw std::invalid_argument("amalgam_norm: p must be >= 1");
  AmalgamResult out;
  long m = 1L << j;
  if (fam.kind == KernelKind::Polynomial) {
    // compactly supported symbol: only μ = 0 contributes
    for (long ell = dLower(j); ell < dUpper(j); ++ell)
      out.value = std::max(out.value, std::abs(fam.symbol(j, ell)));
    return out;
  }
  if (std::isinf(p)) {
    for (long ell = dLower(j); ell < dUpper(j); ++ell)
      for (long mu = -muMax; mu <= muMax; ++mu)
        out.value = std::max(out.value, std::abs(fam.symbol(j, ell + m * mu)));
    if (fam.tailExponent < 0.0)
      out.tail = fam.tailConst * std::pow(static_cast<double>(muMax), fam.tailExponent);
    else if (fam.tailExponent == 0.0)
      out.tail = fam.tailConst;
    else
      out.divergent = true;
    return out;
  }
  // partial sums are Cauchy only when the envelope exponent satisfies tp < -1
  if (fam.tailExponent * p >= -1.0) {
    out.divergent = true;
    return out;
  }
  double best = 0.0;
  for (long ell = dLower(j); ell < dUpper(j); ++ell) {
    double acc = 0.0;
    for (long mu = -muMax; mu <= muMax; ++mu)
      acc += std::pow(std::abs(fam.symbol(j, ell + m * mu)), p);
    best = std::max(best, acc);
  }
  out.value = std::pow(best, 1.0 / p);
  double tp = fam.tailExponent * p;
  double tailPow =
      2.0 * std::pow(fam.tailConst, p) * std::pow(muMax - 0.5, tp + 1.0) / (-tp - 1.0);
  out.tail = std::pow(tailPow, 1.0 / p);
  return out;
}

bool amalgam_finite(const KernelFamily& fam, double p) {
  if (fam.kind == KernelKind::Polynomial) return true;
  if (std::isinf(p)) return fam.tailExponent <= 0.0 && !std::isinf(fam.supBound);
  return fam.tailExponent * p < -1.0;
}

}  // namespace sgw
