#include "sgw/rates.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "sgw/quasi_interp.hpp"
#include "sgw/rng.hpp"

namespace sgw {

namespace {
std::string ineq(const char* text) { return std::string("rate hypothesis violated: ") + text; }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}
}  // namespace

void validate_rate_spec(const RateSpec& spec, int d) {
  if (d < 1) throw std::invalid_argument("rate spec: d must be >= 1");
  if (!(spec.p >= 1.0 && spec.q >= 1.0))
    throw std::invalid_argument("rate spec: p, q must be in [1, inf]");
  if (!(spec.T < 1.0) && spec.T != kFullBoxT)
    throw std::invalid_argument("rate spec: T must be < 1");
  double s = sigma_pq(spec.p, spec.q);
  if (spec.target == RateTarget::Isotropic) {
    if (!(spec.alpha > s)) throw std::invalid_argument(ineq("alpha > sigma_pq"));
    if (!(spec.gamma >= 0.0)) throw std::invalid_argument(ineq("gamma >= 0"));
    if (!(spec.gamma - spec.beta < spec.alpha - s))
      throw std::invalid_argument(ineq("gamma - beta < alpha - sigma_pq"));
  } else {
    if (!(spec.gamma > 0.0)) throw std::invalid_argument(ineq("gamma > 0"));
    if (!(spec.gamma - spec.beta + s < spec.alpha))
      throw std::invalid_argument(ineq("gamma - beta + sigma_pq < alpha"));
    if (!(spec.gamma + s <= spec.alpha))
      throw std::invalid_argument(ineq("gamma + sigma_pq <= alpha"));
  }
}

void validate_scheme_for_rates(const QuasiInterpScheme& scheme, const RateSpec& spec) {
  double smax = std::max(spec.alpha + spec.beta, spec.alpha);
  if (!(scheme.s > smax)) {
    std::ostringstream msg;
    msg << "scheme '" << scheme.name << "' violates s > max(alpha+beta, alpha) (s=" << scheme.s
        << ", need > " << smax << ")";
    throw std::invalid_argument(msg.str());
  }
  double pp = conjugate_exponent(spec.p);
  double smin = std::min(spec.alpha + spec.beta, spec.alpha);
  bool condI = smin > scheme.N + (std::isinf(pp) ? 0.0 : 1.0 / pp);
  bool condII = scheme.N == 0.0 && amalgam_finite(scheme.phiTilde, conjugate_exponent(spec.q));
  if (!condI && !condII) {
    std::ostringstream msg;
    msg << "scheme '" << scheme.name
        << "' satisfies neither min(alpha+beta, alpha) > N + 1/p' nor the q'-amalgam condition";
    throw std::invalid_argument(msg.str());
  }
}

TheoreticalRate theoretical_rate(const RateSpec& spec, int d) {
  validate_rate_spec(spec, d);
  double s = sigma_pq(spec.p, spec.q);
  double base = spec.alpha + spec.beta - spec.gamma - s;
  TheoreticalRate out;
  if (spec.target == RateTarget::Isotropic) {
    double threshold = (spec.gamma - spec.beta) / (spec.alpha - s);
    out.boundaryRegime = spec.T >= threshold - 1e-12;
    if (out.boundaryRegime) {
      out.exponent =
          base - ((spec.alpha - s) * spec.T - (spec.gamma - spec.beta)) * (d - 1) / (d - spec.T);
      out.logPower = (d - 1) * (1.0 - (std::isinf(spec.p) ? 0.0 : 1.0 / spec.p));
    } else {
      out.exponent = base;
      out.logPower = 0.0;
    }
  } else {
    double denom = spec.alpha - spec.gamma - s;
    double threshold = -spec.beta / denom;
    out.boundaryRegime = spec.T >= threshold - 1e-12;
    if (out.boundaryRegime) {
      out.exponent = base - (denom * spec.T + spec.beta) * (d - 1) / (d - spec.T);
      out.logPower = (d - 1) * s;
    } else {
      out.exponent = base;
      out.logPower = 0.0;
    }
  }
  return out;
}

NormParams target_norm(const RateSpec& spec) {
  return spec.target == RateTarget::Isotropic ? iso_norm(spec.gamma, spec.q)
                                              : mixed_norm(spec.gamma, spec.q);
}

SpectralFunction make_korobov_function(int d, double a, double b, int cutoff, std::uint64_t seed,
                                       double p, double alpha, double beta) {
  if (std::isinf(p)) {
    if (!(alpha - a + std::max(beta - b, 0.0) <= 0.0))
      throw std::invalid_argument(
          "korobov membership violated: need alpha - a + max(beta-b,0) <= 0 for p = inf");
  } else {
    double lhs = p * (a - alpha - std::max(beta - b, 0.0));
    if (!(lhs > 1.0)) {
      std::ostringstream msg;
      msg << "korobov membership violated: need p(a - alpha - max(beta-b,0)) > 1, got " << lhs;
      throw std::invalid_argument(msg.str());
    }
  }
  return make_from_rule(d, korobov_rule(d, a, b, seed), cutoff);
}

BlockLacunary make_block_lacunary(int d, double alpha, double beta, double rho, int kmax,
                                  double p, std::uint64_t seed, int blockFreqs) {
  if (!std::isinf(p) && !(rho * p > d)) {
    std::ostringstream msg;
    msg << "block-lacunary membership violated: need rho*p > d (shells carry ~m^{d-1} blocks), got "
        << rho * p << " vs d = " << d;
    throw std::invalid_argument(msg.str());
  }
  if (rho < 0.0) throw std::invalid_argument("block-lacunary: rho must be >= 0");
  if (blockFreqs < 1) throw std::invalid_argument("block-lacunary: blockFreqs must be >= 1");

  BlockLacunary out;
  CoeffMap coeffs;
  double normAcc = 0.0;
  FreqIndex k(d, 0);
  while (true) {
    if (norm1(k) <= kmax) {
      rng::Stream stream(rng::hashIndex(seed, k));
      long blockSize = 1;
      for (int i = 0; i < d; ++i) blockSize *= (k[i] == 0) ? 1 : (1L << k[i]);
      int m = static_cast<int>(std::min<long>(blockFreqs, blockSize));
      // m distinct frequencies with |coef| = m^{-1/p} keep ‖u_k‖_{A_p} = 1
      double mag = std::isinf(p) ? 1.0 : std::pow(m, -1.0 / p);
      double c = std::exp2(-(alpha * norm1(k) + beta * normInf(k))) *
                 std::pow(1.0 + norm1(k), -rho);
      std::set<FreqIndex> picked;
      while (static_cast<int>(picked.size()) < m) {
        FreqIndex nu(d);
        for (int i = 0; i < d; ++i) {
          if (k[i] == 0) {
            nu[i] = 0;
          } else {
            long lo = 1L << (k[i] - 1);
            long freq = lo + stream.nextInt(0, static_cast<int>(lo) - 1);
            nu[i] = static_cast<int>(stream.nextInt(0, 1) ? freq : -freq);
          }
        }
        if (picked.insert(nu).second) coeffs[nu] = c * mag * stream.nextPhase();
      }
      normAcc += std::isinf(p) ? 0.0 : std::pow(1.0 + norm1(k), -rho * p);
    }
    int axis = 0;
    while (axis < d && ++k[axis] > kmax) k[axis++] = 0;
    if (axis == d) break;
  }
  out.f = make_finite(d, std::move(coeffs));
  out.classNorm = std::isinf(p) ? 1.0 : std::pow(normAcc, 1.0 / p);
  return out;
}

double block_lacunary_target_tail(int d, double alpha, double beta, double rho, int kmax,
                                  const RateSpec& spec) {
  // per-block target-norm mass: c_k · (target weight of the block), with
  //   isotropic target:  weight ≤ 2^{γ|k|_∞}
  //   mixed target:      weight ≤ 2^{γ|k|_1}
  // summed over shells |k|_1 = m > kmax with exact shell counts C(m+d-1, d-1).
  double acc = 0.0;
  double shellDecay;  // per-shell sup of log2(c_k · weight) grows like -c1·m
  if (spec.target == RateTarget::Isotropic) {
    double ge = spec.gamma - spec.beta;
    shellDecay = alpha - std::max(ge, ge / d);
  } else {
    shellDecay = alpha - spec.gamma - std::max(-beta, -beta / static_cast<double>(d));
  }
  if (!(shellDecay > 0.0))
    throw std::invalid_argument("block-lacunary tail: target weight outruns the block decay");
  int horizon = kmax + 300;
  for (int m = kmax + 1; m <= horizon; ++m)
    acc += binomial(m + d - 1, d - 1) * std::pow(1.0 + m, -rho) * std::exp2(-shellDecay * m);
  // crude geometric remainder for the shells beyond the horizon
  double q = std::exp2(-shellDecay) * std::pow(static_cast<double>(horizon + 2) / (horizon + 1),
                                               static_cast<double>(d - 1));
  if (q < 1.0)
    acc += binomial(horizon + d, d - 1) * std::pow(2.0 + horizon, -rho) *
           std::exp2(-shellDecay * (horizon + 1)) / (1.0 - q);
  return acc;
}

FitResult fit_decay(const std::vector<int>& levels, const std::vector<double>& errors,
                    double logPower) {
  if (levels.size() != errors.size() || levels.size() < 3)
    throw std::invalid_argument("fit_decay: too few points");
  double sn = 0.0, snn = 0.0, sy = 0.0, sny = 0.0;
  double m = static_cast<double>(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(errors[i] > 0.0)) throw std::invalid_argument("fit_decay: errors must be positive");
    double n = static_cast<double>(levels[i]);
    double y = std::log2(errors[i]) - logPower * std::log2(n);
    sn += n;
    snn += n * n;
    sy += y;
    sny += n * y;
  }
  double slope = (m * sny - sn * sy) / (m * snn - sn * sn);
  FitResult out;
  out.exponent = -slope;
  out.logPower = logPower;
  out.intercept = (sy - slope * sn) / m;
  out.usedLogRegressor = logPower != 0.0;
  return out;
}

RateReport run_experiment(const QuasiInterpScheme& scheme, const RateSpec& spec, int d,
                          const SpectralFunction& f, double functionTargetTail,
                          const SetBuilder& sets, const std::string& setDescriptor,
                          const std::vector<int>& levels, const ExperimentOptions& opts) {
  validate_rate_spec(spec, d);
  validate_scheme_for_rates(scheme, spec);
  if (levels.size() < 2 || !std::is_sorted(levels.begin(), levels.end()))
    throw std::invalid_argument("run_experiment: levels must be increasing");

  RateReport rep;
  rep.scheme = scheme.name;
  rep.setDescriptor = setDescriptor;
  rep.dim = d;
  rep.spec = spec;
  rep.tolerance = opts.tolerance;
  rep.seed = opts.seed;
  rep.theory = opts.theoryOverride ? *opts.theoryOverride : theoretical_rate(spec, d);

  NormParams target = target_norm(spec);
  auto runLevel = [&](int n) -> RatePoint {
    SparseIndexSet gamma = sets(n);
    SpectralFunction pf = apply_P(scheme, gamma, f);
    NormResult e = wiener_norm(subtract(f, pf), target);
    RatePoint pt;
    pt.level = n;
    pt.error = e.value;
    pt.budget = functionTargetTail + pf.tailA1 + e.tail;
    pt.exact = e.value == 0.0;
    return pt;
  };

  std::vector<RatePoint> pts(levels.size());
  if (opts.threads > 1) {
    std::vector<std::future<RatePoint>> futs;
    futs.reserve(levels.size());
    for (int n : levels) futs.push_back(std::async(std::launch::async, runLevel, n));
    for (std::size_t i = 0; i < futs.size(); ++i) pts[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < levels.size(); ++i) pts[i] = runLevel(levels[i]);
  }

  std::vector<int> fitLevels;
  std::vector<double> fitErrors;
  bool budgetOk = true;
  for (auto& pt : pts) {
    double omega = std::exp2(-rep.theory.exponent * pt.level) *
                   std::pow(static_cast<double>(pt.level), rep.theory.logPower);
    pt.omegaRatio = pt.error / omega;
    if (!pt.exact) {
      fitLevels.push_back(pt.level);
      fitErrors.push_back(pt.error);
      if (pt.budget > 1e-3 * pt.error) budgetOk = false;
    }
    rep.points.push_back(pt);
  }
  if (!budgetOk)
    throw std::runtime_error("run_experiment: truncation budget exceeds 1e-3 x measured error");

  if (fitLevels.size() >= 3) {
    rep.fit = fit_decay(fitLevels, fitErrors, rep.theory.logPower);
    rep.pass = std::fabs(rep.fit.exponent - rep.theory.exponent) <= opts.tolerance;
  } else {
    rep.pass = true;
    rep.note = "set resolves the function exactly on most levels; no slope fitted";
  }
  if (fitLevels.size() < levels.size())
    rep.note += (rep.note.empty() ? "" : "; ") + std::string("exact reproduction on some levels");
  return rep;
}

RateReport average_rate_reports(const std::vector<RateReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("average_rate_reports: no reports");
  if (reports.size() == 1) return reports.front();
  RateReport out = reports.front();
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    double logAcc = 0.0;
    double budget = 0.0;
    bool exact = true;
    for (const auto& rep : reports) {
      const RatePoint& pt = rep.points.at(i);
      if (pt.level != out.points[i].level)
        throw std::invalid_argument("average_rate_reports: mismatched level grids");
      exact = exact && pt.exact;
      budget = std::max(budget, pt.budget);
      if (!pt.exact) logAcc += std::log2(pt.error);
    }
    out.points[i].exact = exact;
    out.points[i].budget = budget;
    out.points[i].error = exact ? 0.0 : std::exp2(logAcc / static_cast<double>(reports.size()));
    double omega = std::exp2(-out.theory.exponent * out.points[i].level) *
                   std::pow(static_cast<double>(out.points[i].level), out.theory.logPower);
    out.points[i].omegaRatio = out.points[i].error / omega;
  }
  std::vector<int> ls;
  std::vector<double> es;
  for (const auto& pt : out.points)
    if (!pt.exact) {
      ls.push_back(pt.level);
      es.push_back(pt.error);
    }
  if (ls.size() >= 3) {
    out.fit = fit_decay(ls, es, out.theory.logPower);
    out.pass = std::fabs(out.fit.exponent - out.theory.exponent) <= out.tolerance;
  }
  out.note += (out.note.empty() ? "" : "; ") + std::string("geometric mean of ") +
              std::to_string(reports.size()) + " replicates";
  return out;
}

EnvelopeReport sharpness_envelope(const QuasiInterpScheme& scheme, const RateSpec& spec, int d,
                                  const std::vector<int>& levels, int trials, int n0,
                                  std::uint64_t seed, double tolerance) {
  validate_rate_spec(spec, d);
  validate_scheme_for_rates(scheme, spec);
  double s = sigma_pq(spec.p, spec.q);
  (void)s;
  if (spec.target == RateTarget::Isotropic) {
    double hi = (spec.gamma - spec.beta) / spec.alpha;
    if (!(spec.T > 0.0 && spec.T < hi))
      throw std::invalid_argument("sharpness regime violated: need 0 < T < (gamma-beta)/alpha");
  } else {
    double hi = -spec.beta / (spec.alpha - spec.gamma);
    if (!(spec.T > 0.0 && spec.T < hi))
      throw std::invalid_argument("sharpness regime violated: need 0 < T < -beta/(alpha-gamma)");
  }

  EnvelopeReport rep;
  rep.spec = spec;
  rep.dim = d;
  rep.scheme = scheme.name;
  rep.targetExponent = spec.alpha + spec.beta - spec.gamma;
  rep.tolerance = tolerance;
  rep.n0 = n0;

  // the witness error norm is measured with q := p, matching the sup over
  // the unit ball of A_p^{α,β}
  NormParams witnessNorm = spec.target == RateTarget::Isotropic
                               ? iso_norm(spec.gamma, spec.p)
                               : mixed_norm(spec.gamma, spec.p);

  rng::Stream stream(seed);
  for (int n : levels) {
    int neff = std::max(0, n - n0);
    SparseIndexSet gamma = build_delta(neff, spec.T, d);
    long top = 1L << n;
    std::vector<long> witnesses = {0, 1, top};
    for (int m = 1; m <= n; ++m) {
      witnesses.push_back(1L << (m - 1));
      witnesses.push_back((1L << m) - 1);
      witnesses.push_back(1L << m);
    }
    for (int t = 0; t < trials; ++t)
      witnesses.push_back(static_cast<long>(stream.next() % static_cast<std::uint64_t>(top + 1)));
    std::sort(witnesses.begin(), witnesses.end());
    witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());

    EnvelopePoint pt;
    pt.level = n;
    for (long w : witnesses) {
      if (w < 0 || w > top) continue;
      FreqIndex k(d, 0);
      k[0] = static_cast<int>(w);
      CoeffMap cm;
      cm[k] = std::pow(1.0 + w, -(spec.alpha + spec.beta));  // unit A_p^{α,β} witness
      SpectralFunction fw = make_finite(d, std::move(cm));
      SpectralFunction pf = apply_P(scheme, gamma, fw);
      double err = wiener_norm(subtract(fw, pf), witnessNorm).value;
      if (err > pt.worstError) {
        pt.worstError = err;
        pt.worstFrequency = w;
      }
    }
    rep.points.push_back(pt);
  }

  std::vector<int> ls;
  std::vector<double> es;
  for (const auto& pt : rep.points) {
    ls.push_back(pt.level);
    es.push_back(pt.worstError);
  }
  rep.fittedExponent = fit_decay(ls, es, 0.0).exponent;
  rep.pass = std::fabs(rep.fittedExponent - rep.targetExponent) <= tolerance;

  for (std::size_t i = 1; i < rep.points.size(); ++i) {
    double local = -(std::log2(rep.points[i].worstError) - std::log2(rep.points[i - 1].worstError)) /
                   (rep.points[i].level - rep.points[i - 1].level);
    if (std::fabs(local - rep.targetExponent) <= tolerance) {
      rep.stabilizationLevel = rep.points[i].level;
      break;
    }
  }
  return rep;
}

double general_gamma_bound(const SparseIndexSet& gamma, const RateSpec& spec, int kmax) {
  double s = sigma_pq(spec.p, spec.q);
  if (spec.target == RateTarget::Isotropic) {
    double t = spec.alpha - s;
    double r = spec.gamma - spec.beta;
    if (!(t > 0.0 && r < t))
      throw std::invalid_argument("general_gamma_bound: need alpha - sigma > 0 and gamma-beta < it");
    double pp = conjugate_exponent(spec.p);
    if (std::isinf(pp)) {
      ComplementSum cs = complement_sum(gamma, t, r, kmax);
      return cs.sup;
    }
    ComplementSum cs = complement_sum(gamma, pp * t, pp * r, kmax);
    return std::pow(cs.sum + cs.remainder, 1.0 / pp);
  }
  // mixed target
  if (spec.p <= spec.q) {
    double t = spec.alpha - spec.gamma;
    double r = -spec.beta;
    if (!(t > 0.0 && r < t))
      throw std::invalid_argument("general_gamma_bound: divergent mixed-form exponents");
    ComplementSum cs = complement_sum(gamma, t, r, kmax);
    return cs.sup;
  }
  double sigma = s;  // = 1/q - 1/p > 0 here
  double t = (spec.alpha - spec.gamma - sigma) / sigma;
  double r = -spec.beta / sigma;
  if (!(t > 0.0 && r < t))
    throw std::invalid_argument("general_gamma_bound: divergent mixed-form exponents");
  ComplementSum cs = complement_sum(gamma, t, r, kmax);
  return std::pow(cs.sum + cs.remainder, sigma);
}

}  // namespace sgw
