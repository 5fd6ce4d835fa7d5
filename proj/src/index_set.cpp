#include "sgw/index_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sgw {

namespace {
constexpr double kMembershipEps = 1e-9;

// Enumerates {0..box}^d, keeping indices that satisfy `pred`.
template <typename Pred>
std::vector<FreqIndex> enumerateBox(int box, int d, Pred pred) {
  std::vector<FreqIndex> out;
  FreqIndex k(d, 0);
  while (true) {
    if (pred(k)) out.push_back(k);
    int axis = 0;
    while (axis < d && ++k[axis] > box) k[axis++] = 0;
    if (axis == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

void assertDownwardClosed(const std::vector<FreqIndex>& members, int d) {
  std::set<FreqIndex> present(members.begin(), members.end());
  for (const auto& k : members) {
    for (int i = 0; i < d; ++i) {
      if (k[i] == 0) continue;
      FreqIndex kk = k;
      --kk[i];
      if (!present.count(kk))
        throw std::invalid_argument("explicit_set: member list is not downward closed");
    }
  }
}
}  // namespace

bool SparseIndexSet::contains(const FreqIndex& k) const {
  return std::binary_search(members.begin(), members.end(), k);
}

SparseIndexSet build_delta(int n, double T, int d) {
  if (n < 0) throw std::invalid_argument("build_delta: n must be >= 0");
  if (d < 1) throw std::invalid_argument("build_delta: d must be >= 1");
  if (!(T == kFullBoxT) && T >= 1.0) throw std::invalid_argument("build_delta: T must be < 1");

  SparseIndexSet out;
  out.dim = d;
  std::ostringstream desc;
  if (T == kFullBoxT) {
    out.members = enumerateBox(n, d, [](const FreqIndex&) { return true; });
    desc << "full(n=" << n << ")";
  } else {
    // members satisfy |k|_∞ ≤ n: (1-T)|k|_∞ ≤ |k|_1 - T|k|_∞ ≤ (1-T)n
    out.members = enumerateBox(n, d, [n, T](const FreqIndex& k) {
      return norm1(k) - T * normInf(k) <= (1.0 - T) * n + kMembershipEps;
    });
    if (T == 0.0)
      desc << "smolyak(n=" << n << ")";
    else
      desc << "anisotropic(n=" << n << ",T=" << T << ")";
  }
  out.descriptor = desc.str();
  return out;
}

SparseIndexSet build_energy(double xi, double alpha, double beta, double gamma, double eps,
                            double sigma, int d) {
  double A = alpha - sigma - eps;
  double B = gamma - beta - eps;
  if (!(eps > 0.0 && eps < gamma - beta && gamma - beta < alpha - sigma))
    throw std::invalid_argument(
        "build_energy: hypothesis 0 < eps < gamma-beta < alpha-sigma violated");
  if (xi < 0.0) throw std::invalid_argument("build_energy: xi must be >= 0");
  // (A-B)|k|_∞ ≤ A|k|_1 - B|k|_∞ ≤ ξ bounds the box
  int box = static_cast<int>(std::floor(xi / (A - B) + kMembershipEps));
  SparseIndexSet out;
  out.dim = d;
  out.members = enumerateBox(box, d, [A, B, xi](const FreqIndex& k) {
    return A * norm1(k) - B * normInf(k) <= xi + kMembershipEps;
  });
  std::ostringstream desc;
  desc << "energy(xi=" << xi << ",alpha=" << alpha << ",beta=" << beta << ",gamma=" << gamma
       << ",eps=" << eps << ",sigma=" << sigma << ")";
  out.descriptor = desc.str();
  return out;
}

SparseIndexSet explicit_set(int d, std::vector<FreqIndex> members) {
  for (const auto& k : members) {
    checkDim(d, k, "explicit_set");
    for (int v : k)
      if (v < 0) throw std::invalid_argument("explicit_set: members must be in Z_+^d");
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  assertDownwardClosed(members, d);
  SparseIndexSet out;
  out.dim = d;
  out.members = std::move(members);
  out.descriptor = "explicit";
  return out;
}

unsigned long long frequency_count(const SparseIndexSet& gamma) {
  unsigned long long acc = 0;
  for (const auto& k : gamma.members) {
    int n1 = norm1(k);
    if (n1 > 62) throw std::runtime_error("frequency_count: 2^|k|_1 overflows");
    acc += 1ULL << n1;
  }
  return acc;
}

namespace {
struct Fit2 {
  double slope = 0.0;
  double logPower = 0.0;
  double intercept = 0.0;
};

// least squares for y = slope·n + logPower·log2(n) + intercept
Fit2 fitLog(const std::vector<double>& n, const std::vector<double>& y, bool withLog) {
  std::size_t m = n.size();
  double a[3][3] = {{0}}, b[3] = {0};
  for (std::size_t i = 0; i < m; ++i) {
    double row[3] = {n[i], withLog ? std::log2(n[i]) : 0.0, 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] += row[r] * row[c];
      b[r] += row[r] * y[i];
    }
  }
  if (!withLog) a[1][1] = 1.0;  // pin the unused unknown
  // Gaussian elimination with partial pivoting on the 3x3 system
  int idx[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(a[idx[r]][col]) > std::fabs(a[idx[piv]][col])) piv = r;
    std::swap(idx[col], idx[piv]);
    for (int r = col + 1; r < 3; ++r) {
      double f = a[idx[r]][col] / a[idx[col]][col];
      for (int c = col; c < 3; ++c) a[idx[r]][c] -= f * a[idx[col]][c];
      b[idx[r]] -= f * b[idx[col]];
    }
  }
  double x[3];
  for (int r = 2; r >= 0; --r) {
    double acc = b[idx[r]];
    for (int c = r + 1; c < 3; ++c) acc -= a[idx[r]][c] * x[c];
    x[r] = acc / a[idx[r]][r];
  }
  return {x[0], x[1], x[2]};
}
}  // namespace

CardinalityProfile cardinality_profile(double T, int d, const std::vector<int>& levels) {
  CardinalityProfile p;
  p.levels = levels;
  std::vector<double> xs, ys;
  for (int n : levels) {
    auto count = frequency_count(build_delta(n, T, d));
    p.counts.push_back(count);
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::log2(static_cast<double>(count)));
  }
  p.logRegressor = (T == 0.0);
  Fit2 fit = fitLog(xs, ys, p.logRegressor);
  p.fittedExponent = fit.slope;
  p.fittedLogPower = fit.logPower;
  return p;
}

Frac make_frac(long nodeIndex, int level) {
  long m = 1L << level;
  long r = ((nodeIndex % m) + m) % m;
  while (r != 0 && r % 2 == 0 && m > 1) {
    r /= 2;
    m /= 2;
  }
  if (r == 0) m = 1;
  return {static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(m)};
}

double frac_angle(const Frac& f) {
  return 2.0 * std::numbers::pi * static_cast<double>(f.num) / static_cast<double>(f.den);
}

std::set<GridPoint> grid_points(const SparseIndexSet& set) {
  std::set<GridPoint> pts;
  int d = set.dim;
  for (const auto& j : set.members) {
    std::vector<long> sizes(d);
    for (int i = 0; i < d; ++i) sizes[i] = 1L << j[i];
    std::vector<long> idx(d, 0);
    while (true) {
      GridPoint p(d);
      for (int i = 0; i < d; ++i) p[i] = make_frac(idx[i], j[i]);
      pts.insert(std::move(p));
      int axis = 0;
      while (axis < d && ++idx[axis] >= sizes[axis]) idx[axis++] = 0;
      if (axis == d) break;
    }
  }
  return pts;
}

std::set<GridPoint> grid_points(int n, double T, int d) {
  return grid_points(build_delta(n, T, d));
}

namespace {
double complementTermExp2(double t, double r, const FreqIndex& k) {
  return std::exp2(-t * norm1(k) + r * normInf(k));
}

// Beyond |k|_∞ > kmax every term satisfies 2^{-t|k|_1+r|k|_∞} ≤ 2^{-c0|k|_1}
// with c0 = t-r (r ≥ 0, via |k|_∞ ≤ |k|_1) or c0 = t-r/d (r < 0, via
// |k|_∞ ≥ |k|_1/d). Union bound over the axis exceeding kmax.
void remainderBounds(double t, double r, int d, int kmax, double& sumRem, double& supRem) {
  double c0 = (r >= 0.0) ? (t - r) : (t - r / d);
  if (c0 <= 0.0) throw std::invalid_argument("tail_sum: divergent parameters");
  double q = std::exp2(-c0);
  double axisTail = std::exp2(-c0 * (kmax + 1)) / (1.0 - q);
  double axisFull = 1.0 / (1.0 - q);
  sumRem = d * axisTail * std::pow(axisFull, d - 1);
  supRem = std::exp2(-c0 * (kmax + 1));
}
}  // namespace

ComplementSum complement_sum(const SparseIndexSet& gamma, double t, double r, int kmax) {
  ComplementSum out;
  int d = gamma.dim;
  FreqIndex k(d, 0);
  while (true) {
    if (!gamma.contains(k)) {
      double term = complementTermExp2(t, r, k);
      out.sum += term;
      out.sup = std::max(out.sup, term);
    }
    int axis = 0;
    while (axis < d && ++k[axis] > kmax) k[axis++] = 0;
    if (axis == d) break;
  }
  double supRem = 0.0;
  remainderBounds(t, r, d, kmax, out.remainder, supRem);
  out.sup = std::max(out.sup, supRem);
  return out;
}

TailSumResult tail_sum(int n, double T, double t, double r, int d, int kmax) {
  if (t < 0.0 || r >= t) throw std::invalid_argument("tail_sum: need t >= 0 and r < t");
  if (!(T == kFullBoxT) && T >= 1.0) throw std::invalid_argument("tail_sum: T must be < 1");

  TailSumResult out;
  SparseIndexSet delta = build_delta(n, T, d);
  ComplementSum cs = complement_sum(delta, t, r, kmax);
  out.sum = cs.sum;
  out.remainder = cs.remainder;
  double supRem = 0.0;
  remainderBounds(t, r, d, kmax, out.remainder, supRem);
  out.supRemainder = supRem;
  out.sup = cs.sup;

  out.boundaryRegime = (t > 0.0) ? (T >= r / t) : true;
  if (out.boundaryRegime) {
    double expo = t - r - (t * T - r) * (d - 1) / (d - T);
    out.sumBound = std::exp2(-expo * n) * std::pow(static_cast<double>(n), d - 1);
    out.supBound = std::exp2(-expo * n);
  } else {
    out.sumBound = std::exp2(-(t - r) * n);
    out.supBound = out.sumBound;
  }
  return out;
}

}  // namespace sgw
