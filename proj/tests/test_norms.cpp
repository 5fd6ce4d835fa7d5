#include <doctest.h>

#include <cmath>
#include <vector>

#include "sgw/norms.hpp"
#include "sgw/quasi_interp.hpp"
#include "sgw/rng.hpp"

using namespace sgw;

namespace {
SpectralFunction randomFunction(int dim, int count, int maxFreq, std::uint64_t seed) {
  rng::Stream stream(seed);
  CoeffMap coeffs;
  while (static_cast<int>(coeffs.size()) < count) {
    FreqIndex k(dim);
    for (int i = 0; i < dim; ++i) k[i] = stream.nextInt(-maxFreq, maxFreq);
    coeffs[k] = Complex(2.0 * stream.nextUnit() - 1.0, 2.0 * stream.nextUnit() - 1.0);
  }
  return make_finite(dim, std::move(coeffs));
}

const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("sigma and conjugate exponents") {
    CHECK(sigma_pq(2.0, 2.0) == 0.0);
    CHECK(sigma_pq(kInf, 1.0) == 1.0);
    CHECK(sigma_pq(1.0, 2.0) == 0.0);  // (1/2 - 1)_+ = 0
    CHECK(sigma_pq(2.0, 1.0) == 0.5);
    CHECK(conjugate_exponent(1.0) == kInf);
    CHECK(conjugate_exponent(kInf) == 1.0);
    CHECK(conjugate_exponent(2.0) == 2.0);
    CHECK(conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0));
  }

  TEST_CASE("primed norm values") {
    CoeffMap cm;
    cm[{1, 0}] = 1.0;
    SpectralFunction f = make_finite(2, cm);
    for (double q : {1.0, 2.0, kInf}) {
      CHECK(wiener_norm(f, iso_norm(1.5, q)).value == doctest::Approx(std::exp2(1.5)));
    }

    CoeffMap grid;
    for (int a : {0, 1})
      for (int b : {0, 1}) grid[{a, b}] = 1.0;
    SpectralFunction g = make_finite(2, grid);
    // hybrid(1,1), q=1: 1·1 + 2·2 + 2·2 + 4·2 = 17 with the |k|_∞ factor
    CHECK(wiener_norm(g, hybrid_norm(1.0, 1.0, 1.0)).value == doctest::Approx(17.0));

    // homogeneity
    SpectralFunction h = randomFunction(2, 12, 8, 5);
    Complex c(3.0, -4.0);
    for (const NormParams& p :
         {iso_norm(0.8, 2.0), mixed_norm(1.1, 1.0), hybrid_norm(0.5, -0.25, kInf)})
      CHECK(wiener_norm(scale(h, c), p).value ==
            doctest::Approx(5.0 * wiener_norm(h, p).value).epsilon(1e-12));
  }

  TEST_CASE("norm axioms: triangle inequality across variants and q") {
    rng::Stream stream(17);
    for (double q : {1.0, 2.0, kInf}) {
      for (const NormParams& p :
           {iso_norm(0.7, q), mixed_norm(0.9, q), hybrid_norm(1.2, -0.3, q)}) {
        for (int trial = 0; trial < 20; ++trial) {
          SpectralFunction f = randomFunction(2, 10, 6, stream.next());
          SpectralFunction g = randomFunction(2, 10, 6, stream.next());
          double lhs = wiener_norm(add(f, g), p).value;
          double rhs = wiener_norm(f, p).value + wiener_norm(g, p).value;
          CHECK(lhs <= rhs + 1e-10 * std::max(1.0, rhs));
        }
      }
    }
  }

  TEST_CASE("embedding chain: iso ≤ mixed ≤ iso with d·alpha") {
    double alpha = 0.8;
    rng::Stream stream(23);
    for (int trial = 0; trial < 200; ++trial) {
      FreqIndex k = {stream.nextInt(-40, 40), stream.nextInt(-40, 40), stream.nextInt(-40, 40)};
      double wIso = weight(k, iso_norm(alpha, 1.0));
      double wMix = weight(k, mixed_norm(alpha, 1.0));
      double wIsoD = weight(k, iso_norm(3.0 * alpha, 1.0));
      CHECK(wIso <= wMix * (1.0 + 1e-12));
      CHECK(wMix <= wIsoD * (1.0 + 1e-12));
    }
    SpectralFunction f = randomFunction(3, 25, 12, 29);
    double a = wiener_norm(f, iso_norm(alpha, 2.0)).value;
    double b = wiener_norm(f, mixed_norm(alpha, 2.0)).value;
    double c = wiener_norm(f, iso_norm(3.0 * alpha, 2.0)).value;
    CHECK(a <= b * (1.0 + 1e-12));
    CHECK(b <= c * (1.0 + 1e-12));
  }

  TEST_CASE("q = 2 value agrees with an independent accumulation") {
    SpectralFunction f = randomFunction(2, 30, 20, 37);
    double gamma = 1.25;
    double viaNorm = wiener_norm(f, iso_norm(gamma, 2.0)).value;
    // separate code path: squared weights accumulated in reverse order
    double acc = 0.0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
      double w = std::pow(1.0 + normInf(it->first), 2.0 * gamma);
      acc += w * std::norm(it->second);
    }
    CHECK(viaNorm * viaNorm == doctest::Approx(acc).epsilon(1e-12));
  }

  TEST_CASE("block norm: single-block functions and zero") {
    // f supported on one block: block_norm = 2^{α|k|_1+β|k|_∞}·‖f‖_{A_q}
    CoeffMap cm;
    cm[{5, -2}] = Complex(0.3, 0.4);
    cm[{6, 3}] = Complex(-1.0, 0.0);  // both in P_3 × P_2
    SpectralFunction f = make_finite(2, cm);
    double alpha = 1.0, beta = -0.5, q = 2.0;
    double aq = std::sqrt(0.25 + 1.0);
    CHECK(block_norm(f, alpha, beta, q) ==
          doctest::Approx(std::exp2(alpha * 5 + beta * 3) * aq).epsilon(1e-12));

    SpectralFunction zero;
    zero.dim = 2;
    CHECK(block_norm(zero, 1.0, 0.0, 2.0) == 0.0);
    CHECK_THROWS_AS(block_norm(f, -0.5, 0.0, 2.0), std::invalid_argument);
  }

  TEST_CASE("block norm vs primed norm: ratio bounded by the weight comparison") {
    // per-frequency weight ratio lies in (2^{-(αd+|β|)}, 1], so
    // primed ≤ block ≤ 2^{αd+|β|}·primed
    double alpha = 1.0, beta = -0.5, q = 2.0;
    double cap = std::exp2(alpha * 2 + std::fabs(beta));
    rng::Stream stream(43);
    for (int trial = 0; trial < 25; ++trial) {
      SpectralFunction f = randomFunction(2, 30, 16, stream.next());
      double bn = block_norm(f, alpha, beta, q);
      double pn = wiener_norm(f, hybrid_norm(alpha, beta, q)).value;
      CHECK(bn >= pn * (1.0 - 1e-12));
      CHECK(bn <= cap * pn * (1.0 + 1e-12));
    }
  }

  TEST_CASE("block/primed ratio is invariant under extreme rescaling") {
    SpectralFunction f = randomFunction(2, 24, 16, 53);
    double alpha = 1.0, beta = -0.5, q = 2.0;
    double r0 = block_norm(f, alpha, beta, q) / wiener_norm(f, hybrid_norm(alpha, beta, q)).value;
    for (double c : {1e-6, 1e6}) {
      SpectralFunction g = scale(f, Complex(c, 0.0));
      double r = block_norm(g, alpha, beta, q) / wiener_norm(g, hybrid_norm(alpha, beta, q)).value;
      CHECK(std::fabs(r - r0) <= 1e-9);
    }
  }

  TEST_CASE("characterization norm: constants and plain waves") {
    QuasiInterpScheme lag = make_lagrange();
    CoeffMap cm;
    cm[{0, 0}] = Complex(0.0, -2.5);
    SpectralFunction c = make_finite(2, cm);
    CharNormResult cn = lp_char_norm(c, lag, 1.0, 0.0, 1.0, 4);
    CHECK(cn.value == doctest::Approx(2.5).epsilon(1e-12));  // only j = 0 contributes

    // e^{i(3x1+x2)}: blocks {0,1,3}×{0,1,2} with A_1 masses (1,2,2)⊗(1,2,2);
    // Σ 2^{|j|_1}·mass = (1+2·2+8·2)(1+2·2+4·2) = 21·13 = 273
    CoeffMap wave;
    wave[{3, 1}] = 1.0;
    SpectralFunction w = make_finite(2, wave);
    CHECK(lp_char_norm(w, lag, 1.0, 0.0, 1.0, 6).value == doctest::Approx(273.0).epsilon(1e-12));
  }

  TEST_CASE("characterization norm refuses out-of-range parameters") {
    SpectralFunction f = randomFunction(2, 6, 4, 61);
    // averaged has s = 2: alpha = 2.5 breaks s > max(alpha+beta, alpha)
    CHECK_THROWS_WITH_AS(lp_char_norm(f, make_averaged(), 2.5, 0.0, 2.0, 4),
                         doctest::Contains("s > max(alpha+beta, alpha)"), std::invalid_argument);
    // lagrange has N = 0 but an infinite amalgam norm for finite q', and
    // alpha = 0.3 < N + 1/q' = 0.5
    CHECK_THROWS_WITH_AS(lp_char_norm(f, make_lagrange(), 0.3, 0.0, 2.0, 4),
                         doctest::Contains("amalgam"), std::invalid_argument);
  }

  TEST_CASE("characterization/primed ratio band is scale-free and f-independent") {
    struct Row {
      QuasiInterpScheme scheme;
      double alpha, beta, q;
    };
    for (Row row : {Row{make_kantorovich_corrected(1.0), 1.0, 0.5, 2.0},
                    Row{make_lagrange(), 1.5, -0.5, 2.0}, Row{make_averaged(), 1.2, 0.0, 1.0}}) {
      CAPTURE(row.scheme.name);
      rng::Stream stream(71);
      double lo = 1e300, hi = 0.0;
      for (int trial = 0; trial < 50; ++trial) {
        SpectralFunction f = randomFunction(2, 12, 15, stream.next());
        double plus = lp_char_norm(f, row.scheme, row.alpha, row.beta, row.q, 7).value;
        double primed = wiener_norm(f, hybrid_norm(row.alpha, row.beta, row.q)).value;
        double ratio = plus / primed;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      CHECK(hi / lo <= 20.0);

      // rescaling must not move the ratio
      SpectralFunction f = randomFunction(2, 12, 15, 9001);
      double r0 = lp_char_norm(f, row.scheme, row.alpha, row.beta, row.q, 7).value /
                  wiener_norm(f, hybrid_norm(row.alpha, row.beta, row.q)).value;
      for (double c : {1e-6, 1e6}) {
        SpectralFunction g = scale(f, Complex(c, 0.0));
        double r = lp_char_norm(g, row.scheme, row.alpha, row.beta, row.q, 7).value /
                   wiener_norm(g, hybrid_norm(row.alpha, row.beta, row.q)).value;
        CHECK(std::fabs(r / r0 - 1.0) <= 1e-9);
      }
    }
  }

  TEST_CASE("partial sums of eta blocks are reordering-stable") {
    // finite surrogate for unconditional convergence: random permutations of
    // the truncated block sum land on the same function
    QuasiInterpScheme kan = make_kantorovich_corrected(1.0);
    SpectralFunction f = randomFunction(2, 10, 7, 77);
    std::vector<FreqIndex> order;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) order.push_back({a, b});
    SpectralFunction ref;
    ref.dim = 2;
    for (const auto& j : order) ref = add(ref, to_spectral(apply_eta(kan, j, f)));
    rng::Stream stream(83);
    for (int trial = 0; trial < 5; ++trial) {
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[stream.next() % i]);
      SpectralFunction acc;
      acc.dim = 2;
      for (const auto& j : order) acc = add(acc, to_spectral(apply_eta(kan, j, f)));
      CHECK(a1_distance(acc, ref) <= 1e-10 * std::max(1.0, a1_norm(ref)));
    }
  }

  TEST_CASE("Bernstein ratios never exceed one") {
    double alpha = 1.0, beta = -0.25, gamma = 0.5;
    REQUIRE(std::min(alpha, alpha + beta - gamma) > 0.0);

    // corner frequency: close to the cap but still below it
    CoeffMap corner;
    corner[{-8, -4}] = 1.0;  // the included endpoints of D_4 × D_3
    TrigPolynomial tc = make_polynomial(2, {4, 3}, corner);
    double rc = bernstein_ratio(tc, alpha, beta, gamma, 2.0);
    CHECK(rc <= 1.0 + 1e-12);
    CHECK(rc >= 0.5);

    // mass at zero has minimal weight
    CoeffMap at0;
    at0[{0, 0}] = 1.0;
    TrigPolynomial t0 = make_polynomial(2, {4, 3}, at0);
    CHECK(bernstein_ratio(t0, alpha, beta, gamma, 2.0) < 0.1);

    rng::Stream stream(97);
    for (FreqIndex degrees : {FreqIndex{2, 2}, FreqIndex{4, 1}, FreqIndex{3, 5}}) {
      for (int trial = 0; trial < 100; ++trial) {
        CoeffMap cm;
        for (int pick = 0; pick < 6; ++pick) {
          FreqIndex k(2);
          for (int i = 0; i < 2; ++i)
            k[i] = static_cast<int>(dLower(degrees[i]) +
                                    stream.nextInt(0, static_cast<int>(dSize(degrees[i])) - 1));
          cm[k] = Complex(stream.nextUnit() - 0.5, stream.nextUnit() - 0.5);
        }
        TrigPolynomial t = make_polynomial(2, degrees, cm);
        for (double q : {1.0, 2.0, kInf})
          CHECK(bernstein_ratio(t, alpha, beta, gamma, q) <= 1.0 + 1e-12);
      }
    }

    CHECK_THROWS_AS(bernstein_ratio(tc, 0.2, -0.25, 0.5, 2.0), std::invalid_argument);
  }

  TEST_CASE("rule-backed norms certify their weighted tails") {
    SpectralFunction f = make_from_rule(2, korobov_rule(2, 3.0, 0.0, 3), 24);
    NormResult r = wiener_norm(f, iso_norm(1.0, 2.0));
    CHECK(r.value > 0.0);
    CHECK(r.tail > 0.0);
    // a = 3 keeps the majorant convergent only while the folded weight stays
    // below 2 per axis
    CHECK_THROWS_AS(wiener_norm(f, iso_norm(2.5, 2.0)), std::runtime_error);
  }
}
