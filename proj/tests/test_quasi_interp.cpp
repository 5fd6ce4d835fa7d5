#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "sgw/norms.hpp"
#include "sgw/quasi_interp.hpp"
#include "sgw/rng.hpp"

using namespace sgw;

namespace {
constexpr double kPi = std::numbers::pi;

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

std::vector<QuasiInterpScheme> allSchemes() {
  return {make_lagrange(),            make_averaged(),       make_averaged_corrected(),
          make_derivative(0.5, 0.25), make_kantorovich(1.0), make_kantorovich_corrected(1.0)};
}
}  // namespace

TEST_SUITE("quasi_interp") {
  TEST_CASE("aliasing folds a shifted frequency back into D_j") {
    QuasiInterpScheme lag = make_lagrange();
    int j = 4;
    long ell = -3;  // ∈ D_4
    CoeffMap cm;
    cm[{static_cast<int>(ell + 16)}] = 1.0;  // e^{i(ℓ+2^j)x}
    SpectralFunction f = make_finite(1, cm);
    SpectralFunction qf = apply_Q(lag, j, 0, f);
    REQUIRE(qf.coeffs.size() == 1);
    CHECK(qf.coeffs.begin()->first == FreqIndex{static_cast<int>(ell)});
    CHECK(std::abs(qf.coeffs.begin()->second - Complex(1.0)) < 1e-14);
  }

  TEST_CASE("polynomials below the level pick up the symbol product") {
    // t ∈ T_{j-1}: coefficients are multiplied by φ̂_j(ℓ)φ̃̂_j(ℓ)
    int j = 5;
    SpectralFunction t = randomFunction(1, 10, static_cast<int>(dUpper(j - 1)) - 1, 21);
    for (const auto& scheme : allSchemes()) {
      CAPTURE(scheme.name);
      SpectralFunction qt = apply_Q(scheme, j, 0, t);
      for (const auto& [k, c] : t.coeffs) {
        Complex want = c * scheme.phi.symbol(j, k[0]) * scheme.phiTilde.symbol(j, k[0]);
        CHECK(std::abs(qt.coeffs.at(k) - want) < 1e-13);
      }
    }
    SpectralFunction qlag = apply_Q(make_lagrange(), j, 0, t);
    CHECK(a1_distance(qlag, t) < 1e-14);  // Lagrange reproduces T_{j-1}
  }

  TEST_CASE("direct route: constants and single frequencies") {
    QuasiInterpScheme lag = make_lagrange();
    CoeffMap cm;
    cm[{0}] = Complex(1.5, 0.25);
    SpectralFunction c = make_finite(1, cm);
    for (int j : {0, 1, 4}) {
      SpectralFunction qc = apply_Q_direct(lag, j, 0, c);
      CHECK(std::abs(qc.coeffs.at({0}) - Complex(1.5, 0.25)) < 1e-13);
      // node-sum rounding may leave specks at other frequencies
      double spurious = 0.0;
      for (const auto& [k, v] : qc.coeffs)
        if (k[0] != 0) spurious += std::abs(v);
      CHECK(spurious < 1e-13);
    }

    // single in-range frequency under Kantorovich: multiplied by sinc(π2^{-j-1}ℓ)
    QuasiInterpScheme kan = make_kantorovich(1.0);
    int j = 4;
    long ell = 6;
    CoeffMap ce;
    ce[{static_cast<int>(ell)}] = 1.0;
    SpectralFunction f = make_finite(1, ce);
    SpectralFunction qf = apply_Q_direct(kan, j, 0, f);
    Complex want = sinc(kPi * std::exp2(-j - 1.0) * static_cast<double>(ell));
    CHECK(std::abs(qf.coeffs.at({static_cast<int>(ell)}) - want) < 1e-13);
  }

  TEST_CASE("oracle equivalence: aliasing identity vs sampling definition") {
    for (const auto& scheme : allSchemes()) {
      CAPTURE(scheme.name);
      for (int j = 0; j <= 6; ++j) {
        SpectralFunction f = randomFunction(1, 16, 40, 1000 + j);
        SpectralFunction fast = apply_Q(scheme, j, 0, f);
        SpectralFunction direct = apply_Q_direct(scheme, j, 0, f);
        double rel = a1_distance(fast, direct) / std::max(1e-300, a1_norm(fast));
        CHECK(rel < 1e-10);
      }
    }
  }

  TEST_CASE("eta at level 0 degenerates to Q_0 on every axis") {
    SpectralFunction f = randomFunction(2, 12, 9, 31);
    QuasiInterpScheme kan = make_kantorovich(1.0);
    TrigPolynomial eta = apply_eta(kan, {0, 0}, f);
    SpectralFunction direct = apply_Q(kan, 0, 1, apply_Q(kan, 0, 0, f));
    CHECK(a1_distance(to_spectral(eta), direct) < 1e-14);
  }

  TEST_CASE("eta kills reproduced inputs (Lagrange telescoping)") {
    // f ∈ T_{j-1}^d with all j_i ≥ 1: both Q_{j_i} and Q_{j_i-1} reproduce f
    SpectralFunction f = randomFunction(2, 10, 3, 41);  // spectrum ⊂ D_3×D_3
    QuasiInterpScheme lag = make_lagrange();
    for (FreqIndex j : {FreqIndex{4, 4}, FreqIndex{5, 4}, FreqIndex{6, 6}}) {
      TrigPolynomial eta = apply_eta(lag, j, f);
      CHECK(eta.coeffs.empty());
    }
  }

  TEST_CASE("eta blocks of a plain wave under Lagrange (brute force)") {
    // f = e^{i(3x1+x2)}: the nonzero blocks within |j|_∞ ≤ 4 are exactly
    // {0,1,3} × {0,1,2} (the axis factors jump where the alias of 3 resp. 1
    // changes), and the full box sum telescopes back to f.
    CoeffMap cm;
    cm[{3, 1}] = 1.0;
    SpectralFunction f = make_finite(2, cm);
    QuasiInterpScheme lag = make_lagrange();
    std::set<FreqIndex> nonzero;
    SpectralFunction acc;
    acc.dim = 2;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) {
        TrigPolynomial eta = apply_eta(lag, {a, b}, f);
        if (!eta.coeffs.empty()) nonzero.insert({a, b});
        acc = add(acc, to_spectral(eta));
      }
    std::set<FreqIndex> want;
    for (int a : {0, 1, 3})
      for (int b : {0, 1, 2}) want.insert({a, b});
    CHECK(nonzero == want);
    CHECK(a1_distance(acc, f) < 1e-12);

    // η_{(3,1)} carries the aliased pattern, not the bare wave
    TrigPolynomial e31 = apply_eta(lag, {3, 1}, f);
    REQUIRE(e31.coeffs.size() == 4);
    CHECK(std::abs(e31.coeffs.at({3, -1}) - Complex(1.0)) < 1e-14);
    CHECK(std::abs(e31.coeffs.at({-1, 0}) - Complex(1.0)) < 1e-14);
  }

  TEST_CASE("signed expansion agrees with axis-sequential differencing") {
    rng::Stream stream(77);
    for (const auto& scheme : allSchemes()) {
      CAPTURE(scheme.name);
      SpectralFunction f = randomFunction(2, 14, 20, stream.next());
      for (FreqIndex j : {FreqIndex{0, 0}, FreqIndex{2, 0}, FreqIndex{1, 3}, FreqIndex{4, 2}}) {
        TrigPolynomial a = apply_eta(scheme, j, f);
        TrigPolynomial b = apply_eta_signed(scheme, j, f);
        double rel = a1_distance(to_spectral(a), to_spectral(b)) /
                     std::max(1e-300, a1_norm(to_spectral(a)));
        CHECK(rel < 1e-10);
      }
    }
  }

  TEST_CASE("axis application order does not matter") {
    QuasiInterpScheme kan = make_kantorovich_corrected(1.0);
    SpectralFunction f = randomFunction(2, 16, 20, 55);
    FreqIndex j = {3, 2};
    TrigPolynomial ab = apply_eta(kan, j, f);
    // axis 1 first, then axis 0, assembled by hand
    SpectralFunction g = subtract(apply_Q(kan, j[1], 1, f), apply_Q(kan, j[1] - 1, 1, f));
    g = subtract(apply_Q(kan, j[0], 0, g), apply_Q(kan, j[0] - 1, 0, g));
    CHECK(a1_distance(to_spectral(ab), g) < 1e-12);
  }

  TEST_CASE("eta output spectrum stays inside the D-box") {
    for (const auto& scheme : allSchemes()) {
      SpectralFunction f = randomFunction(2, 20, 33, 60);
      FreqIndex j = {3, 1};
      TrigPolynomial eta = apply_eta(scheme, j, f);
      for (const auto& [k, c] : eta.coeffs) {
        CHECK(inD(k[0], j[0]));
        CHECK(inD(k[1], j[1]));
      }
    }
  }

  TEST_CASE("full-box combination telescopes to the tensor operator") {
    QuasiInterpScheme avg = make_averaged();
    SpectralFunction f = randomFunction(2, 12, 30, 71);
    int m = 4;
    SparseIndexSet box = build_delta(m, kFullBoxT, 2);
    SpectralFunction viaP = apply_P(avg, box, f);
    SpectralFunction direct = apply_Q(avg, m, 1, apply_Q(avg, m, 0, f));
    CHECK(a1_distance(viaP, direct) / std::max(1.0, a1_norm(direct)) < 1e-12);
  }

  TEST_CASE("singleton set gives the single eta block") {
    QuasiInterpScheme lag = make_lagrange();
    SpectralFunction f = randomFunction(2, 8, 10, 81);
    SparseIndexSet single = explicit_set(2, {FreqIndex{0, 0}});
    CHECK(a1_distance(apply_P(lag, single, f), to_spectral(apply_eta(lag, {0, 0}, f))) == 0.0);
  }

  TEST_CASE("sparse-grid combination reproduces covered polynomials") {
    // f ∈ T_{(2,2)} and Δ(4,0) ⊇ the box {0..2}²: P f = f identically
    rng::Stream stream(91);
    CoeffMap cm;
    for (long a = dLower(2); a < dUpper(2); ++a)
      for (long b = dLower(2); b < dUpper(2); ++b)
        cm[{static_cast<int>(a), static_cast<int>(b)}] =
            Complex(stream.nextUnit() - 0.5, stream.nextUnit() - 0.5);
    SpectralFunction f = make_finite(2, cm);
    QuasiInterpScheme lag = make_lagrange();
    SpectralFunction pf = apply_P(lag, build_delta(4, 0.0, 2), f);
    CHECK(a1_distance(pf, f) < 1e-12);
  }

  TEST_CASE("combination interpolates arbitrary inputs on the sparse grid") {
    // the interpolation property holds at the nodes of Γ(n,T) even when the
    // spectrum is not covered
    QuasiInterpScheme lag = make_lagrange();
    SpectralFunction f = randomFunction(2, 18, 11, 101);
    for (double T : {0.0, 0.5}) {
      int n = 3;
      SpectralFunction pf = apply_P(lag, build_delta(n, T, 2), f);
      for (const auto& node : grid_points(n, T, 2)) {
        std::vector<double> x = {frac_angle(node[0]), frac_angle(node[1])};
        CHECK(std::abs(evaluate(pf, x) - evaluate(f, x)) < 1e-9);
      }
    }
  }

  TEST_CASE("level-uniform boundedness under a finite amalgam norm") {
    // ‖Q_j f‖_{A_q^γ} ≤ C_φ · ‖φ̃‖_{Ã_{q',j}} ‖f‖_{A_q^γ}, C independent of j
    struct Row {
      QuasiInterpScheme scheme;
      double q;
    };
    for (Row row : {Row{make_kantorovich(1.0), 2.0}, Row{make_averaged(), 1.0}}) {
      CAPTURE(row.scheme.name);
      double qp = conjugate_exponent(row.q);
      NormParams np = iso_norm(0.5, row.q);
      double worst = 0.0;
      for (int j = 0; j <= 8; ++j) {
        SpectralFunction f = randomFunction(1, 24, 500, 7000 + j);
        double ratio =
            wiener_norm(apply_Q(row.scheme, j, 0, f), np).value / wiener_norm(f, np).value;
        worst = std::max(worst, ratio);
        AmalgamResult am = amalgam_norm(row.scheme.phiTilde, qp, j, 4000);
        REQUIRE(!am.divergent);
        CHECK(ratio <= check_uniform(row.scheme.phi, j) * (am.value + am.tail) + 1e-9);
      }
      CHECK(worst < 2.0);
    }
  }

  TEST_CASE("tail budgets propagate through the operators") {
    SpectralFunction small = make_from_rule(1, korobov_rule(1, 3.0, 0.0, 3), 12);
    SpectralFunction big = make_from_rule(1, korobov_rule(1, 3.0, 0.0, 3), 4000);
    QuasiInterpScheme kan = make_kantorovich(1.0);
    int j = 3;
    SpectralFunction qSmall = apply_Q(kan, j, 0, small);
    SpectralFunction qBig = apply_Q(kan, j, 0, big);
    // the certified budget dominates the observed truncation effect
    CHECK(a1_distance(qSmall, qBig) <= qSmall.tailA1);
    CHECK(qSmall.tailA1 > 0.0);

    // growth-order schemes refuse inputs whose tail has no rule majorant
    SpectralFunction noRule = qSmall;  // carries a tail but no rule
    CHECK_THROWS_AS(apply_Q(make_derivative(1.0, 0.0), 2, 0, noRule), std::runtime_error);
  }
}
