#include "klingen/evaluator.hpp"

#include <doctest.h>

#include <cmath>

using namespace klingen;

namespace {

CuspForm level_two_form() {
  static const CuspForm f =
      CuspForm::from_series(ingest_coefficients(std::filesystem::path(KLINGEN_TEST_DATA "/level2_weight8.txt")).series);
  return f;
}

double rel(const std::complex<double>& a, const std::complex<double>& b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("upper half-plane points") {
  CHECK_THROWS_AS(UpperHalfPoint(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(UpperHalfPoint(0.0, -1.0), std::invalid_argument);
  CHECK(UpperHalfPoint(0.5, 2.0).tau() == std::complex<double>(0.5, 2.0));
}

TEST_CASE("cusp form evaluation") {
  const QSeries d50 = delta_qexp(50), d100 = delta_qexp(100);
  const auto v50 = eval_cuspform(d50, UpperHalfPoint(0.0, 1.0));
  const auto v100 = eval_cuspform(d100, UpperHalfPoint(0.0, 1.0));
  CHECK(std::abs(v50.value - v100.value) <= v50.bound + v100.bound);
  const double q = std::exp(-2.0 * M_PI);
  CHECK(v50.value.real() == doctest::Approx(q * (1 - 24 * q + 252 * q * q)).epsilon(1e-6));
  CHECK(eval_cuspform(d100, UpperHalfPoint(1.0, 1.0)).value.real() == doctest::Approx(v100.value.real()).epsilon(1e-14));

  // Delta(-1/tau) = tau^12 Delta(tau) at tau = 2i, i.e. Delta(i/2) = 2^12 Delta(2i).
  const auto half = eval_cuspform(d100, UpperHalfPoint(0.0, 0.5));
  const auto two = eval_cuspform(d100, UpperHalfPoint(0.0, 2.0));
  CHECK(half.value.real() == doctest::Approx(4096.0 * two.value.real()).epsilon(1e-12));

  // A short expansion at small height reports a divergent bound.
  CHECK(std::isinf(eval_cuspform(delta_qexp(5), UpperHalfPoint(0.0, 0.01)).bound));
}

TEST_CASE("CuspForm reduces level one arguments to the fundamental domain") {
  const CuspForm f = CuspForm::builtin(12, 64);
  const std::complex<double> tau(0.1, 0.05);
  const auto direct = eval_cuspform(delta_qexp(4000), UpperHalfPoint(tau.real(), tau.imag()));
  CHECK(rel(f(tau), direct.value) < 1e-11);
  CHECK(rel(f({0.37, 1.3}), eval_cuspform(delta_qexp(64), UpperHalfPoint(0.37, 1.3)).value) < 1e-14);
  CHECK(f.sup_norm_is_rigorous());
  CHECK(f.sup_norm() > 0.0);
  CHECK_THROWS(f({0.0, -1.0}));
  const CuspForm g = level_two_form();
  CHECK(g.level() == 2);
  CHECK_FALSE(g.sup_norm_is_rigorous());
  CHECK(g.usable_height() < 0.01);
}

TEST_CASE("E1") {
  const UpperHalfPoint t(0.0, 2.0);
  const auto E = eval_E1(10.0, 12, 1, t, 60);
  const auto e12 = eisenstein_qexp(12, 40);
  std::vector<double> c;
  for (std::size_t n = 0; n < e12.order(); ++n) c.push_back(to_double(e12[n]));
  CHECK(rel(E.value, eval_qseries(c, c.size(), t.tau())) < 1e-10);
  CHECK(E.heuristic);
  CHECK(std::abs(eval_E1(10.0, 12, 1, UpperHalfPoint(0.0, 50.0), 40).value - 1.0) < 1e-10);
  const auto a = eval_E1(10.0, 12, 1, UpperHalfPoint(0.2, 1.1), 40);
  const auto b = eval_E1(10.0, 12, 1, UpperHalfPoint(1.2, 1.1), 40);
  CHECK(rel(a.value, b.value) < 1e-12);
  CHECK_THROWS_AS(eval_E1(2.0, 4, 1, t, 10), std::invalid_argument);
}

TEST_CASE("diagonal restriction of the Klingen series") {
  KlingenCoefficients A(12);
  const CuspForm f = CuspForm::builtin(12, 512);
  const UpperHalfPoint i(0.0, 1.0), high(0.0, 50.0), p(0.0, 1.2), r(0.3, 1.1);
  CHECK(std::abs(eval_klingen_diag(A, i, high, 8).value - f(i.tau())) < 1e-8);

  const auto ab = eval_klingen_diag(A, r, p, 8);
  const auto ba = eval_klingen_diag(A, p, r, 8);
  CHECK(rel(ab.value, ba.value) < 1e-15);

  const auto c6 = eval_klingen_diag(A, p, p, 6);
  const auto c8 = eval_klingen_diag(A, p, p, 8);
  CHECK(std::abs(c6.value - c8.value) <= c6.bound);
  CHECK(c8.bound < c6.bound);

  SUBCASE("Phi-operator limit is monotone") {
    double last = INFINITY;
    for (double y : {10.0, 20.0, 50.0}) {
      const double d = std::abs(eval_klingen_diag(A, r, UpperHalfPoint(0.0, y), 8).value - f(r.tau()));
      CHECK(d <= last);
      last = d;
    }
  }
}

TEST_CASE("pullback sum") {
  const CuspForm f = CuspForm::builtin(12, 512);
  const TruncationParams params;
  const UpperHalfPoint i(0.0, 1.0), high(0.0, 50.0), a(0.3, 1.1), b(0.0, 1.5);
  CHECK(std::abs(eval_pullback_rhs(f, 12, 1, i, high, params).value - f(i.tau())) < 1e-8);

  const auto ab = eval_pullback_rhs(f, 12, 1, a, b, params);
  const auto ba = eval_pullback_rhs(f, 12, 1, b, a, params);
  CHECK(rel(ab.value, ba.value) < 1e-13);
  CHECK(ab.terms > 0);
  CHECK(ab.bound() < 1e-5 * std::abs(ab.value));

  SUBCASE("independent of the coset representatives") {
    for (std::int64_t m : {1, 2}) {
      PullbackOptions o;
      o.representative_shift = m;
      CHECK(rel(eval_pullback_rhs(f, 12, 1, a, b, params, o).value, ab.value) < 1e-12);
    }
  }
  SUBCASE("independent of the worker count") {
    PullbackOptions o;
    o.threads = 4;
    const auto v = eval_pullback_rhs(f, 12, 1, a, b, params, o);
    CHECK(v.value == ab.value);
    CHECK(v.pruned_bound == ab.pruned_bound);
  }
  SUBCASE("paramodular sum at N = 1 coincides bit for bit") {
    const auto para = eval_pullback_rhs_para(f, 12, 1, a, b, params);
    CHECK(para.value == ab.value);
    CHECK(para.tr_sum == ab.tr_sum);
    CHECK(para.e1_terms == ab.e1_terms);
  }
  SUBCASE("growing the (c, d) range changes the value below the estimate") {
    TruncationParams wide = params;
    wide.cd_bound = 10;
    CHECK(std::abs(eval_pullback_rhs(f, 12, 1, a, b, wide).value - ab.value) <= ab.bound());
  }
  CHECK_THROWS_AS(eval_pullback_rhs(f, 16, 1, a, b, params), std::invalid_argument);
}

TEST_CASE("paramodular sum at level 2") {
  const CuspForm f = level_two_form();
  TruncationParams params;
  PullbackOptions o;
  o.prune_rel = 1e-12;
  const UpperHalfPoint t1(-0.2, 0.3), t2(0.0, 1.2);
  const auto base = eval_pullback_rhs_para(f, 8, 2, t1, t2, params, o);

  SUBCASE("periodicity in tau1") {
    const auto moved = eval_pullback_rhs_para(f, 8, 2, UpperHalfPoint(0.8, 0.3), t2, params, o);
    CHECK(rel(moved.value, base.value) < 1e-10);
  }
  SUBCASE("Gamma_0(4) generator on tau1") {
    const auto m = moebius<double>(1, 0, 4, 1, t1.tau());
    const auto moved = eval_pullback_rhs_para(f, 8, 2, UpperHalfPoint(m.image.real(), m.image.imag()), t2, params, o);
    CHECK(rel(std::pow(m.j, -8) * moved.value, base.value) < 1e-6);
  }
  SUBCASE("T_r part lies in S_8(SL(2,Z)) = 0 as a function of tau1") {
    const auto siegel = eval_pullback_rhs(f, 8, 2, t1, t2, params, o);
    CHECK(std::abs(base.tr_sum) < 1e-8 * std::abs(base.value));
    CHECK(std::abs(siegel.tr_sum) > 1e-4 * std::abs(base.value));
    CHECK(std::abs(base.tr_sum) < 1e-5 * std::abs(siegel.tr_sum));
  }
}

TEST_CASE("Fourier coefficient extraction") {
  const CuspForm f = CuspForm::builtin(12, 512);
  TruncationParams coarse;
  coarse.grid_size = 4;
  TruncationParams fine;
  fine.grid_size = 8;
  const auto zero = extract_Af(f, 12, 1, 0, coarse);
  CHECK(std::abs(zero.value) <= zero.bound + 1e-9);
  const auto a4 = extract_Af(f, 12, 1, 1, coarse);
  const auto a8 = extract_Af(f, 12, 1, 1, fine);
  CHECK(std::abs(a4.value - a8.value) <= a4.bound);
  CHECK(a8.value.real() == doctest::Approx(1440.0 / 7.0 - 131040.0 / 691.0).epsilon(1e-9));
  CHECK_THROWS_AS(extract_Af(f, 12, 2, 1, coarse), std::invalid_argument);
}
