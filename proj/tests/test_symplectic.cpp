#include "klingen/symplectic.hpp"

#include "klingen/foundations.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

using namespace klingen;

namespace {

Mat4Z identity4() { return Mat4Z::Identity(); }

bool symplectic(const Mat4Z& g) {
  const Mat4Z J = symplectic_form();
  return (g.transpose() * J * g).eval() == J;
}

Mat2Z random_sl2(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> e(-12, 12);
  for (;;) {
    const std::int64_t c = e(rng), d = e(rng);
    if (std::gcd(c, d) != 1) continue;
    const auto ab = complete_coprime_pair(Integer(c), Integer(d));
    const std::int64_t m = e(rng);
    return mat2(ab.a + m * c, ab.b + m * d, c, d);
  }
}

}  // namespace

TEST_CASE("membership") {
  const Mat4Z J = symplectic_form();
  CHECK(is_member(J, SiegelGroup::Sp4Z));
  CHECK(is_member(identity4(), SiegelGroup::Gamma0_4, 7));
  CHECK_FALSE(is_member(J, SiegelGroup::Gamma0_4, 2));
  const auto reps = double_coset_reps();
  CHECK(is_member(reps.s1.matrix, SiegelGroup::Sp4Z));
  CHECK(is_member(reps.r.matrix, SiegelGroup::Sp4Z));
  // Lower-left block = 0 mod 2 but not symplectic.
  Mat4Z bad = identity4();
  bad(2, 0) = 2;
  bad(0, 0) = 3;
  CHECK_FALSE(is_member(bad, SiegelGroup::Gamma0_4, 2));
  CHECK_FALSE(is_member(bad, SiegelGroup::Sp4Z));
  CHECK(is_member_gamma0(mat2(1, 0, 4, 1), 4));
  CHECK_FALSE(is_member_gamma0(mat2(1, 0, 2, 1), 4));
  CHECK_FALSE(is_member_gamma0(mat2(2, 0, 4, 1), 4));
}

TEST_CASE("paramodular membership") {
  const std::int64_t N = 3;
  Mat4Q g = Mat4Q::Identity();
  g(1, 3) = Rational(1, N);
  g(3, 1) = Rational(0);
  CHECK(is_member(g, SiegelGroup::ParamodularK, N));
  Mat4Q h = Mat4Q::Identity();
  h(1, 3) = Rational(1, 2 * N);
  CHECK_FALSE(is_member(h, SiegelGroup::ParamodularK, N));
  CHECK(is_member(to_rational(identity4()), SiegelGroup::ParamodularK, N));
  CHECK_FALSE(is_member(to_rational(symplectic_form()), SiegelGroup::ParamodularK, N));
}

TEST_CASE("L matrix") {
  const SpRep L1 = L_matrix(1);
  CHECK(L1.matrix(0, 1) == 1);
  CHECK(L1.matrix(3, 2) == -1);
  CHECK(L1.similitude == 1);
  const SpRep L5 = L_matrix(5);
  CHECK(symplectic(L5.matrix));
  CHECK(L5.matrix(0, 1) == 5);
  CHECK(L5.matrix(3, 2) == -5);
  // Recorded, not asserted.
  MESSAGE("L_2 in K(4): " << is_member(to_rational(L_matrix(2).matrix), SiegelGroup::ParamodularK, 4));
}

TEST_CASE("double coset representatives") {
  const auto reps = double_coset_reps();
  for (const SpRep* g : {&reps.identity, &reps.s1, &reps.r}) {
    CHECK(g->similitude == 1);
    CHECK(symplectic(g->matrix));
  }
  const Mat4Z n = reps.r.matrix - identity4();
  CHECK((n * n).eval() == Mat4Z::Zero());
  CHECK((reps.s1.matrix * reps.s1.matrix).eval() == identity4());
  CHECK(reps.identity.matrix == identity4());
}

TEST_CASE("epsilon_cd") {
  const SpRep e10 = epsilon_cd(Integer(1), Integer(0));
  CHECK(e10.matrix.block(0, 0, 2, 2).eval() == mat2(0, -1, 1, 0));
  CHECK(e10.matrix.block(2, 2, 2, 2).eval() == mat2(0, -1, 1, 0));
  const SpRep e12 = epsilon_cd(Integer(1), Integer(2));
  CHECK(e12.matrix.block(0, 0, 2, 2).eval() == mat2(2, -1, 1, 0));
  CHECK(e12.matrix.block(2, 2, 2, 2).eval() == mat2(0, -1, 1, 2));
  CHECK_THROWS_AS(epsilon_cd(Integer(2), Integer(2)), std::invalid_argument);

  for (std::int64_t c = -20; c <= 20; ++c)
    for (std::int64_t d = -20; d <= 20; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const SpRep e = epsilon_cd(Integer(c), Integer(d));
      CHECK(is_member(e.matrix, SiegelGroup::Sp4Z));
      CHECK(e.matrix.block(2, 0, 2, 2).eval() == Mat2Z::Zero());
      CHECK(e.matrix(3, 2) == c);
      CHECK(e.matrix(3, 3) == d);
    }
}

TEST_CASE("H11 embedding") {
  const Mat2Z I = mat2(1, 0, 0, 1), S = mat2(0, 1, -1, 0);
  CHECK(embed_h11(I, I).matrix == identity4());
  const SpRep s = embed_h11(S, I);
  CHECK(s.similitude == 1);
  CHECK(symplectic(s.matrix));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const Mat2Z g = random_sl2(rng);
    CHECK(is_member(embed_h11(g, g).matrix, SiegelGroup::Sp4Z));
    CHECK(is_member(embed_h11(g, random_sl2(rng)).matrix, SiegelGroup::Sp4Z));
  }
  CHECK_THROWS_AS(embed_h11(mat2(2, 0, 0, 1), I), std::invalid_argument);
}

TEST_CASE("coset representatives") {
  const auto r11 = coset_reps(1, 1);
  REQUIRE(r11.size() == 4);
  const std::vector<std::pair<std::int64_t, std::int64_t>> rows{{0, 1}, {1, -1}, {1, 0}, {1, 1}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r11[i].c == rows[i].first);
    CHECK(r11[i].d == rows[i].second);
  }
  const auto r22 = coset_reps(2, 2);
  REQUIRE(r22.size() == 3);
  CHECK(r22[0].c == 0);
  CHECK(r22[1].c == 2);
  CHECK(r22[1].d == -1);
  CHECK(r22[2].d == 1);

  for (std::int64_t N : {1, 2, 4, 9}) {
    const auto reps = coset_reps(N, 12);
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (const auto& g : reps) {
      CHECK(is_member_gamma0(g.matrix, N));
      CHECK(g.a * g.d - g.b * g.c == 1);
      CHECK(seen.insert({g.c, g.d}).second);
    }
    // Stability under increasing height.
    const auto bigger = coset_reps(N, 20);
    std::set<std::pair<std::int64_t, std::int64_t>> rows_big;
    for (const auto& g : bigger) rows_big.insert({g.c, g.d});
    for (const auto& g : reps) CHECK(rows_big.count({g.c, g.d}) == 1);
    const auto again = coset_reps(N, 20);
    for (std::size_t i = 0; i < reps.size(); ++i) CHECK(again[i].matrix == bigger[i].matrix);
  }

  // Bijection onto normalized coprime pairs for N = 1, M = 3.
  std::set<std::pair<std::int64_t, std::int64_t>> expect;
  for (std::int64_t c = -3; c <= 3; ++c)
    for (std::int64_t d = -3; d <= 3; ++d) {
      if (std::gcd(c, d) != 1) continue;
      if (c > 0 || (c == 0 && d == 1)) expect.insert({c, d});
    }
  std::set<std::pair<std::int64_t, std::int64_t>> got;
  for (const auto& g : coset_reps(1, 3)) got.insert({g.c, g.d});
  CHECK(got == expect);
}

TEST_CASE("moebius action") {
  const std::complex<double> i(0.0, 1.0);
  const auto id = moebius(mat2(1, 0, 0, 1), std::complex<double>(0.3, 0.7));
  CHECK(id.image == std::complex<double>(0.3, 0.7));
  CHECK(id.j == 1.0);
  const auto s = moebius(mat2(0, 1, -1, 0), i);
  CHECK(std::abs(s.image - i) < 1e-15);
  CHECK(std::abs(s.j + i) < 1e-15);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> xs(-1.0, 1.0), ys(0.2, 2.0);
  for (int n = 0; n < 50; ++n) {
    const Mat2Z g = random_sl2(rng), h = random_sl2(rng);
    const std::complex<double> tau(xs(rng), ys(rng));
    const auto gh = moebius(Mat2Z((g * h).eval()), tau);
    const auto ht = moebius(h, tau);
    const auto g_ht = moebius(g, ht.image);
    CHECK(std::abs(gh.j - g_ht.j * ht.j) <= 1e-10 * std::abs(gh.j));
    const double expected = tau.imag() / std::norm(ht.j);
    CHECK(std::abs(ht.image.imag() - expected) <= 4.0 * std::numeric_limits<double>::epsilon() * expected);
    CHECK(ht.image.imag() > 0.0);
  }
}
