#include "klingen/quadforms.hpp"

#include "klingen/foundations.hpp"

#include <doctest.h>

#include <random>

using namespace klingen;

namespace {

// Random unimodular matrix as a product of elementary moves, entries <= 5.
Mat2Z random_unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> move(0, 3), shift(-2, 2);
  for (;;) {
    Mat2Z U = mat2(1, 0, 0, 1);
    for (int i = 0; i < 4; ++i) {
      const int m = shift(rng);
      switch (move(rng)) {
        case 0: U = (U * mat2(1, m, 0, 1)).eval(); break;
        case 1: U = (U * mat2(1, 0, m, 1)).eval(); break;
        case 2: U = (U * mat2(0, 1, 1, 0)).eval(); break;
        default: U = (U * mat2(-1, 0, 0, 1)).eval(); break;
      }
    }
    bool small = true;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) small = small && abs(U(i, j)) <= 5;
    if (small) return U;
  }
}

std::int64_t min_represented(const HalfIntMatrix& T) {
  std::int64_t best = 0;
  for (std::int64_t x = -30; x <= 30; ++x)
    for (std::int64_t y = -30; y <= 30; ++y) {
      const std::int64_t v = T(x, y);
      if (v > 0 && (best == 0 || v < best)) best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("lambda sets") {
  const auto l11 = lambda_set(1, 1);
  REQUIRE(l11.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(l11[static_cast<std::size_t>(i)].b == i - 2);
  const auto l10 = lambda_set(1, 0);
  REQUIRE(l10.size() == 1);
  CHECK(l10[0].b == 0);
  CHECK(lambda_set(1, 2).size() == 5);
  CHECK(lambda_set(2, 3).size() == 9);
  CHECK(lambda_set(0, 0).size() == 1);
}

TEST_CASE("discriminant split") {
  auto check = [](HalfIntMatrix T, std::int64_t f, std::int64_t D) {
    const auto s = disc_split(T);
    CHECK(s.f_T == f);
    CHECK(s.Delta_T == D);
  };
  check({1, 0, 1}, 1, 4);
  check({1, 1, 1}, 1, 3);
  check({1, 0, 4}, 2, 4);
  check({1, 0, 2}, 1, 8);
  check({2, 2, 2}, 2, 3);
  CHECK_THROWS_AS(disc_split(HalfIntMatrix{1, 2, 1}), std::invalid_argument);
  for (std::int64_t N = 3; N <= 10000; ++N) {
    if (N % 4 == 1 || N % 4 == 2) continue;
    const auto s = disc_split(N);
    CHECK(s.f_T * s.f_T * s.Delta_T == N);
    CHECK(is_fundamental_discriminant(-s.Delta_T));
  }
}

TEST_CASE("singular reduction") {
  CHECK(reduce_singular(HalfIntMatrix{1, 2, 1}) == 1);
  CHECK(reduce_singular(HalfIntMatrix{1, -2, 1}) == 1);
  CHECK(reduce_singular(HalfIntMatrix{3, 0, 0}) == 3);
  CHECK(reduce_singular(HalfIntMatrix{0, 0, 5}) == 5);
  CHECK(reduce_singular(HalfIntMatrix{4, 8, 4}) == 4);
  CHECK(reduce_singular(HalfIntMatrix{0, 0, 0}) == 0);
  CHECK_THROWS_AS(reduce_singular(HalfIntMatrix{1, 0, 1}), std::invalid_argument);
  // Witnesses, and the content against the minimum represented value.
  for (std::int64_t m = 1; m <= 4; ++m)
    for (std::int64_t x = -4; x <= 4; ++x)
      for (std::int64_t y = 0; y <= 4; ++y) {
        if (std::gcd(x, y) != 1) continue;
        const HalfIntMatrix T{m * x * x, 2 * m * x * y, m * y * y};
        const auto r = reduce_singular_with_witness(T);
        CHECK(r.content == m);
        CHECK(r.content == min_represented(T));
        CHECK(unimodular_transform(T, r.U) == HalfIntMatrix{m, 0, 0});
      }
}

TEST_CASE("unimodular transforms") {
  const HalfIntMatrix T{2, 1, 3};
  CHECK(unimodular_transform(T, mat2(1, 0, 0, 1)) == T);
  CHECK(unimodular_transform(HalfIntMatrix{1, 0, 0}, mat2(1, 1, 0, 1)) == HalfIntMatrix{1, 2, 1});
  CHECK_THROWS_AS(unimodular_transform(T, mat2(2, 0, 0, 1)), std::invalid_argument);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Mat2Z U = random_unimodular(rng);
    CHECK(unimodular_transform(T, U).det2() == T.det2());
  }
}

TEST_CASE("gauss reduction") {
  std::mt19937_64 rng(11);
  for (const HalfIntMatrix T : {HalfIntMatrix{5, 7, 3}, HalfIntMatrix{1, 0, 1}, HalfIntMatrix{7, -3, 2}}) {
    const auto g = gauss_reduce(T);
    CHECK(unimodular_transform(T, g.U) == g.reduced);
    CHECK(g.reduced.b >= 0);
    CHECK(g.reduced.b <= g.reduced.n1);
    CHECK(g.reduced.n1 <= g.reduced.n2);
    for (int i = 0; i < 10; ++i) CHECK(gauss_reduce(unimodular_transform(T, random_unimodular(rng))).reduced == g.reduced);
  }
}

TEST_CASE("theta coefficients") {
  const auto t1 = theta_coeffs(HalfIntMatrix{1, 0, 1}, 201);
  const auto t2 = theta_coeffs(HalfIntMatrix{1, 1, 1}, 10);
  CHECK(t1[0] == 1);
  CHECK(t1[1] == 4);
  CHECK(t2[0] == 1);
  CHECK(t2[1] == 6);
  CHECK(theta_coeffs(HalfIntMatrix{3, 1, 5}, 2)[0] == 1);
  CHECK_THROWS_AS(theta_coeffs(HalfIntMatrix{1, 2, 1}, 5), std::invalid_argument);

  SUBCASE("two squares") {
    for (std::int64_t n = 1; n <= 200; ++n) {
      std::int64_t d1 = 0, d3 = 0;
      for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) {
          if (d % 4 == 1) ++d1;
          if (d % 4 == 3) ++d3;
        }
      CHECK(t1[static_cast<std::size_t>(n)] == 4 * (d1 - d3));
    }
  }
  SUBCASE("unimodular invariance") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::int64_t> entry(1, 6), off(-6, 6);
    int done = 0;
    while (done < 20) {
      const HalfIntMatrix T{entry(rng), off(rng), entry(rng)};
      if (!T.is_positive_definite()) continue;
      const Mat2Z U = random_unimodular(rng);
      CHECK(theta_coeffs(T, 50) == theta_coeffs(unimodular_transform(T, U), 50));
      ++done;
    }
  }
  SUBCASE("growth constant") {
    for (const HalfIntMatrix T : {HalfIntMatrix{1, 0, 1}, HalfIntMatrix{1, 1, 1}, HalfIntMatrix{2, 1, 5}}) {
      const auto b = theta_coeffs(T, 3000);
      const double C = theta_bound_constant(T);
      for (std::size_t n = 1; n < b.size(); ++n) CHECK(double(b[n]) <= C * std::sqrt(double(n)) + 2.0);
    }
  }
  SUBCASE("symmetry under b -> -b") {
    for (std::int64_t b = 1; b <= 3; ++b)
      CHECK(theta_coeffs(HalfIntMatrix{2, b, 3}, 80) == theta_coeffs(HalfIntMatrix{2, -b, 3}, 80));
  }
}
