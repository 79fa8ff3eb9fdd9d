#include "klingen/symplectic.hpp"

#include <numeric>
#include <stdexcept>

namespace klingen {

namespace {

bool is_integral(const Rational& x) { return denominator(x) == 1; }

bool divisible(const Rational& x, std::int64_t N) { return is_integral(x / Rational(N)); }

}  // namespace

Mat4Z symplectic_form() {
  Mat4Z J = Mat4Z::Zero();
  J(0, 2) = 1;
  J(1, 3) = 1;
  J(2, 0) = -1;
  J(3, 1) = -1;
  return J;
}

Mat4Q to_rational(const Mat4Z& g) {
  Mat4Q q;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q(i, j) = Rational(g(i, j));
  return q;
}

Rational similitude_of(const Mat4Q& g) {
  const Mat4Q J = to_rational(symplectic_form());
  const Mat4Q m = g.transpose() * J * g;
  const Rational mu = m(0, 2);
  if (mu == 0) return 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (m(i, j) != mu * J(i, j)) return 0;
  return mu;
}

SpRep make_sprep(const Mat4Z& g) {
  const Rational mu = similitude_of(to_rational(g));
  if (mu == 0) throw std::invalid_argument("make_sprep: matrix is not a symplectic similitude");
  return {g, numerator(mu)};
}

bool is_member(const Mat4Q& g, SiegelGroup group, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("is_member: level must be positive");
  if (similitude_of(g) != 1) return false;
  switch (group) {
    case SiegelGroup::Sp4Z:
    case SiegelGroup::Gamma0_4:
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (!is_integral(g(i, j))) return false;
      if (group == SiegelGroup::Gamma0_4)
        for (int i = 2; i < 4; ++i)
          for (int j = 0; j < 2; ++j)
            if (!divisible(g(i, j), N)) return false;
      return true;
    case SiegelGroup::ParamodularK: {
      // Entry (i, j) must lie in scale[i][j] * Z, with scale -1 meaning N^{-1}.
      static constexpr int scale[4][4] = {{1, 0, 1, 1}, {1, 1, 1, -1}, {1, 0, 1, 1}, {0, 0, 0, 1}};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const Rational& x = g(i, j);
          if (scale[i][j] == 1 && !is_integral(x)) return false;
          if (scale[i][j] == 0 && !divisible(x, N)) return false;
          if (scale[i][j] == -1 && !is_integral(x * Rational(N))) return false;
        }
      return true;
    }
  }
  return false;
}

bool is_member(const Mat4Z& g, SiegelGroup group, std::int64_t N) { return is_member(to_rational(g), group, N); }

bool is_member_gamma0(const Mat2Z& g, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("is_member_gamma0: level must be positive");
  return det2(g) == 1 && g(1, 0) % N == 0;
}

SpRep L_matrix(std::int64_t N) {
  if (N < 1) throw std::invalid_argument("L_matrix: N must be positive");
  Mat4Z g = Mat4Z::Identity();
  g(0, 1) = N;
  g(3, 2) = -N;
  return make_sprep(g);
}

DoubleCosetReps double_coset_reps() {
  Mat4Z s1 = Mat4Z::Zero();
  s1(0, 1) = 1;
  s1(1, 0) = 1;
  s1(2, 3) = 1;
  s1(3, 2) = 1;
  Mat4Z r = Mat4Z::Identity();
  r(1, 0) = 1;
  r(2, 3) = -1;
  return {make_sprep(Mat4Z::Identity()), make_sprep(s1), make_sprep(r)};
}

SpRep epsilon_cd(const Integer& c, const Integer& d) {
  const auto [a, b] = complete_coprime_pair(c, d);
  Mat4Z g = Mat4Z::Zero();
  g(0, 0) = d;
  g(0, 1) = -c;
  g(1, 0) = -b;
  g(1, 1) = a;
  g(2, 2) = a;
  g(2, 3) = b;
  g(3, 2) = c;
  g(3, 3) = d;
  return make_sprep(g);
}

SpRep embed_h11(const Mat2Z& g1, const Mat2Z& g2) {
  if (det2(g1) != det2(g2)) throw std::invalid_argument("embed_h11: similitudes of g1 and g2 differ");
  if (det2(g1) == 0) throw std::invalid_argument("embed_h11: singular input");
  Mat4Z g = Mat4Z::Zero();
  g(0, 0) = g1(0, 0);
  g(0, 2) = -g1(0, 1);
  g(2, 0) = -g1(1, 0);
  g(2, 2) = g1(1, 1);
  g(1, 1) = g2(0, 0);
  g(1, 3) = g2(0, 1);
  g(3, 1) = g2(1, 0);
  g(3, 3) = g2(1, 1);
  return make_sprep(g);
}

std::vector<CosetRep> coset_reps(std::int64_t N, std::int64_t M) {
  if (N < 1 || M < 1) throw std::invalid_argument("coset_reps: N and M must be positive");
  std::vector<CosetRep> out;
  out.push_back({mat2(1, 0, 0, 1), 1, 0, 0, 1});
  for (std::int64_t c = N; c <= M; c += N) {
    for (std::int64_t d = -M; d <= M; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const auto [a, b] = complete_coprime_pair(Integer(c), Integer(d));
      out.push_back({mat2(a, b, Integer(c), Integer(d)), a.convert_to<std::int64_t>(), b.convert_to<std::int64_t>(),
                     c, d});
    }
  }
  return out;
}

}  // namespace klingen
