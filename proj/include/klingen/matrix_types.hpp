#pragma once

// Exact integer matrix types shared by the quadratic-form and symplectic code.

#include "klingen/foundations.hpp"

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

namespace klingen {

using Mat2Z = Eigen::Matrix<Integer, 2, 2>;
using Mat4Z = Eigen::Matrix<Integer, 4, 4>;
using Mat4Q = Eigen::Matrix<Rational, 4, 4>;

/// [[a, b], [c, d]] as a Mat2Z.
inline Mat2Z mat2(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  Mat2Z m;
  m << a, b, c, d;
  return m;
}

inline Integer det2(const Mat2Z& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace klingen
