#pragma once

#include <cmath>
#include <complex>

namespace klingen {

/// Neumaier's variant of Kahan summation. The running compensation is kept
/// separately and folded in only by value(), so the result depends on the
/// order of additions and nothing else.
template <typename Real>
class CompensatedSum {
public:
  CompensatedSum() = default;
  explicit CompensatedSum(Real initial) : sum_(initial) {}

  CompensatedSum& operator+=(Real x) {
    const Real t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator+=(const CompensatedSum& other) {
    *this += other.sum_;
    *this += other.comp_;
    return *this;
  }

  Real value() const { return sum_ + comp_; }

private:
  Real sum_{0};
  Real comp_{0};
};

/// Componentwise compensated sum of complex numbers.
template <typename Real>
class CompensatedComplexSum {
public:
  CompensatedComplexSum& operator+=(const std::complex<Real>& z) {
    re_ += z.real();
    im_ += z.imag();
    return *this;
  }

  CompensatedComplexSum& operator+=(const CompensatedComplexSum& other) {
    re_ += other.re_;
    im_ += other.im_;
    return *this;
  }

  std::complex<Real> value() const { return {re_.value(), im_.value()}; }

private:
  CompensatedSum<Real> re_;
  CompensatedSum<Real> im_;
};

}  // namespace klingen
