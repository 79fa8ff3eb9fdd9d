#pragma once

// Truncated q-expansions with exact rational coefficients, and the elliptic
// modular forms of level one that the rest of the library is built on.

#include "klingen/foundations.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <stdexcept>
#include <vector>

namespace klingen {

/// sum_{n < order} c_n q^n, tagged with a weight and a level.
///
/// Immutable once built. Arithmetic between two series truncates to the
/// smaller order; it never pads.
class QSeries {
public:
  QSeries(std::vector<Rational> coeffs, int weight, std::int64_t level);

  static QSeries zero(std::size_t order, int weight = 0, std::int64_t level = 1);
  static QSeries one(std::size_t order, std::int64_t level = 1);

  std::size_t order() const { return coeffs_.size(); }
  int weight() const { return weight_; }
  std::int64_t level() const { return level_; }

  const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  QSeries truncated(std::size_t order) const;
  bool is_zero() const;

  friend bool operator==(const QSeries& a, const QSeries& b);

private:
  std::vector<Rational> coeffs_;
  int weight_;
  std::int64_t level_;
};

/// Sum of two series of equal weight. Level becomes the lcm.
QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
/// Cauchy product truncated to min(order); weights add, levels combine by lcm.
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(const Rational& s, const QSeries& a);

QSeries series_add(const QSeries& a, const QSeries& b);
QSeries series_mul(const QSeries& a, const QSeries& b);
QSeries series_pow(const QSeries& a, unsigned exponent);

/// E_k = 1 + (2 / zeta(1-k)) sum_{m>=1} sigma_{k-1}(m) q^m, k >= 4 even.
QSeries eisenstein_qexp(int k, std::size_t order);

/// Delta = q prod_{n>=1} (1 - q^n)^24, by repeated sparse multiplication.
QSeries delta_qexp(std::size_t order);

/// Weights for which S_k(SL(2,Z)) is one-dimensional.
bool is_builtin_eigenform_weight(int k);

/// The normalized cusp form Delta * E_{k-12} spanning S_k for a whitelisted k.
QSeries eigenform(int k, std::size_t order);

/// (T_p f)(n) = a(pn) + p^{k-1} a(n/p). The result has order floor(order/p).
QSeries hecke_apply(const QSeries& f, std::int64_t p, int k);

/// Integer coefficients a(0..order-1) of the built-in eigenform of weight k.
///
/// Computed by multi-modular number-theoretic-transform products of the
/// pentagonal series and integral Eisenstein series, reconstructed by CRT
/// against Deligne's bound |a(n)| <= d(n) n^{(k-1)/2}, and checked against
/// one spare prime. Agrees with eigenform(k, order) coefficientwise; used
/// where L-series cutoffs need far more terms than exact rational series
/// handle comfortably.
std::vector<Integer> eigenform_integer_coefficients(int k, std::size_t order);

/// Process-wide cache of eigenform_integer_coefficients converted to double.
/// Returns a table of at least `order` entries.
std::shared_ptr<const std::vector<double>> eigenform_coefficients_double(int k, std::size_t order);

enum class FormSource { builtin, ingested_file };

struct EigenformSpec {
  int weight;
  std::int64_t level;
  FormSource source;
};

struct IngestedForm {
  EigenformSpec spec;
  QSeries series;  // order = declared M + 1, constant term 0
};

class CoefficientFileError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads the line-oriented coefficient format:
///   weight k level N order M character trivial
///   n a(n)            (n = 1..M consecutive; a(n) integer or p/q)
/// '#' starts a comment. Throws CoefficientFileError on malformed input,
/// gaps, missing rows or a(1) != 1.
IngestedForm ingest_coefficients(std::istream& in);
IngestedForm ingest_coefficients(const std::filesystem::path& file);

}  // namespace klingen
