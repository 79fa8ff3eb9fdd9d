#include "klingen/qseries.hpp"

#include "modular_ntt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>

namespace klingen {

namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

const int kBuiltinWeights[] = {12, 16, 18, 20, 22, 26};

void require_builtin(int k, const char* where) {
  if (!is_builtin_eigenform_weight(k))
    throw std::invalid_argument(std::string(where) + ": dim S_k(SL2(Z)) != 1 for k = " + std::to_string(k));
}

// 2 / zeta(1-k) as an exact integer; only called for k in {4, 6, 8, 10, 14}.
Integer integral_eisenstein_factor(int k) {
  const Rational c = Rational(2) / zeta_neg_odd(k);
  if (denominator(c) != 1) throw std::logic_error("integral_eisenstein_factor: non-integral constant");
  return numerator(c);
}

std::vector<Integer> delta_integer(std::size_t order) {
  std::vector<Integer> eta24(order, Integer(0));
  if (order == 0) return eta24;
  eta24[0] = 1;
  // Multiply in (1 - q^n) twenty-four times per n; only shifts below order matter.
  for (std::size_t n = 1; n + 1 < order; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = order - 1; i >= n; --i) eta24[i] -= eta24[i - n];
  std::vector<Integer> delta(order, Integer(0));
  for (std::size_t i = 1; i < order; ++i) delta[i] = eta24[i - 1];
  return delta;
}

std::vector<Integer> eisenstein_integer(int k, std::size_t order) {
  std::vector<Integer> e(order, Integer(0));
  if (order == 0) return e;
  e[0] = 1;
  if (k == 0) return e;
  const Integer c = integral_eisenstein_factor(k);
  for (std::size_t m = 1; m < order; ++m)
    e[m] = c * divisor_sum(static_cast<unsigned>(k - 1), static_cast<std::int64_t>(m));
  return e;
}

std::vector<Integer> convolve(const std::vector<Integer>& a, const std::vector<Integer>& b, std::size_t order) {
  std::vector<Integer> r(order, Integer(0));
  for (std::size_t i = 0; i < std::min(order, a.size()); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < order && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

QSeries from_integers(const std::vector<Integer>& v, int weight, std::int64_t level) {
  std::vector<Rational> c;
  c.reserve(v.size());
  for (const auto& x : v) c.emplace_back(x);
  return QSeries(std::move(c), weight, level);
}

// Residues mod p of the weight-k built-in eigenform, via eta^24 * E_{k-12}.
std::vector<std::uint64_t> eigenform_residues(int k, std::size_t order, const detail::NttPrime& prime) {
  const std::uint64_t p = prime.p;
  std::vector<std::uint64_t> eta(order, 0);
  for (std::int64_t m = 0;; ++m) {
    bool any = false;
    for (std::int64_t sm : {m, -m - 1}) {
      // Pentagonal exponents m(3m-1)/2 for m and -(m+1) cover every m in Z once.
      const std::int64_t e = sm * (3 * sm - 1) / 2;
      if (e < static_cast<std::int64_t>(order)) {
        any = true;
        eta[static_cast<std::size_t>(e)] = (sm % 2 == 0) ? 1 : p - 1;
      }
    }
    if (!any) break;
  }
  const auto e2 = detail::multiply_truncated(eta, eta, order, prime);
  const auto e4 = detail::multiply_truncated(e2, e2, order, prime);
  const auto e8 = detail::multiply_truncated(e4, e4, order, prime);
  const auto e16 = detail::multiply_truncated(e8, e8, order, prime);
  const auto e24 = detail::multiply_truncated(e16, e8, order, prime);
  std::vector<std::uint64_t> delta(order, 0);
  for (std::size_t i = 1; i < order; ++i) delta[i] = e24[i - 1];
  if (k == 12) return delta;

  const Integer c = integral_eisenstein_factor(k - 12);
  const std::uint64_t cp = static_cast<std::uint64_t>(((c % Integer(p)) + Integer(p)).convert_to<std::int64_t>()) % p;
  // sigma_{k-13}(m) mod p via a divisor sieve.
  std::vector<std::uint64_t> sigma(order, 0);
  for (std::size_t d = 1; d < order; ++d) {
    const std::uint64_t dp = detail::pow_mod(d % p, static_cast<std::uint64_t>(k - 13), p);
    for (std::size_t m = d; m < order; m += d) {
      sigma[m] += dp;
      if (sigma[m] >= p) sigma[m] -= p;
    }
  }
  std::vector<std::uint64_t> eis(order, 0);
  eis[0] = 1;
  for (std::size_t m = 1; m < order; ++m) eis[m] = detail::mul_mod(cp, sigma[m], p);
  return detail::multiply_truncated(delta, eis, order, prime);
}

}  // namespace

QSeries::QSeries(std::vector<Rational> coeffs, int weight, std::int64_t level)
    : coeffs_(std::move(coeffs)), weight_(weight), level_(level) {
  if (coeffs_.empty()) throw std::invalid_argument("QSeries: order must be positive");
  if (level_ < 1) throw std::invalid_argument("QSeries: level must be positive");
}

QSeries QSeries::zero(std::size_t order, int weight, std::int64_t level) {
  return QSeries(std::vector<Rational>(order, Rational(0)), weight, level);
}

QSeries QSeries::one(std::size_t order, std::int64_t level) {
  std::vector<Rational> c(order, Rational(0));
  if (!c.empty()) c[0] = 1;
  return QSeries(std::move(c), 0, level);
}

QSeries QSeries::truncated(std::size_t order) const {
  const std::size_t n = std::min(order, coeffs_.size());
  return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)), weight_,
                 level_);
}

bool QSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.weight_ == b.weight_ && a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  if (a.weight() != b.weight()) throw std::invalid_argument("series_add: weight mismatch");
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + b[i];
  return QSeries(std::move(c), a.weight(), lcm64(a.level(), b.level()));
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + Rational(-1) * b; }

QSeries operator*(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  return QSeries(std::move(c), a.weight() + b.weight(), lcm64(a.level(), b.level()));
}

QSeries operator*(const Rational& s, const QSeries& a) {
  std::vector<Rational> c(a.coefficients());
  for (auto& x : c) x *= s;
  return QSeries(std::move(c), a.weight(), a.level());
}

QSeries series_add(const QSeries& a, const QSeries& b) { return a + b; }
QSeries series_mul(const QSeries& a, const QSeries& b) { return a * b; }

QSeries series_pow(const QSeries& a, unsigned exponent) {
  QSeries result = QSeries::one(a.order(), a.level());
  QSeries base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

QSeries eisenstein_qexp(int k, std::size_t order) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("eisenstein_qexp: k must be even and >= 4");
  if (order == 0) throw std::invalid_argument("eisenstein_qexp: order must be positive");
  const Rational c = Rational(2) / zeta_neg_odd(k);
  std::vector<Rational> e(order, Rational(0));
  e[0] = 1;
  for (std::size_t m = 1; m < order; ++m)
    e[m] = c * Rational(divisor_sum(static_cast<unsigned>(k - 1), static_cast<std::int64_t>(m)));
  return QSeries(std::move(e), k, 1);
}

QSeries delta_qexp(std::size_t order) {
  if (order < 2) throw std::invalid_argument("delta_qexp: order must be >= 2");
  return from_integers(delta_integer(order), 12, 1);
}

bool is_builtin_eigenform_weight(int k) {
  return std::find(std::begin(kBuiltinWeights), std::end(kBuiltinWeights), k) != std::end(kBuiltinWeights);
}

QSeries eigenform(int k, std::size_t order) {
  require_builtin(k, "eigenform");
  if (order < 2) throw std::invalid_argument("eigenform: order must be >= 2");
  const auto delta = delta_integer(order);
  if (k == 12) return from_integers(delta, 12, 1);
  return from_integers(convolve(delta, eisenstein_integer(k - 12, order), order), k, 1);
}

QSeries hecke_apply(const QSeries& f, std::int64_t p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("hecke_apply: p must be prime");
  const std::size_t target = f.order() / static_cast<std::size_t>(p);
  if (target == 0) throw std::invalid_argument("hecke_apply: insufficient order for T_p");
  const Rational pk = Rational(ipow(Integer(p), static_cast<unsigned>(k - 1)));
  const auto up = static_cast<std::size_t>(p);
  std::vector<Rational> c(target);
  for (std::size_t n = 0; n < target; ++n) {
    c[n] = f[up * n];
    if (n % up == 0) c[n] += pk * f[n / up];
  }
  return QSeries(std::move(c), f.weight(), f.level());
}

std::vector<Integer> eigenform_integer_coefficients(int k, std::size_t order) {
  require_builtin(k, "eigenform_integer_coefficients");
  if (order < 2) throw std::invalid_argument("eigenform_integer_coefficients: order must be >= 2");
  if (order <= 64) return convolve(delta_integer(order), eisenstein_integer(k == 12 ? 0 : k - 12, order), order);

  // |a(n)| <= d(n) n^{(k-1)/2} <= 2 sqrt(n) n^{(k-1)/2}; the modulus must exceed twice that.
  const double nmax = static_cast<double>(order - 1);
  const double bits = 2.0 + std::log2(nmax) * (k / 2.0) + 8.0;
  std::size_t used = 0;
  double have = 0.0;
  while (have < bits) have += std::log2(static_cast<double>(detail::ntt_primes(used + 1)[used].p)), ++used;
  const auto& primes = detail::ntt_primes(used + 1);

  std::vector<Integer> x(order, Integer(0));
  Integer modulus = 1;
  for (std::size_t t = 0; t < used; ++t) {
    const auto res = eigenform_residues(k, order, primes[t]);
    const std::uint64_t p = primes[t].p;
    const Integer P(p);
    const std::uint64_t mmod = (modulus % P).convert_to<std::uint64_t>();
    const std::uint64_t inv = detail::pow_mod(mmod, p - 2, p);
    for (std::size_t n = 0; n < order; ++n) {
      const std::uint64_t xm = (x[n] % P).convert_to<std::uint64_t>();
      const std::uint64_t diff = (res[n] + p - xm) % p;
      const std::uint64_t tcoef = detail::mul_mod(diff, inv, p);
      if (tcoef != 0) x[n] += modulus * Integer(tcoef);
    }
    modulus *= P;
  }
  const Integer half = modulus / 2;
  for (auto& v : x)
    if (v > half) v -= modulus;

  const auto& spare = primes[used];
  const auto check = eigenform_residues(k, order, spare);
  const Integer S(spare.p);
  for (std::size_t n = 0; n < order; ++n) {
    Integer r = x[n] % S;
    if (r < 0) r += S;
    if (r.convert_to<std::uint64_t>() != check[n])
      throw std::runtime_error("eigenform_integer_coefficients: CRT reconstruction failed spare-prime check");
  }
  return x;
}

std::shared_ptr<const std::vector<double>> eigenform_coefficients_double(int k, std::size_t order) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(k);
  if (it != cache.end() && it->second->size() >= order) return it->second;
  const auto exact = eigenform_integer_coefficients(k, std::max<std::size_t>(order, 2));
  auto table = std::make_shared<std::vector<double>>(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) (*table)[i] = to_double(exact[i]);
  cache[k] = table;
  return table;
}

IngestedForm ingest_coefficients(std::istream& in) {
  std::string line;
  auto next_line = [&](std::vector<std::string>& tokens) {
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tokens.clear();
      for (std::string t; ls >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  };
  auto parse_int = [](const std::string& s, const char* what) {
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return static_cast<std::int64_t>(v);
    } catch (const std::exception&) {
      throw CoefficientFileError(std::string("coefficient file: bad ") + what + ": '" + s + "'");
    }
  };

  std::vector<std::string> tok;
  if (!next_line(tok)) throw CoefficientFileError("coefficient file: missing header");
  if (tok.size() != 8 || tok[0] != "weight" || tok[2] != "level" || tok[4] != "order" || tok[6] != "character")
    throw CoefficientFileError("coefficient file: header must read 'weight k level N order M character trivial'");
  if (tok[7] != "trivial") throw CoefficientFileError("coefficient file: only the trivial character is supported");
  const int k = static_cast<int>(parse_int(tok[1], "weight"));
  const std::int64_t level = parse_int(tok[3], "level");
  const std::int64_t m = parse_int(tok[5], "order");
  if (level < 1 || m < 1) throw CoefficientFileError("coefficient file: level and order must be positive");

  std::vector<Rational> coeffs(static_cast<std::size_t>(m) + 1, Rational(0));
  for (std::int64_t n = 1; n <= m; ++n) {
    if (!next_line(tok)) throw CoefficientFileError("coefficient file: missing coefficient a(" + std::to_string(n) + ")");
    if (tok.size() != 2) throw CoefficientFileError("coefficient file: expected 'n a(n)' on each row");
    const std::int64_t idx = parse_int(tok[0], "index");
    if (idx != n)
      throw CoefficientFileError("coefficient file: expected index " + std::to_string(n) + ", found " + tok[0]);
    try {
      coeffs[static_cast<std::size_t>(n)] = Rational(tok[1]);
    } catch (const std::exception&) {
      throw CoefficientFileError("coefficient file: bad coefficient '" + tok[1] + "'");
    }
  }
  if (next_line(tok)) throw CoefficientFileError("coefficient file: rows beyond the declared order");
  if (coeffs[1] != 1) throw CoefficientFileError("coefficient file: form is not normalized, a(1) != 1");
  return {{k, level, FormSource::ingested_file}, QSeries(std::move(coeffs), k, level)};
}

IngestedForm ingest_coefficients(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw CoefficientFileError("coefficient file: cannot open " + file.string());
  return ingest_coefficients(in);
}

}  // namespace klingen
