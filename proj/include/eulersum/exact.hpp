#ifndef EULERSUM_EXACT_HPP
#define EULERSUM_EXACT_HPP

// Exact rational arithmetic and the finite sequences built on it:
// harmonic-type numbers, Bernoulli numbers and binomial coefficients.

#include <gmpxx.h>

#include <mutex>
#include <string>
#include <vector>

#include "eulersum/errors.hpp"

namespace eulersum {

using BigInt = mpz_class;
/// GMP rationals are kept in canonical form by every arithmetic operation;
/// make_rational canonicalizes explicitly constructed values.
using BigRational = mpq_class;

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  require(den != 0, "make_rational: zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigRational make_rational(long num, long den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

/// 2^e for any integer e.
inline BigRational pow2(long e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? make_rational(BigInt(1), p) : BigRational(p);
}

inline BigInt ipow(long base, unsigned long e) {
  BigInt r;
  BigInt b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline BigRational pow(const BigRational& q, unsigned long e) {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), e);
  return make_rational(n, d);
}

inline std::string to_fraction_string(const BigRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p/q" or "p".
inline BigRational parse_rational(const std::string& s) {
  BigRational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw DomainError("not a rational: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

struct HarmonicKind {
  enum class Family { Plain, Semi, Alternating };

  Family family;
  int order;

  /// H_n^(p) = sum_{k<=n} k^-p
  static HarmonicKind plain(int p) { return {Family::Plain, p}; }
  /// S_n^(t) = sum_{k<=n} (2k-1)^-t
  static HarmonicKind semi(int t) { return {Family::Semi, t}; }
  /// H~_n^(b) = sum_{k<=n} (-1)^(k-1) k^-b
  static HarmonicKind alternating(int b) { return {Family::Alternating, b}; }
};

/// The n-th term (k-th summand) of the harmonic-type sum selected by `kind`.
inline BigRational harmonic_term(long k, HarmonicKind kind) {
  const auto e = static_cast<unsigned long>(kind.order);
  switch (kind.family) {
    case HarmonicKind::Family::Plain:
      return make_rational(BigInt(1), ipow(k, e));
    case HarmonicKind::Family::Semi:
      return make_rational(BigInt(1), ipow(2 * k - 1, e));
    case HarmonicKind::Family::Alternating:
      return make_rational(BigInt(k % 2 == 1 ? 1 : -1), ipow(k, e));
  }
  return 0;
}

inline BigRational harmonic(long n, HarmonicKind kind) {
  require(n >= 0, "harmonic: n must be nonnegative");
  require(kind.order >= 1, "harmonic: order must be >= 1");
  BigRational sum = 0;
  for (long k = 1; k <= n; ++k) sum += harmonic_term(k, kind);
  return sum;
}

/// C(n, k), zero outside 0 <= k <= n.
inline BigInt binomial_int(long n, long k) {
  require(n >= 0, "binomial: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline BigRational binomial(long n, long k) { return BigRational(binomial_int(n, k)); }

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Bernoulli numbers with B_1 = -1/2, from sum_{k<=n} C(n+1,k) B_k = 0.
inline BigRational bernoulli(int n) {
  require(n >= 0, "bernoulli: n must be nonnegative");
  if (n >= 3 && n % 2 == 1) return 0;

  static std::mutex mutex;
  static std::vector<BigRational> table{BigRational(1)};
  std::lock_guard<std::mutex> lock(mutex);
  while (static_cast<int>(table.size()) <= n) {
    const long m = static_cast<long>(table.size());
    BigRational acc = 0;
    for (long k = 0; k < m; ++k) {
      if (k >= 3 && k % 2 == 1) continue;
      acc += binomial(m + 1, k) * table[static_cast<size_t>(k)];
    }
    BigRational b = (m >= 3 && m % 2 == 1) ? BigRational(0) : BigRational(-acc / (m + 1));
    b.canonicalize();
    table.push_back(b);
  }
  return table[static_cast<size_t>(n)];
}

}  // namespace eulersum

#endif  // EULERSUM_EXACT_HPP
