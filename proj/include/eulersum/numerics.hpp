#ifndef EULERSUM_NUMERICS_HPP
#define EULERSUM_NUMERICS_HPP

// Certified numerical constants and evaluation of symbolic expressions.

#include <mpfr.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "eulersum/bigreal.hpp"
#include "eulersum/errors.hpp"
#include "eulersum/exact.hpp"
#include "eulersum/symexpr.hpp"

namespace eulersum {

struct PrecisionContext {
  int working_bits = 192;
  int guard_bits = 32;

  PrecisionContext() = default;
  PrecisionContext(int working, int guard = 32) : working_bits(working), guard_bits(guard) { validate(); }

  void validate() const {
    require(working_bits >= 64, "working_bits must be >= 64");
    require(guard_bits > 0 && guard_bits < working_bits, "guard_bits must lie in (0, working_bits)");
  }

  /// Bits of relative accuracy every public result must carry.
  int contract_bits() const { return working_bits - guard_bits; }
  mpfr_prec_t bits() const { return working_bits; }
};

namespace detail {

enum class ConstKind { Pi, Log2, Gamma, Li4Half, Zeta };

inline BigReal from_mpfr_constant(int (*fn)(mpfr_ptr, mpfr_rnd_t), mpfr_prec_t bits) {
  Mpfr v(bits);
  int t = fn(v.get(), MPFR_RNDN);
  // Correctly rounded: one ulp covers the rounding error.
  Bound err = t == 0 ? Bound() : Bound::pow2(mpfr_get_exp(v.get()) - bits);
  return BigReal(v.get(), err);
}

inline BigReal li4_half_series(mpfr_prec_t bits) {
  const long n_terms = static_cast<long>(bits) + 8;
  BigReal sum(0L, bits);
  for (long n = 1; n <= n_terms; ++n) {
    sum += BigReal(make_rational(BigInt(1), BigInt(ipow(2, static_cast<unsigned long>(n)) * ipow(n, 4))), bits);
  }
  // sum_{n>N} 2^-n n^-4 <= 2^-N (N+1)^-4
  sum.add_error(Bound::pow2(-n_terms) * Bound::inv_pow(n_terms + 1, 4));
  return sum;
}

/// zeta(s) by Euler-Maclaurin with N direct terms; the remainder after the
/// last correction term is bounded by the first omitted term.
inline BigReal zeta_em_impl(int s, mpfr_prec_t bits) {
  const mpfr_prec_t wp = bits + 24;
  const long target = -(static_cast<long>(bits) + 8);
  for (long n_direct = std::max<long>(16, static_cast<long>(bits) / 3);; n_direct *= 2) {
    BigReal sum(0L, wp);
    for (long n = 1; n < n_direct; ++n) sum += BigReal(make_rational(BigInt(1), ipow(n, static_cast<unsigned long>(s))), wp);
    auto inv_pow_n = [&](long e) { return BigReal(make_rational(BigInt(1), ipow(n_direct, static_cast<unsigned long>(e))), wp); };
    sum += BigReal(make_rational(BigInt(1), BigInt(s - 1)), wp) * inv_pow_n(s - 1);
    sum += mul_2exp(inv_pow_n(s), -1);
    // Rising factorial (s)_{2j-1} updated incrementally.
    BigInt rising(s);
    BigRational prev_mag = -1;
    for (int j = 1; j < 4 * static_cast<int>(bits); ++j) {
      if (j > 1) rising *= BigInt(s + 2 * j - 3) * BigInt(s + 2 * j - 2);
      BigRational coeff = bernoulli(2 * j) * BigRational(rising) / BigRational(factorial(static_cast<unsigned long>(2 * j)));
      BigRational term = coeff / BigRational(ipow(n_direct, static_cast<unsigned long>(s + 2 * j - 1)));
      BigRational mag = abs(term);
      if (prev_mag >= 0 && mag > prev_mag) break;  // asymptotic series started to diverge
      if (mpz_sizeinbase(mag.get_den_mpz_t(), 2) - mpz_sizeinbase(mag.get_num_mpz_t(), 2) > static_cast<size_t>(-target) + 2) {
        // |term| < 2^target: stop and charge it as the remainder.
        sum.add_error(Bound::from_rational(mag));
        return sum;
      }
      sum += BigReal(term, wp);
      prev_mag = mag;
    }
  }
}

class ConstantCache {
 public:
  static ConstantCache& instance() {
    static ConstantCache cache;
    return cache;
  }

  template <class Fn>
  BigReal get(ConstKind kind, int arg, mpfr_prec_t bits, Fn&& compute) {
    const auto key = std::make_tuple(static_cast<int>(kind), arg, static_cast<long>(bits));
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = values_.find(key);
      if (it != values_.end()) return it->second;
    }
    BigReal v = compute();
    std::lock_guard<std::mutex> lock(mutex_);
    return values_.try_emplace(key, v).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, long>, BigReal> values_;
};

}  // namespace detail

inline BigReal const_pi(const PrecisionContext& ctx) {
  ctx.validate();
  return detail::ConstantCache::instance().get(detail::ConstKind::Pi, 0, ctx.bits(),
                                               [&] { return detail::from_mpfr_constant(mpfr_const_pi, ctx.bits()); });
}

inline BigReal const_log2(const PrecisionContext& ctx) {
  ctx.validate();
  return detail::ConstantCache::instance().get(detail::ConstKind::Log2, 0, ctx.bits(),
                                               [&] { return detail::from_mpfr_constant(mpfr_const_log2, ctx.bits()); });
}

inline BigReal const_gamma(const PrecisionContext& ctx) {
  ctx.validate();
  return detail::ConstantCache::instance().get(detail::ConstKind::Gamma, 0, ctx.bits(),
                                               [&] { return detail::from_mpfr_constant(mpfr_const_euler, ctx.bits()); });
}

inline BigReal li4_half_num(const PrecisionContext& ctx) {
  ctx.validate();
  return detail::ConstantCache::instance().get(detail::ConstKind::Li4Half, 0, ctx.bits(),
                                               [&] { return detail::li4_half_series(ctx.bits()); });
}

/// Exact partial sum sum_{n<=N} 1/(2^n n^4).
inline BigRational li4_half_partial(long n_terms) {
  require(n_terms >= 0, "li4_half_partial: negative term count");
  BigRational sum = 0;
  for (long n = 1; n <= n_terms; ++n) {
    sum += make_rational(BigInt(1), ipow(2, static_cast<unsigned long>(n)) * ipow(n, 4));
  }
  return sum;
}

/// zeta(s) by direct Euler-Maclaurin summation, for any s >= 2.
inline BigReal zeta_em(int s, const PrecisionContext& ctx) {
  require(s >= 2, "zeta needs s >= 2, got " + std::to_string(s));
  ctx.validate();
  return detail::zeta_em_impl(s, ctx.bits());
}

inline BigReal eval_sym(const SymExpr& e, const PrecisionContext& ctx);

/// zeta(s): even s through the Bernoulli closed form, odd s by Euler-Maclaurin.
inline BigReal zeta_num(int s, const PrecisionContext& ctx) {
  require(s >= 2, "zeta needs s >= 2, got " + std::to_string(s));
  ctx.validate();
  if (s % 2 == 0) return eval_sym(zeta_sym(s), ctx);
  return detail::ConstantCache::instance().get(detail::ConstKind::Zeta, s, ctx.bits(),
                                               [&] { return detail::zeta_em_impl(s, ctx.bits()); });
}

inline BigReal atom_value(const Atom& a, const PrecisionContext& ctx) {
  switch (a.kind) {
    case Atom::Kind::Pi:
      return const_pi(ctx);
    case Atom::Kind::Log2:
      return const_log2(ctx);
    case Atom::Kind::Li4Half:
      return li4_half_num(ctx);
    case Atom::Kind::OddZeta:
      return zeta_num(a.arg, ctx);
  }
  throw DomainError("unknown atom");
}

/// Evaluates `e` with certified error; throws PrecisionExhausted when the
/// result carries fewer than ctx.contract_bits() bits of relative accuracy.
inline BigReal eval_sym_unchecked(const SymExpr& e, const PrecisionContext& ctx) {
  ctx.validate();
  BigReal sum(0L, ctx.bits());
  for (const auto& [m, c] : e.terms()) {
    BigReal term(c, ctx.bits());
    for (const auto& [atom, exponent] : m.factors()) term *= pow(atom_value(atom, ctx), static_cast<unsigned>(exponent));
    sum += term;
  }
  return sum;
}

inline BigReal eval_sym(const SymExpr& e, const PrecisionContext& ctx) {
  BigReal v = eval_sym_unchecked(e, ctx);
  if (e.is_zero()) return v;
  if (!v.accurate_to(ctx.contract_bits())) {
    throw PrecisionExhausted("cancellation consumed the guard bits while evaluating " + e.to_string());
  }
  return v;
}

/// Decimal digits of `x` that the ball certifies (at least 1 unless the
/// ball contains zero).
inline int certified_digits(const BigReal& x) {
  if (mpfr_zero_p(x.mid())) return 0;
  const double bits_total = static_cast<double>(x.precision());
  if (x.is_exact()) return static_cast<int>(bits_total * std::log10(2.0));
  if (x.contains_zero()) return 0;
  // log10(|mid| / rad) computed in double exponent space to avoid underflow.
  long e_mid = 0, e_rad = 0;
  double m = mpfr_get_d_2exp(&e_mid, x.mid(), MPFR_RNDN);
  double r = mpfr_get_d_2exp(&e_rad, x.radius().get(), MPFR_RNDU);
  double ratio = std::log10(std::fabs(m) / r) + static_cast<double>(e_mid - e_rad) * std::log10(2.0);
  int d = static_cast<int>(std::floor(ratio)) - 1;
  d = std::min(d, static_cast<int>(bits_total * std::log10(2.0)));
  return std::max(d, 0);
}

/// Rounds the midpoint to its certified digits. A ball that contains zero
/// renders as "0".
inline std::string to_decimal(const BigReal& x, int max_digits = 40) {
  int digits = std::min(certified_digits(x), max_digits);
  if (digits <= 0) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNg", digits, x.mid());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

inline std::string bound_string(const Bound& b) {
  if (b.is_zero()) return "0";
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.2RUe", b.get());
  return buf;
}

}  // namespace eulersum

#endif  // EULERSUM_NUMERICS_HPP
