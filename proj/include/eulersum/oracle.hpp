#ifndef EULERSUM_ORACLE_HPP
#define EULERSUM_ORACLE_HPP

// Direct summation of every series family with a certified tail: an exact-order
// ball prefix for n < M plus an asymptotic expansion of the summand in 1/n
// summed over n >= M by Euler-Maclaurin. Alternating series are paired first.

#include <type_traits>

#include "eulersum/asymptotic.hpp"
#include "eulersum/numerics.hpp"
#include "eulersum/sum_id.hpp"

namespace eulersum {

struct OracleConfig {
  double target_tolerance = 1e-10;
  long max_terms = 10'000'000;
  int tail_order = 4;

  void validate(const PrecisionContext& ctx) const {
    if (!(target_tolerance > 0)) throw DomainError("oracle: target tolerance must be positive");
    if (max_terms < 1) throw DomainError("oracle: max_terms must be positive");
    if (tail_order < 0) throw DomainError("oracle: tail_order must be nonnegative");
    if (Bound(target_tolerance) < Bound::pow2(-ctx.contract_bits())) {
      throw DomainError("oracle: target tolerance finer than the precision context supports");
    }
  }
};

struct OracleResult {
  BigReal value;
  Bound achieved_bound;
  long terms_used;
};

namespace detail {

/// Produces the summand of the defining series for n = 1, 2, ... in order.
/// T is BigRational for exact prefixes or BigReal for balls.
template <class T>
class TermWalker {
 public:
  TermWalker(const SumId& id, mpfr_prec_t bits) : id_(id), bits_(bits), h_(from(0)) {}

  long index() const { return n_; }

  T next() {
    const long n = ++n_;
    const int p1 = id_.p1();
    const int p2 = id_.p2();
    switch (id_.family()) {
      case Family::J:
        h_ += recip_pow(2 * n - 1, 1);
        return h_ * recip_pow(n, p1);
      case Family::Jbar:
        h_ += recip_pow(2 * n - 1, 1);
        return h_ * recip_pow(2 * n - 1, p1);
      case Family::Sigma:
        h_ += recip_pow(2 * n - 1, p2);
        return h_ * recip_pow(n, p1);
      case Family::HOverOdd:
        h_ += recip_pow(n, 1);
        return h_ * recip_pow(2 * n + 1, p1);
      case Family::Z:
        h_ += recip_pow(2 * n - 1, 1) + recip_pow(2 * n, 1);
        return h_ * recip_pow(n, 2 * p1);
      case Family::HoddOverOdd: {
        h_ += recip_pow(2 * n - 1, 1);
        T term = h_ * recip_pow(2 * n - 1, 2 * p1);
        h_ += recip_pow(2 * n, 1);
        return term;
      }
      case Family::EulerStar:
        h_ += recip_pow(n, 1);
        return h_ * recip_pow(n, p1);
      case Family::AltEulerStar: {
        h_ += recip_pow(n, 1);
        T term = h_ * recip_pow(n, 2 * p1);
        return n % 2 == 1 ? term : T(-term);
      }
      case Family::ZetaStar:
        h_ += recip_pow(n, p2);
        return h_ * recip_pow(n, p1);
      case Family::AltTildeH: {
        T term = h_ * recip_pow(n, 1);
        if (n % 2 == 1) term = -term;
        T inc = recip_pow(n, 2 * p1);
        h_ += n % 2 == 1 ? inc : T(-inc);
        return term;
      }
      case Family::E:
        h_ += recip_pow(2 * n - 1, p1) + recip_pow(2 * n, p1);
        return h_ * recip_pow(n, p2);
    }
    throw DomainError("unknown family");
  }

 private:
  T from(const BigRational& q) const {
    if constexpr (std::is_same_v<T, BigRational>) {
      return q;
    } else {
      return T(q, bits_);
    }
  }
  T recip_pow(long k, int e) const { return from(make_rational(BigInt(1), ipow(k, static_cast<unsigned long>(e)))); }

  SumId id_;
  mpfr_prec_t bits_;
  long n_ = 0;
  T h_;
};

/// Number of raw series terms per tail index: paired series advance two at a time.
inline long stride(Family f) { return f == Family::AltEulerStar || f == Family::AltTildeH ? 2 : 1; }

/// Constants the tail expansions need, evaluated once per oracle call.
struct TailConstants {
  BigReal gamma;
  BigReal ln2;
  BigReal zero;
};

/// Expansion in u = 1/m of the m-th tail summand (the m-th pair for alternating
/// families), valid for m >= threshold.
inline AsymSeries summand_expansion(const SumId& id, int order, long m, const TailConstants& k,
                                    const PrecisionContext& ctx) {
  const mpfr_prec_t bits = k.gamma.precision();
  auto H = [&](long c) { return AsymSeries::harmonic(c, order, m, k.gamma, c == 1 ? k.zero : k.ln2); };
  auto U = [&](int s) { return AsymSeries::inv_power(s, order, m, bits); };
  auto T = [&](int p, long c) { return AsymSeries::power_tail(p, c, order, m, bits); };
  auto C = [&](const BigReal& v) { return AsymSeries::constant(v, order, m); };
  auto R = [&](const BigRational& q) { return BigReal(q, bits); };
  // (2m - 1)^-b and (2m + 1)^-b
  auto odd_minus = [&](int b) { return R(pow2(-b)) * (U(b) * AsymSeries::neg_binomial(b, make_rational(-1, 2), order, m, bits)); };
  auto odd_plus = [&](int b) { return R(pow2(-b)) * (U(b) * AsymSeries::neg_binomial(b, make_rational(1, 2), order, m, bits)); };
  auto S = [&]() { return H(2) - R(make_rational(1, 2)) * H(1); };

  const int p1 = id.p1();
  const int p2 = id.p2();
  switch (id.family()) {
    case Family::J:
      return S() * U(p1);
    case Family::Jbar:
      return S() * odd_minus(p1);
    case Family::Sigma: {
      if (p2 == 1) return S() * U(p1);
      // S_n^(t) = lambda(t) - r_n, r_n = T_t(2n) - 2^-t T_t(n)
      BigReal lam = eval_sym(lambda_sym(p2), ctx);
      AsymSeries r = T(p2, 2) - R(pow2(-p2)) * T(p2, 1);
      return (C(lam) - r) * U(p1);
    }
    case Family::HOverOdd:
      return H(1) * odd_plus(p1);
    case Family::Z:
      return H(2) * U(2 * p1);
    case Family::HoddOverOdd:
      return (H(2) - R(make_rational(1, 2)) * U(1)) * odd_minus(2 * p1);
    case Family::EulerStar:
      return H(1) * U(p1);
    case Family::AltEulerStar: {
      // H_(2m-1)/(2m-1)^2a - H_2m/(2m)^2a
      AsymSeries odd = (H(2) - R(make_rational(1, 2)) * U(1)) * odd_minus(2 * p1);
      AsymSeries even = R(pow2(-2 * p1)) * (H(2) * U(2 * p1));
      return odd - even;
    }
    case Family::ZetaStar:
      if (p2 == 1) return H(1) * U(p1);
      return (C(zeta_num(p2, ctx)) - T(p2, 1)) * U(p1);
    case Family::E:
      if (p1 == 1) return H(2) * U(p2);
      return (C(zeta_num(p1, ctx)) - T(p1, 2)) * U(p2);
    case Family::AltTildeH: {
      // -H~_(2m-2)/((2m-1) 2m) + (2m)^-1 (2m-1)^-2a with
      // H~_(2m-2) = eta(2a) - [T(2m) + (2m-1)^-2a + (2m)^-2a - 2^(1-2a) (T(m) + m^-2a)]
      const int e = 2 * p1;
      BigReal eta = eval_sym(eta_sym(e), ctx);
      AsymSeries alt_tail = T(e, 2) + odd_minus(e) + R(pow2(-e)) * U(e) - R(pow2(1 - e)) * (T(e, 1) + U(e));
      AsymSeries h_tilde = C(eta) - alt_tail;
      AsymSeries pair_weight = R(make_rational(1, 4)) * (U(2) * AsymSeries::neg_binomial(1, make_rational(-1, 2), order, m, bits));
      return R(make_rational(1, 2)) * (U(1) * odd_minus(e)) - h_tilde * pair_weight;
    }
  }
  throw DomainError("unknown family");
}

}  // namespace detail

/// Exact rational value of the first n_terms terms of the defining series.
inline BigRational partial_sum(const SumId& id, long n_terms) {
  if (n_terms < 1) throw DomainError("partial_sum: n_terms must be positive");
  detail::TermWalker<BigRational> walker(id, 0);
  BigRational sum = 0;
  for (long i = 0; i < n_terms; ++i) sum += walker.next();
  return sum;
}

/// Certified value of the series named by id to within cfg.target_tolerance.
inline OracleResult oracle_eval(const SumId& id, const OracleConfig& cfg, const PrecisionContext& ctx) {
  cfg.validate(ctx);
  SumId::make(id.family(), id.p1(), id.p2());  // rejects divergent parameters
  const mpfr_prec_t bits = ctx.bits();
  const detail::TailConstants constants{const_gamma(ctx), const_log2(ctx), BigReal(0L, bits)};
  const Bound tol(cfg.target_tolerance);
  const long step = detail::stride(id.family());

  detail::TermWalker<BigReal> walker(id, bits);
  BigReal prefix(0L, bits);
  const int max_order = 96;
  for (long m = 16;; m *= 2) {
    const long raw_terms = step * (m - 1);
    if (raw_terms > cfg.max_terms) break;
    while (walker.index() < raw_terms) prefix += walker.next();
    for (int order = 16; order <= max_order; order += 16) {
      AsymSeries expansion = detail::summand_expansion(id, order, m, constants, ctx);
      AsymSeries::TailBreakdown parts;
      BigReal value = prefix + expansion.tail_sum(cfg.tail_order, &parts);
      if (value.radius() <= tol) return {value, value.radius(), raw_terms};
      // A larger order only helps while the expansion error dominates.
      if (parts.expansion <= parts.euler_maclaurin) break;
    }
  }
  throw BudgetExhausted("oracle: " + id.to_string() + " cannot be certified to the requested tolerance within " +
                        std::to_string(cfg.max_terms) + " terms");
}

}  // namespace eulersum

#endif  // EULERSUM_ORACLE_HPP
