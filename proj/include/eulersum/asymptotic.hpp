#ifndef EULERSUM_ASYMPTOTIC_HPP
#define EULERSUM_ASYMPTOTIC_HPP

// Certified asymptotic expansions f(n) = sum_{k<=K} sum_d c[k][d] n^-k (ln n)^d + R(n),
// |R(n)| <= E n^-(K+1) (1 + ln n)^D for every integer n >= M, and certified sums of
// such expansions over n >= M by Euler-Maclaurin.

#include <algorithm>
#include <vector>

#include "eulersum/bigreal.hpp"
#include "eulersum/errors.hpp"
#include "eulersum/exact.hpp"

namespace eulersum {

class AsymSeries {
 public:
  AsymSeries(int order, long threshold, mpfr_prec_t bits)
      : order_(order), threshold_(threshold), bits_(bits), coeffs_(static_cast<size_t>(order) + 1) {
    require(order >= 1 && threshold >= 2, "AsymSeries: bad order or threshold");
  }

  int order() const { return order_; }
  long threshold() const { return threshold_; }
  mpfr_prec_t bits() const { return bits_; }
  const Bound& error() const { return err_; }
  int error_log_degree() const { return err_log_; }

  /// Coefficient of n^-k (ln n)^d; zero when absent.
  BigReal coeff(int k, int d) const {
    const auto& row = coeffs_[static_cast<size_t>(k)];
    return d < static_cast<int>(row.size()) ? row[static_cast<size_t>(d)] : BigReal(0L, bits_);
  }
  int log_degree(int k) const { return static_cast<int>(coeffs_[static_cast<size_t>(k)].size()) - 1; }

  /// Adds c n^-k (ln n)^d, folding it into the error when k > order.
  void add_term(int k, int d, const BigReal& c) {
    if (k > order_) {
      add_error(c.abs_upper() * Bound::inv_pow(threshold_, k - order_ - 1), d);
      return;
    }
    auto& row = coeffs_[static_cast<size_t>(k)];
    if (static_cast<int>(row.size()) <= d) row.resize(static_cast<size_t>(d) + 1, BigReal(0L, bits_));
    row[static_cast<size_t>(d)] += c;
  }
  void add_term(int k, int d, const BigRational& c) { add_term(k, d, BigReal(c, bits_)); }

  /// Adds E n^-(order+1) (1 + ln n)^d to the error.
  void add_error(const Bound& e, int log_degree = 0) {
    err_ += e;
    err_log_ = std::max(err_log_, log_degree);
  }

  // --- building blocks, all in the variable n ---

  static AsymSeries constant(const BigReal& c, int order, long threshold) {
    AsymSeries r(order, threshold, c.precision());
    r.add_term(0, 0, c);
    return r;
  }

  /// n^-s
  static AsymSeries inv_power(int s, int order, long threshold, mpfr_prec_t bits) {
    AsymSeries r(order, threshold, bits);
    r.add_term(s, 0, BigRational(1));
    return r;
  }

  /// H_(c n) = ln n + ln c + gamma + 1/(2cn) - sum_j B_2j / (2j (cn)^2j). The
  /// remainder is bounded by the first omitted term.
  static AsymSeries harmonic(long c, int order, long threshold, const BigReal& gamma, const BigReal& log_c) {
    AsymSeries r(order, threshold, gamma.precision());
    r.add_term(0, 1, BigRational(1));
    r.add_term(0, 0, gamma + log_c);
    r.add_term(1, 0, make_rational(1, 2 * c));
    int j = 1;
    for (; 2 * j <= order; ++j) r.add_term(2 * j, 0, -harmonic_coeff(j, c));
    r.add_term(2 * j, 0, BigReal(abs(harmonic_coeff(j, c)), r.bits_));
    return r;
  }

  /// sum_{k > cn} k^-p for p >= 2, Euler-Maclaurin in cn. The remainder is
  /// bounded by the first omitted term.
  static AsymSeries power_tail(int p, long c, int order, long threshold, mpfr_prec_t bits) {
    require(p >= 2, "power_tail needs p >= 2");
    AsymSeries r(order, threshold, bits);
    r.add_term(p - 1, 0, pow_c(c, -(p - 1)) / (p - 1));
    r.add_term(p, 0, -pow_c(c, -p) / 2);
    int j = 1;
    for (; p + 2 * j - 1 <= order; ++j) r.add_term(p + 2 * j - 1, 0, power_tail_coeff(p, j, c));
    r.add_term(p + 2 * j - 1, 0, BigReal(abs(power_tail_coeff(p, j, c)), bits));
    return r;
  }

  /// (1 + c/n)^-b for |c| <= 1/2 with a geometric remainder bound.
  static AsymSeries neg_binomial(int b, const BigRational& c, int order, long threshold, mpfr_prec_t bits) {
    require(b >= 0, "neg_binomial needs b >= 0");
    AsymSeries r(order, threshold, bits);
    BigRational ck = 1;
    for (int k = 0; k <= order; ++k) {
      BigRational coeff = binomial(b + k - 1 < 0 ? 0 : b + k - 1, k) * ck;
      if (b == 0 && k > 0) coeff = 0;
      if (k % 2 == 1) coeff = -coeff;
      r.add_term(k, 0, coeff);
      ck *= c;
    }
    if (b > 0) {
      // Terms k > K: C(b+k-1,k)|c|^k n^-k, successive ratio <= (b+K+1)/(K+2) |c| / M.
      BigRational abs_c = abs(c);
      BigRational rho = BigRational(b + order + 1) / BigRational(order + 2) * abs_c / BigRational(threshold);
      require(rho < 1, "neg_binomial: threshold too small for convergence");
      BigRational first = binomial(b + order, order + 1) * pow(abs_c, static_cast<unsigned long>(order + 1));
      r.add_error(Bound::from_rational(first / (1 - rho)));
    }
    return r;
  }

  // --- ring operations ---

  friend AsymSeries operator+(const AsymSeries& a, const AsymSeries& b) { return combine(a, b, false); }
  friend AsymSeries operator-(const AsymSeries& a, const AsymSeries& b) { return combine(a, b, true); }

  friend AsymSeries operator*(const BigReal& c, const AsymSeries& a) {
    AsymSeries r(a.order_, a.threshold_, a.bits_);
    for (int k = 0; k <= a.order_; ++k) {
      for (int d = 0; d <= a.log_degree(k); ++d) r.add_term(k, d, c * a.coeff(k, d));
    }
    r.add_error(a.err_ * c.abs_upper(), a.err_log_);
    return r;
  }

  friend AsymSeries operator*(const AsymSeries& a, const AsymSeries& b) {
    require(a.threshold_ == b.threshold_, "AsymSeries: mismatched thresholds");
    const int order = std::min(a.order_, b.order_);
    AsymSeries r(order, a.threshold_, std::max(a.bits_, b.bits_));
    for (int ka = 0; ka <= a.order_; ++ka) {
      for (int da = 0; da <= a.log_degree(ka); ++da) {
        BigReal ca = a.coeff(ka, da);
        for (int kb = 0; kb <= b.order_; ++kb) {
          for (int db = 0; db <= b.log_degree(kb); ++db) r.add_term(ka + kb, da + db, ca * b.coeff(kb, db));
        }
      }
    }
    // f g - Pa Pb = (f - Pa) g + Pa (g - Pb), with |g| <= sup|Pb| + Eb M^-(Kb+1).
    auto [sa, la] = a.sup_bound();
    auto [sb, lb] = b.sup_bound();
    Bound g_sup = sb + b.err_ * Bound::inv_pow(a.threshold_, b.order_ + 1);
    r.add_error(a.err_ * Bound::inv_pow(a.threshold_, a.order_ - order) * g_sup, a.err_log_ + std::max(lb, b.err_log_));
    r.add_error(b.err_ * Bound::inv_pow(a.threshold_, b.order_ - order) * sa, b.err_log_ + la);
    return r;
  }

  /// S and D with |P(n)| <= S (1 + ln n)^D for n >= M.
  std::pair<Bound, int> sup_bound() const {
    Bound s;
    int deg = 0;
    for (int k = 0; k <= order_; ++k) {
      for (int d = 0; d <= log_degree(k); ++d) {
        BigReal c = coeff(k, d);
        if (c.is_exact() && mpfr_zero_p(c.mid())) continue;
        s += c.abs_upper() * Bound::inv_pow(threshold_, k);
        deg = std::max(deg, d);
      }
    }
    return {s, deg};
  }

  /// Error contributions of a tail sum.
  struct TailBreakdown {
    Bound euler_maclaurin;
    Bound expansion;
  };

  /// sum_{n >= M} f(n) with certified error, using `em_terms` Euler-Maclaurin corrections.
  BigReal tail_sum(int em_terms, TailBreakdown* breakdown = nullptr) const;

 private:
  static BigRational pow_c(long c, long e) {
    return e >= 0 ? BigRational(ipow(c, static_cast<unsigned long>(e))) : make_rational(BigInt(1), ipow(c, static_cast<unsigned long>(-e)));
  }
  static BigRational harmonic_coeff(int j, long c) { return bernoulli(2 * j) / BigRational(2 * j) * pow_c(c, -2 * j); }
  static BigRational power_tail_coeff(int p, int j, long c) {
    BigInt rising = 1;
    for (int i = 0; i < 2 * j - 1; ++i) rising *= p + i;
    return bernoulli(2 * j) / BigRational(factorial(static_cast<unsigned long>(2 * j))) * BigRational(rising) *
           pow_c(c, -(p + 2 * j - 1));
  }

  static AsymSeries combine(const AsymSeries& a, const AsymSeries& b, bool subtract) {
    require(a.threshold_ == b.threshold_, "AsymSeries: mismatched thresholds");
    const int order = std::min(a.order_, b.order_);
    AsymSeries r(order, a.threshold_, std::max(a.bits_, b.bits_));
    for (int k = 0; k <= a.order_; ++k) {
      for (int d = 0; d <= a.log_degree(k); ++d) r.add_term(k, d, a.coeff(k, d));
    }
    for (int k = 0; k <= b.order_; ++k) {
      for (int d = 0; d <= b.log_degree(k); ++d) r.add_term(k, d, subtract ? -b.coeff(k, d) : b.coeff(k, d));
    }
    r.add_error(a.err_ * Bound::inv_pow(a.threshold_, a.order_ - order), a.err_log_);
    r.add_error(b.err_ * Bound::inv_pow(b.threshold_, b.order_ - order), b.err_log_);
    return r;
  }

  int order_;
  long threshold_;
  mpfr_prec_t bits_;
  std::vector<std::vector<BigReal>> coeffs_;
  Bound err_;
  int err_log_ = 0;
};

namespace detail {

/// A function x^-e p(ln x) with p a polynomial with ball coefficients.
struct LogPolyTerm {
  int e;
  std::vector<BigReal> p;
};

/// Derivative of x^-e p(L): x^-(e+1) (-e p(L) + p'(L)).
inline LogPolyTerm derivative(const LogPolyTerm& t) {
  LogPolyTerm r{t.e + 1, {}};
  const size_t deg = t.p.size();
  r.p.reserve(deg);
  for (size_t d = 0; d < deg; ++d) {
    BigReal v = BigReal(-static_cast<long>(t.e), t.p[d].precision()) * t.p[d];
    if (d + 1 < deg) v += BigReal(static_cast<long>(d + 1), t.p[d].precision()) * t.p[d + 1];
    r.p.push_back(v);
  }
  return r;
}

/// Value at x = M of x^-e p(ln x).
inline BigReal evaluate(const LogPolyTerm& t, const BigReal& inv_m_pow, const BigReal& log_m) {
  BigReal acc(0L, log_m.precision());
  for (size_t d = t.p.size(); d-- > 0;) acc = acc * log_m + t.p[d];
  return acc * inv_m_pow;
}

/// I(e,d) = int_M^inf x^-e y^d dx with y = ln x + shift, for e > 1:
/// I(e,d) = M^(1-e) y_M^d / (e-1) + d/(e-1) I(e,d-1).
inline std::vector<BigReal> log_power_integrals(int e, int max_d, long m, const BigReal& y_m) {
  const mpfr_prec_t bits = y_m.precision();
  BigReal base = BigReal(make_rational(BigInt(1), ipow(m, static_cast<unsigned long>(e - 1))), bits);
  BigReal inv = BigReal(make_rational(1, e - 1), bits);
  std::vector<BigReal> out;
  BigReal y_pow(1L, bits);
  for (int d = 0; d <= max_d; ++d) {
    BigReal v = base * y_pow * inv;
    if (d > 0) v += BigReal(static_cast<long>(d), bits) * inv * out.back();
    out.push_back(v);
    y_pow = y_pow * y_m;
  }
  return out;
}

}  // namespace detail

inline BigReal AsymSeries::tail_sum(int em_terms, TailBreakdown* breakdown) const {
  require(em_terms >= 0, "tail_sum: negative Euler-Maclaurin order");
  const long m = threshold_;
  BigReal log_m = log(BigReal(m, bits_));
  BigReal result(0L, bits_);

  std::vector<detail::LogPolyTerm> terms;
  for (int k = 0; k <= order_; ++k) {
    bool any = false;
    for (int d = 0; d <= log_degree(k); ++d) {
      BigReal c = coeff(k, d);
      if (!(c.is_exact() && mpfr_zero_p(c.mid()))) any = true;
    }
    if (!any) continue;
    if (k < 2) throw DomainError("tail_sum: expansion does not decay fast enough to be summable");
    terms.push_back({k, coeffs_[static_cast<size_t>(k)]});
  }

  auto inv_m_pow = [&](int e) { return BigReal(make_rational(BigInt(1), ipow(m, static_cast<unsigned long>(e))), bits_); };

  // Integral of P over [M, inf).
  for (const auto& t : terms) {
    auto ints = detail::log_power_integrals(t.e, static_cast<int>(t.p.size()) - 1, m, log_m);
    for (size_t d = 0; d < t.p.size(); ++d) result += t.p[d] * ints[d];
  }
  // f(M)/2 and the Bernoulli corrections -B_2j/(2j)! f^(2j-1)(M).
  std::vector<detail::LogPolyTerm> deriv = terms;
  for (const auto& t : terms) result += mul_2exp(detail::evaluate(t, inv_m_pow(t.e), log_m), -1);
  for (int order = 1; order <= 2 * em_terms; ++order) {
    for (auto& t : deriv) t = detail::derivative(t);
    if (order % 2 == 1) {
      const int j = (order + 1) / 2;
      BigReal factor(-bernoulli(2 * j) / BigRational(factorial(static_cast<unsigned long>(2 * j))), bits_);
      for (const auto& t : deriv) result += factor * detail::evaluate(t, inv_m_pow(t.e), log_m);
    }
  }
  // Remainder: |R| <= C int_M^inf |P^(q)| with q = 2 em_terms (q = 1, C = 1/2 when em_terms = 0)
  // and C = 2 zeta(2m)/(2 pi)^(2m) <= 4 / (2 pi)^(2m) otherwise.
  if (em_terms == 0) {
    for (auto& t : deriv) t = detail::derivative(t);
  }
  Bound remainder;
  for (const auto& t : deriv) {
    auto ints = detail::log_power_integrals(t.e, static_cast<int>(t.p.size()) - 1, m, log_m);
    for (size_t d = 0; d < t.p.size(); ++d) remainder += t.p[d].abs_upper() * ints[d].abs_upper();
  }
  if (em_terms == 0) {
    remainder *= Bound(0.5);
  } else {
    Bound two_pi_lower;
    mpfr_const_pi(two_pi_lower.raw(), MPFR_RNDD);
    mpfr_mul_2si(two_pi_lower.raw(), two_pi_lower.get(), 1, MPFR_RNDD);
    Bound denom;
    mpfr_pow_ui(denom.raw(), two_pi_lower.get(), static_cast<unsigned long>(2 * em_terms), MPFR_RNDD);
    remainder = remainder * Bound(4.0) / denom;
  }
  result.add_error(remainder);
  if (breakdown) breakdown->euler_maclaurin = remainder;

  // Expansion error: sum_{n>=M} E n^-(K+1) (1+ln n)^D <= E (g(M) + int_M^inf g), g decreasing.
  if (!err_.is_zero()) {
    const int a = order_ + 1;
    const int deg = err_log_;
    BigReal y_m = log_m + BigReal(1L, bits_);
    // g decreasing on [M, inf) needs a (1 + ln M) > deg.
    if (mpfr_cmp_si(y_m.mid(), 0) <= 0 || a * y_m.to_double() <= deg + 1) {
      throw DomainError("tail_sum: expansion error term not decreasing past the threshold");
    }
    auto ints = detail::log_power_integrals(a, deg, m, y_m);
    BigReal y_pow = pow(y_m, static_cast<unsigned>(deg));
    Bound g_m = (inv_m_pow(a) * y_pow).abs_upper();
    Bound expansion = err_ * (g_m + ints[static_cast<size_t>(deg)].abs_upper());
    result.add_error(expansion);
    if (breakdown) breakdown->expansion = expansion;
  }
  return result;
}

}  // namespace eulersum

#endif  // EULERSUM_ASYMPTOTIC_HPP
