#ifndef EULERSUM_BIGREAL_HPP
#define EULERSUM_BIGREAL_HPP

// Midpoint-radius ("ball") reals on top of MPFR. Every operation rounds the
// midpoint to nearest and folds the rounding error into an upward-rounded
// radius, so |true value - mid| <= rad holds for every result.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "eulersum/errors.hpp"
#include "eulersum/exact.hpp"

namespace eulersum {

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

constexpr mpfr_prec_t kBoundBits = 64;

}  // namespace detail

/// A nonnegative upper bound; all arithmetic rounds toward +infinity.
class Bound {
 public:
  Bound() : v_(detail::kBoundBits) {}
  Bound(double x) : v_(detail::kBoundBits) {  // NOLINT: implicit by design of call sites
    mpfr_set_d(v_.get(), std::fabs(x), MPFR_RNDU);
  }

  static Bound from_mpfr_abs(mpfr_srcptr x) {
    Bound b;
    mpfr_abs(b.v_.get(), x, MPFR_RNDU);
    return b;
  }
  static Bound from_rational(const BigRational& q) {
    Bound b;
    mpfr_set_q(b.v_.get(), q.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(b.v_.get(), b.v_.get(), MPFR_RNDU);
    return b;
  }
  /// 2^e
  static Bound pow2(long e) {
    Bound b;
    mpfr_set_ui_2exp(b.v_.get(), 1, e, MPFR_RNDU);
    return b;
  }
  /// Upper bound on ln(n) for n >= 1.
  static Bound log_of(long n) {
    Bound b;
    mpfr_set_si(b.v_.get(), n, MPFR_RNDU);
    mpfr_log(b.v_.get(), b.v_.get(), MPFR_RNDU);
    if (mpfr_sgn(b.v_.get()) < 0) mpfr_set_zero(b.v_.get(), 1);
    return b;
  }
  /// Upper bound on n^-e for n >= 1 and integer e >= 0.
  static Bound inv_pow(long n, long e) {
    Bound b;
    mpfr_set_si(b.v_.get(), n, MPFR_RNDD);
    mpfr_pow_si(b.v_.get(), b.v_.get(), -e, MPFR_RNDU);
    return b;
  }

  Bound& operator+=(const Bound& o) {
    mpfr_add(v_.get(), v_.get(), o.v_.get(), MPFR_RNDU);
    return *this;
  }
  Bound& operator*=(const Bound& o) {
    mpfr_mul(v_.get(), v_.get(), o.v_.get(), MPFR_RNDU);
    return *this;
  }
  /// Divides by a positive lower bound `o`.
  Bound& operator/=(const Bound& o) {
    mpfr_div(v_.get(), v_.get(), o.v_.get(), MPFR_RNDU);
    return *this;
  }
  friend Bound operator+(Bound a, const Bound& b) { return a += b; }
  friend Bound operator*(Bound a, const Bound& b) { return a *= b; }
  friend Bound operator/(Bound a, const Bound& b) { return a /= b; }

  friend bool operator<=(const Bound& a, const Bound& b) { return mpfr_lessequal_p(a.v_.get(), b.v_.get()); }
  friend bool operator<(const Bound& a, const Bound& b) { return mpfr_less_p(a.v_.get(), b.v_.get()); }

  bool is_zero() const { return mpfr_zero_p(v_.get()); }
  double to_double() const { return mpfr_get_d(v_.get(), MPFR_RNDU); }
  mpfr_srcptr get() const { return v_.get(); }
  mpfr_ptr raw() { return v_.get(); }

  /// Short scientific rendering, rounded upward ("1.3e-42").
  std::string to_string() const {
    if (is_zero()) return "0";
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.1RUe", v_.get());
    return buf;
  }

 private:
  detail::Mpfr v_;
};

class BigReal {
 public:
  explicit BigReal(mpfr_prec_t bits = 64) : mid_(bits) {}

  BigReal(long v, mpfr_prec_t bits) : mid_(bits) {
    if (mpfr_set_si(mid_.get(), v, MPFR_RNDN) != 0) add_ulp();
  }

  BigReal(const BigRational& q, mpfr_prec_t bits) : mid_(bits) {
    if (mpfr_set_q(mid_.get(), q.get_mpq_t(), MPFR_RNDN) != 0) add_ulp();
  }

  /// Wraps an MPFR value whose error is at most `err`.
  BigReal(mpfr_srcptr value, const Bound& err) : mid_(mpfr_get_prec(value)), rad_(err) {
    mpfr_set(mid_.get(), value, MPFR_RNDN);
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(mid_.get()); }
  mpfr_srcptr mid() const { return mid_.get(); }
  const Bound& radius() const { return rad_; }
  bool is_exact() const { return rad_.is_zero(); }

  BigReal& add_error(const Bound& e) {
    rad_ += e;
    return *this;
  }

  /// Upper bound on |x| over the ball.
  Bound abs_upper() const { return Bound::from_mpfr_abs(mid_.get()) + rad_; }

  bool contains_zero() const {
    return mpfr_zero_p(mid_.get()) || mpfr_cmpabs(mid_.get(), rad_.get()) <= 0;
  }

  double to_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }

  BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
  BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
  BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
  BigReal& operator/=(const BigReal& o) { return *this = *this / o; }

  friend BigReal operator-(const BigReal& a) {
    BigReal r(a);
    mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
    return r;
  }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(std::max(a.precision(), b.precision()));
    int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    r.rad_ = a.rad_ + b.rad_;
    if (t != 0) r.add_ulp();
    return r;
  }

  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(std::max(a.precision(), b.precision()));
    int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    r.rad_ = a.rad_ + b.rad_;
    if (t != 0) r.add_ulp();
    return r;
  }

  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(std::max(a.precision(), b.precision()));
    int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    if (!a.rad_.is_zero() || !b.rad_.is_zero()) {
      r.rad_ = Bound::from_mpfr_abs(a.mid_.get()) * b.rad_ + Bound::from_mpfr_abs(b.mid_.get()) * a.rad_ +
               a.rad_ * b.rad_;
    }
    if (t != 0) r.add_ulp();
    return r;
  }

  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    if (b.contains_zero()) throw PrecisionExhausted("division by a ball containing zero");
    BigReal r(std::max(a.precision(), b.precision()));
    int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    if (!a.rad_.is_zero() || !b.rad_.is_zero()) {
      // |a/b - ma/mb| <= (ra + |ma/mb| rb) / (|mb| - rb)
      Bound denom;
      mpfr_abs(denom.raw(), b.mid_.get(), MPFR_RNDD);
      mpfr_sub(denom.raw(), denom.get(), b.rad_.get(), MPFR_RNDD);
      r.rad_ = (a.rad_ + Bound::from_mpfr_abs(r.mid_.get()) * b.rad_) / denom;
    }
    if (t != 0) r.add_ulp();
    return r;
  }

  /// x * 2^e, exact.
  friend BigReal mul_2exp(const BigReal& x, long e) {
    BigReal r(x);
    mpfr_mul_2si(r.mid_.get(), r.mid_.get(), e, MPFR_RNDN);
    mpfr_mul_2si(r.rad_.raw(), r.rad_.get(), e, MPFR_RNDU);
    return r;
  }

  friend BigReal log(const BigReal& x) {
    if (mpfr_sgn(x.mid_.get()) <= 0 || x.contains_zero()) throw PrecisionExhausted("log of a nonpositive ball");
    BigReal r(x.precision());
    int t = mpfr_log(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
    if (!x.rad_.is_zero()) {
      Bound lower;
      mpfr_sub(lower.raw(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
      r.rad_ = x.rad_ / lower;
    }
    if (t != 0) r.add_ulp();
    return r;
  }

  friend BigReal pow(const BigReal& x, unsigned n) {
    BigReal r(1, x.precision());
    BigReal base(x);
    while (n > 0) {
      if (n & 1U) r = r * base;
      n >>= 1U;
      if (n > 0) base = base * base;
    }
    return r;
  }

  /// Relative accuracy check: rad <= |mid| * 2^-bits (exact zero passes).
  bool accurate_to(long bits) const {
    if (rad_.is_zero()) return true;
    if (mpfr_zero_p(mid_.get())) return false;
    detail::Mpfr lower(detail::kBoundBits);
    mpfr_abs(lower.get(), mid_.get(), MPFR_RNDD);
    mpfr_mul_2si(lower.get(), lower.get(), -bits, MPFR_RNDD);
    return mpfr_lessequal_p(rad_.get(), lower.get());
  }

 private:
  void add_ulp() {
    if (mpfr_zero_p(mid_.get()) || !mpfr_number_p(mid_.get())) return;
    rad_ += Bound::pow2(mpfr_get_exp(mid_.get()) - precision());
  }

  detail::Mpfr mid_;
  Bound rad_;
};

inline BigReal abs(const BigReal& x) { return mpfr_sgn(x.mid()) < 0 ? -x : x; }

/// |a - b| <= rad(a) + rad(b) + tol, i.e. the balls agree within tol.
inline bool agree_within(const BigReal& a, const BigReal& b, double tol) {
  BigReal d = a - b;
  Bound lhs = Bound::from_mpfr_abs(d.mid());
  Bound rhs = d.radius() + Bound(tol);
  return lhs <= rhs;
}

}  // namespace eulersum

#endif  // EULERSUM_BIGREAL_HPP
