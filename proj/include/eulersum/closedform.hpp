#ifndef EULERSUM_CLOSEDFORM_HPP
#define EULERSUM_CLOSEDFORM_HPP

// Closed forms of Jordan, sigma and related harmonic sums over the constant
// basis of symexpr.hpp. Every function validates its parameter range eagerly.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulersum/errors.hpp"
#include "eulersum/exact.hpp"
#include "eulersum/sum_id.hpp"
#include "eulersum/symexpr.hpp"

namespace eulersum {

namespace cf {

inline SymExpr zeta(int s) { return zeta_sym(s); }
inline SymExpr lam(int s) { return lambda_sym(s); }
inline SymExpr eta(int s) { return eta_sym(s); }
inline SymExpr ln2() { return ln2_sym(); }
inline BigRational q(long num, long den = 1) { return make_rational(num, den); }

inline void need(bool ok, const char* op, const std::string& what) {
  if (!ok) throw DomainError(std::string(op) + ": " + what);
}

}  // namespace cf

/// zeta*(b,1) = sum H_n / n^b.
inline SymExpr euler_star(int b) {
  using namespace cf;
  need(b >= 2, "euler_star", "needs b >= 2");
  SymExpr r = q(b + 2, 2) * zeta(b + 1);
  for (int j = 2; j <= b - 1; ++j) r -= q(1, 2) * (zeta(j) * zeta(b + 1 - j));
  return r;
}

/// zeta~*(2a,1) = sum (-1)^(n-1) H_n / n^(2a).
inline SymExpr alt_euler_star(int a) {
  using namespace cf;
  need(a >= 1, "alt_euler_star", "needs a >= 1");
  SymExpr r = q(2 * a + 1, 2) * eta(2 * a + 1) - q(1, 2) * zeta(2 * a + 1);
  for (int j = 1; j <= a - 1; ++j) r -= eta(2 * j) * zeta(2 * a + 1 - 2 * j);
  return r;
}

/// sum H_2n / n^(2a).
inline SymExpr Z_even(int a) {
  using namespace cf;
  need(a >= 1, "Z_even", "needs a >= 1");
  SymExpr r = q(1, 4) * (BigRational(2 * a + 1) + pow2(2 * a + 1)) * zeta(2 * a + 1);
  for (int j = 1; j <= a - 1; ++j) r -= pow2(2 * a - 2 * j) * (zeta(2 * j) * zeta(2 * a + 1 - 2 * j));
  return r;
}

/// sum H_(2n-1) / (2n-1)^(2a).
inline SymExpr h_odd_over_odd(int a) {
  using namespace cf;
  need(a >= 1, "h_odd_over_odd", "needs a >= 1");
  SymExpr r = q(2 * a + 1, 2) * lam(2 * a + 1);
  for (int j = 1; j <= a - 1; ++j) r -= zeta(2 * a + 1 - 2 * j) * lam(2 * j);
  return r;
}

/// J(2a) = sum S_n / n^(2a), lambda form.
inline SymExpr jordan_even(int a) {
  using namespace cf;
  need(a >= 1, "jordan_even", "needs a >= 1");
  SymExpr r = pow2(2 * a - 1) * lam(2 * a + 1);
  for (int j = 1; j <= a - 1; ++j) r -= pow2(2 * j) * (lam(2 * j + 1) * zeta(2 * a - 2 * j));
  return r;
}

/// J(2a), zeta form.
inline SymExpr jordan_even_zeta_form(int a) {
  using namespace cf;
  need(a >= 1, "jordan_even_zeta_form", "needs a >= 1");
  SymExpr r = ((pow2(2 * a + 1) - 1) / 4) * zeta(2 * a + 1);
  for (int j = 1; j <= a - 1; ++j) {
    r -= ((pow2(2 * j + 1) - 1) / 2) * (zeta(2 * j + 1) * zeta(2 * a - 2 * j));
  }
  return r;
}

inline SymExpr jordan_J3() {
  using namespace cf;
  return 8 * li4_half_sym() - q(53, 8) * zeta(4) - 2 * (zeta(2) * ln2_sym(2)) + q(1, 3) * ln2_sym(4) +
         7 * (zeta(3) * ln2());
}

/// Jbar(2a) = sum S_n / (2n-1)^(2a).
inline SymExpr jordan_bar_even(int a) {
  using namespace cf;
  need(a >= 1, "jordan_bar_even", "needs a >= 1");
  SymExpr r = lam(2 * a) * ln2() + q(1, 2) * lam(2 * a + 1);
  for (int j = 1; j <= a - 1; ++j) r -= pow2(-(2 * j + 1)) * (lam(2 * a - 2 * j) * zeta(2 * j + 1));
  return r;
}

/// The value of Jbar(b) + (-1)^(b-1) 2^-b J(b).
inline SymExpr jordan_bar_relation(int b) {
  using namespace cf;
  need(b >= 2, "jordan_bar_relation", "needs b >= 2");
  SymExpr r = lam(b) * ln2();
  for (int j = 1; j <= b - 2; ++j) {
    BigRational c = pow2(-(j + 1));
    if (j % 2 == 0) c = -c;
    r += c * (lam(b - j) * zeta(j + 1));
  }
  return r;
}

inline SymExpr jordan_bar3() {
  using namespace cf;
  return -li4_half_sym() + q(83, 64) * zeta(4) + q(1, 4) * (zeta(2) * ln2_sym(2)) - q(1, 24) * ln2_sym(4);
}

/// h_(2a) = sum H_n / (2n+1)^(2a).
inline SymExpr h_even(int a) {
  using namespace cf;
  need(a >= 1, "h_even", "needs a >= 1");
  SymExpr r = -2 * (lam(2 * a) * ln2()) + BigRational(2 * a) * lam(2 * a + 1);
  for (int j = 1; j <= a - 1; ++j) r -= 2 * (lam(2 * j) * lam(2 * a + 1 - 2 * j));
  return r;
}

/// h_(2a-1) = sum H_p / (2p+1)^(2a-1).
inline SymExpr h_odd(int a) {
  using namespace cf;
  need(a >= 2, "h_odd", "needs a >= 2");
  SymExpr r = -2 * (lam(2 * a - 1) * ln2()) + q(2 * a - 1, 2) * lam(2 * a);
  for (int k = 1; k <= a - 2; ++k) r -= lam(2 * k + 1) * lam(2 * a - 2 * k - 1);
  return r;
}

/// h_(4b-1), regrouped for a = 2b.
inline SymExpr h_odd_4b_minus_1(int b) {
  using namespace cf;
  need(b >= 1, "h_odd_4b_minus_1", "needs b >= 1");
  SymExpr r = -2 * (lam(4 * b - 1) * ln2()) + q(4 * b - 1, 2) * lam(4 * b);
  for (int k = 1; k <= b - 1; ++k) r -= 2 * (lam(2 * k + 1) * lam(4 * b - 2 * k - 1));
  return r;
}

/// h_(4b+1), regrouped for a = 2b+1.
inline SymExpr h_odd_4b_plus_1(int b) {
  using namespace cf;
  need(b >= 1, "h_odd_4b_plus_1", "needs b >= 1");
  SymExpr r = -2 * (lam(4 * b + 1) * ln2()) + q(4 * b + 1, 2) * lam(4 * b + 2) - pow(lam(2 * b + 1), 2);
  for (int k = 1; k <= b - 1; ++k) r -= 2 * (lam(2 * k + 1) * lam(4 * b - 2 * k + 1));
  return r;
}

/// h_(2r+1) before the (n - 1/2) lambda(2n) simplification.
inline SymExpr h_odd_unsimplified(int r) {
  using namespace cf;
  need(r >= 1, "h_odd_unsimplified", "needs r >= 1");
  SymExpr d;
  for (int j = 0; j <= 2 * r - 2; ++j) {
    SymExpr t = BigRational((j % 2 == 0 ? 1 : -1) * (j + 1)) * (lam(2 + j) * lam(2 * r - j));
    d += t;
  }
  return -2 * (lam(2 * r + 1) * ln2()) + q(1, r) * d;
}

/// h_3 = lambda(2)^2 - 2 lambda(3) ln 2.
inline SymExpr h3_direct() { return pow(cf::lam(2), 2) - 2 * (cf::lam(3) * cf::ln2()); }

/// h_q for any q >= 2.
inline SymExpr h_sum(int q) {
  cf::need(q >= 2, "h_sum", "needs q >= 2");
  return q % 2 == 0 ? h_even(q / 2) : h_odd((q + 1) / 2);
}

/// sum (-1)^n H~_(n-1)^(2a) / n.
inline SymExpr alt_tildeH_sum(int a) {
  using namespace cf;
  need(a >= 1, "alt_tildeH_sum", "needs a >= 1");
  SymExpr r = q(1, 2) * zeta(2 * a + 1) - q(2 * a + 1, 2) * eta(2 * a + 1) + ln2() * zeta(2 * a);
  for (int j = 1; j <= a - 1; ++j) r += eta(2 * j + 1) * zeta(2 * a - 2 * j);
  return r;
}

/// sigma(2, 2a-1).
inline SymExpr sigma_2_odd(int a) {
  using namespace cf;
  need(a >= 1, "sigma_2_odd", "needs a >= 1");
  SymExpr r = BigRational(2 * a * (2 * a - 1)) * lam(2 * a + 1);
  for (int j = 1; j <= a - 1; ++j) r -= BigRational(8 * j) * (lam(2 * a - 2 * j) * lam(2 * j + 1));
  return r;
}

/// sigma(2a-1, 2).
inline SymExpr sigma_odd_2(int a) {
  using namespace cf;
  need(a >= 2, "sigma_odd_2", "needs a >= 2");
  SymExpr r = -(BigRational(a) * pow2(2 * a - 1)) * lam(2 * a + 1) +
              (pow2(2 * a - 1) * BigRational(2 * a + 1) / 3) * (lam(2) * lam(2 * a - 1));
  for (int j = 1; j <= a - 2; ++j) r += (BigRational(j) * pow2(2 * j)) * (lam(2 * j + 1) * zeta(2 * a - 2 * j));
  return r;
}

/// zeta*(2a-1, 2) = sum H_n^(2) / n^(2a-1).
inline SymExpr zeta_star_odd_2(int a) {
  using namespace cf;
  need(a >= 2, "zeta_star_odd_2", "needs a >= 2");
  SymExpr r = -q(2 * a * a + a - 1, 2) * zeta(2 * a + 1) + BigRational(2 * a - 1) * (zeta(2) * zeta(2 * a - 1));
  for (int j = 1; j <= a - 2; ++j) r += BigRational(2 * j) * (zeta(2 * j + 1) * zeta(2 * a - 2 * j));
  return r;
}

/// E(2, 2a-1) = sum H_2n^(2) / n^(2a-1).
inline SymExpr E_2_odd(int a) {
  using namespace cf;
  need(a >= 2, "E_2_odd", "needs a >= 2");
  SymExpr r;
  for (int j = 1; j <= a - 2; ++j) r += (BigRational(j) * pow2(2 * j)) * (zeta(2 * j + 1) * zeta(2 * a - 2 * j));
  r += (BigRational(2 * a + 1) * pow2(2 * a - 3) - q(1, 2)) * (zeta(2) * zeta(2 * a - 1));
  r -= (BigRational(a) * pow2(2 * a - 1) + q(2 * a * a - a - 1, 8)) * zeta(2 * a + 1);
  return r;
}

/// The sigma(2a-2, 3) formula without its validity restriction. It is wrong
/// at a = 2; kept so the discrepancy stays testable.
inline SymExpr sigma_even_3_formula(int a) {
  using namespace cf;
  need(a >= 2, "sigma_even_3_formula", "needs a >= 2");
  SymExpr r = (BigRational(a * (2 * a - 1)) * pow2(2 * a - 3)) * lam(2 * a + 1) -
              (BigRational((a - 1) * (2 * a + 3)) * pow2(2 * a - 4)) * (zeta(2) * lam(2 * a - 1));
  for (int j = 2; j <= a - 2; ++j) {
    r -= (BigRational(j * (2 * j - 1)) * pow2(2 * j - 2)) * (zeta(2 * a - 2 * j) * lam(2 * j + 1));
  }
  return r;
}

/// sigma(2a-2, 3), valid for a >= 3.
inline SymExpr sigma_even_3(int a) {
  cf::need(a >= 3, "sigma_even_3", "needs a >= 3");
  return sigma_even_3_formula(a);
}

/// Tabulated low-weight sigma values.
inline SymExpr sigma_special(int s, int t) {
  using namespace cf;
  if (s == 2 && t == 2) {
    return -8 * li4_half_sym() + 2 * (zeta(2) * ln2_sym(2)) - q(1, 3) * ln2_sym(4) - 7 * (zeta(3) * ln2()) +
           q(151, 16) * zeta(4);
  }
  if (s == 3 && t == 1) return jordan_J3();
  if (s == 3 && t == 2) return -16 * lam(5) + q(40, 3) * (lam(2) * lam(3));
  if (s == 4 && t == 3) return 120 * lam(7) - 96 * (lam(2) * lam(5));
  if (s == 3 && t == 4) return -80 * lam(7) + 8 * (lam(3) * lam(4)) + q(176, 3) * (lam(2) * lam(5));
  throw DomainError("sigma_special: no tabulated value for sigma(" + std::to_string(s) + "," + std::to_string(t) + ")");
}

/// sum_{i=1}^{2a-2} 2^(i-1) sigma(2a-i, 1+i).
inline SymExpr weighted_sigma_sum(int a) {
  using namespace cf;
  need(a >= 2, "weighted_sigma_sum", "needs a >= 2");
  SymExpr inner = BigRational(a - 1) * lam(2 * a + 1);
  for (int j = 1; j <= a - 1; ++j) inner += (3 * pow2(-2 * j) - 1) * (zeta(2 * j) * lam(2 * a + 1 - 2 * j));
  return pow2(2 * a - 1) * inner;
}

/// The same weighted sum as -J(2a) + 2^(2a-2) h_(2a) + 2^(2a-1) lambda(2a) ln 2.
inline SymExpr weighted_sigma_sum_from_jordan(int a) {
  using namespace cf;
  need(a >= 2, "weighted_sigma_sum_from_jordan", "needs a >= 2");
  return -jordan_even(a) + pow2(2 * a - 2) * h_even(a) + pow2(2 * a - 1) * (lam(2 * a) * ln2());
}

/// sigma(3,3) + 3 sigma(2,4).
inline SymExpr relation_50() { return 15 * cf::lam(6) - 8 * pow(cf::lam(3), 2); }

/// sum_{i=1}^{w-2} sigma(w-i, i) = (w-1) lambda(w).
inline SymExpr sigma_sum_rhs(int w) {
  cf::need(w >= 3, "sigma_sum_rhs", "needs w >= 3");
  return BigRational(w - 1) * cf::lam(w);
}

/// Closed form for a single series, when one is known.
inline std::optional<SymExpr> closed_form(const SumId& id) {
  const int p = id.p1();
  const int t = id.p2();
  switch (id.family()) {
    case Family::J:
      if (p % 2 == 0) return jordan_even(p / 2);
      if (p == 3) return jordan_J3();
      return std::nullopt;
    case Family::Jbar:
      if (p % 2 == 0) return jordan_bar_even(p / 2);
      if (p == 3) return jordan_bar3();
      return std::nullopt;
    case Family::Sigma:
      if (t == 1) return closed_form(SumId::J(p));
      if (p == 2 && t == 2) return sigma_special(2, 2);
      if (p == 2 && t % 2 == 1) return sigma_2_odd((t + 1) / 2);
      if (t == 2 && p % 2 == 1) return sigma_odd_2((p + 1) / 2);
      if (t == 3 && p % 2 == 0 && p >= 4) return sigma_even_3((p + 2) / 2);
      if (p == 3 && t == 4) return sigma_special(3, 4);
      return std::nullopt;
    case Family::HOverOdd:
      return h_sum(p);
    case Family::Z:
      return Z_even(p);
    case Family::HoddOverOdd:
      return h_odd_over_odd(p);
    case Family::EulerStar:
      return euler_star(p);
    case Family::AltEulerStar:
      return alt_euler_star(p);
    case Family::ZetaStar:
      if (t == 1) return euler_star(p);
      if (t == 2 && p % 2 == 1) return zeta_star_odd_2((p + 1) / 2);
      return std::nullopt;
    case Family::AltTildeH:
      return alt_tildeH_sum(p);
    case Family::E:
      if (p == 1 && t % 2 == 0) return Z_even(t / 2);
      if (p == 2 && t % 2 == 1) return E_2_odd((t + 1) / 2);
      return std::nullopt;
  }
  return std::nullopt;
}

/// A checkable identity: sum of coefficient * series equals value.
struct Identity {
  std::string name;
  std::vector<std::pair<SumId, BigRational>> combination;
  SymExpr value;

  int weight() const { return combination.front().first.weight(); }
};

/// Every closed form and closed-form combination of weight <= max_weight.
inline std::vector<Identity> identity_catalogue(int max_weight) {
  std::vector<Identity> out;
  auto single = [&](const std::string& name, SumId id, SymExpr v) {
    if (id.weight() <= max_weight) out.push_back({name, {{id, BigRational(1)}}, std::move(v)});
  };
  auto arg = [](const char* op, int v) { return std::string(op) + "(" + std::to_string(v) + ")"; };

  for (int b = 2; b + 1 <= max_weight; ++b) single(arg("euler_star", b), SumId::EulerStar(b), euler_star(b));
  for (int a = 1; 2 * a + 1 <= max_weight; ++a) {
    single(arg("alt_euler_star", a), SumId::AltEulerStar(a), alt_euler_star(a));
    single(arg("Z_even", a), SumId::Z(a), Z_even(a));
    single(arg("h_odd_over_odd", a), SumId::HoddOverOdd(a), h_odd_over_odd(a));
    single(arg("jordan_even", a), SumId::J(2 * a), jordan_even(a));
    single(arg("jordan_bar_even", a), SumId::Jbar(2 * a), jordan_bar_even(a));
    single(arg("h_even", a), SumId::HOverOdd(2 * a), h_even(a));
    single(arg("alt_tildeH_sum", a), SumId::AltTildeH(a), alt_tildeH_sum(a));
    single(arg("sigma_2_odd", a), SumId::Sigma(2, 2 * a - 1), sigma_2_odd(a));
    if (a >= 2) {
      single(arg("h_odd", a), SumId::HOverOdd(2 * a - 1), h_odd(a));
      single(arg("sigma_odd_2", a), SumId::Sigma(2 * a - 1, 2), sigma_odd_2(a));
      single(arg("zeta_star_odd_2", a), SumId::ZetaStar(2 * a - 1, 2), zeta_star_odd_2(a));
      single(arg("E_2_odd", a), SumId::E(2, 2 * a - 1), E_2_odd(a));
    }
    if (a >= 3) single(arg("sigma_even_3", a), SumId::Sigma(2 * a - 2, 3), sigma_even_3(a));
  }
  if (max_weight >= 4) {
    single("jordan_J3", SumId::J(3), jordan_J3());
    single("jordan_bar3", SumId::Jbar(3), jordan_bar3());
    single("sigma_special(2,2)", SumId::Sigma(2, 2), sigma_special(2, 2));
    single("sigma_special(3,1)", SumId::Sigma(3, 1), sigma_special(3, 1));
  }
  if (max_weight >= 5) single("sigma_special(3,2)", SumId::Sigma(3, 2), sigma_special(3, 2));
  if (max_weight >= 7) {
    single("sigma_special(4,3)", SumId::Sigma(4, 3), sigma_special(4, 3));
    single("sigma_special(3,4)", SumId::Sigma(3, 4), sigma_special(3, 4));
  }
  for (int b = 2; b + 1 <= max_weight; ++b) {
    BigRational c = pow2(-b);
    if (b % 2 == 0) c = -c;
    out.push_back({arg("jordan_bar_relation", b), {{SumId::Jbar(b), BigRational(1)}, {SumId::J(b), c}},
                   jordan_bar_relation(b)});
  }
  for (int a = 2; 2 * a + 1 <= max_weight; ++a) {
    Identity id{arg("weighted_sigma_sum", a), {}, weighted_sigma_sum(a)};
    for (int i = 1; i <= 2 * a - 2; ++i) id.combination.emplace_back(SumId::Sigma(2 * a - i, 1 + i), pow2(i - 1));
    out.push_back(std::move(id));
  }
  if (max_weight >= 6) {
    out.push_back({"relation_50", {{SumId::Sigma(3, 3), BigRational(1)}, {SumId::Sigma(2, 4), BigRational(3)}},
                   relation_50()});
  }
  for (int w = 3; w <= max_weight; ++w) {
    Identity id{arg("sigma_sum_rhs", w), {}, sigma_sum_rhs(w)};
    for (int i = 1; i <= w - 2; ++i) id.combination.emplace_back(SumId::Sigma(w - i, i), BigRational(1));
    out.push_back(std::move(id));
  }
  return out;
}

}  // namespace eulersum

#endif  // EULERSUM_CLOSEDFORM_HPP
