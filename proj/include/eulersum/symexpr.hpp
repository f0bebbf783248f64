#ifndef EULERSUM_SYMEXPR_HPP
#define EULERSUM_SYMEXPR_HPP

// Rational-linear combinations of monomials in the constant basis
// {pi, ln 2, li4(1/2), zeta(3), zeta(5), ...}. Even zeta values never appear
// as atoms; they are rewritten as rational multiples of pi^s on construction.

#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eulersum/errors.hpp"
#include "eulersum/exact.hpp"

namespace eulersum {

struct Atom {
  // Declaration order is the canonical atom order.
  enum class Kind : int { Pi = 0, Log2 = 1, Li4Half = 2, OddZeta = 3 };

  Kind kind = Kind::Pi;
  int arg = 0;  // s for OddZeta, 0 otherwise

  static Atom pi() { return {Kind::Pi, 0}; }
  static Atom log2() { return {Kind::Log2, 0}; }
  static Atom li4_half() { return {Kind::Li4Half, 0}; }
  static Atom odd_zeta(int s) {
    require(s >= 3 && s % 2 == 1, "odd zeta atom needs odd s >= 3, got " + std::to_string(s));
    return {Kind::OddZeta, s};
  }

  int weight() const {
    switch (kind) {
      case Kind::Pi:
      case Kind::Log2:
        return 1;
      case Kind::Li4Half:
        return 4;
      case Kind::OddZeta:
        return arg;
    }
    return 0;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Pi:
        return "pi";
      case Kind::Log2:
        return "ln2";
      case Kind::Li4Half:
        return "li4(1/2)";
      case Kind::OddZeta:
        return "zeta(" + std::to_string(arg) + ")";
    }
    return "?";
  }

  static Atom parse(const std::string& name) {
    if (name == "pi") return pi();
    if (name == "ln2") return log2();
    if (name == "li4(1/2)") return li4_half();
    if (name.size() > 6 && name.rfind("zeta(", 0) == 0 && name.back() == ')') {
      return odd_zeta(std::stoi(name.substr(5, name.size() - 6)));
    }
    throw DomainError("unknown atom '" + name + "'");
  }

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Product of atom powers; sorted by atom, exponents strictly positive.
/// The empty monomial is the constant 1.
class Monomial {
 public:
  using Factor = std::pair<Atom, int>;

  Monomial() = default;
  explicit Monomial(Atom a, int exponent = 1) {
    require(exponent >= 0, "monomial exponents are nonnegative");
    if (exponent > 0) factors_.emplace_back(a, exponent);
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  int exponent_of(Atom a) const {
    for (const auto& [atom, e] : factors_) {
      if (atom == a) return e;
    }
    return 0;
  }

  int weight() const {
    int w = 0;
    for (const auto& [atom, e] : factors_) w += atom.weight() * e;
    return w;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
      if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
        r.factors_.push_back(*i++);
      } else if (i == a.factors_.end() || j->first < i->first) {
        r.factors_.push_back(*j++);
      } else {
        r.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [atom, e] : factors_) {
      if (!s.empty()) s += "*";
      s += atom.name();
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

class SymExpr {
 public:
  using Terms = std::map<Monomial, BigRational>;

  SymExpr() = default;
  explicit SymExpr(const BigRational& c) { add_term(Monomial{}, c); }
  explicit SymExpr(long c) : SymExpr(BigRational(c)) {}
  explicit SymExpr(Atom a, int exponent = 1) { add_term(Monomial(a, exponent), 1); }
  SymExpr(const Monomial& m, const BigRational& c) { add_term(m, c); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  BigRational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  SymExpr& operator+=(const SymExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SymExpr& operator-=(const SymExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  SymExpr& operator*=(const BigRational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [m, coeff] : terms_) coeff *= c;
    }
    return *this;
  }

  friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
  friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
  friend SymExpr operator-(SymExpr a) { return a *= BigRational(-1); }
  friend SymExpr operator*(const BigRational& c, SymExpr a) { return a *= c; }
  friend SymExpr operator*(long c, SymExpr a) { return a *= BigRational(c); }

  friend SymExpr operator*(const SymExpr& a, const SymExpr& b) {
    SymExpr r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    }
    return r;
  }

  friend bool operator==(const SymExpr& a, const SymExpr& b) { return a.terms_ == b.terms_; }
  friend std::ostream& operator<<(std::ostream& os, const SymExpr& e) { return os << e.to_string(); }

  /// Canonical human-readable rendering, e.g. "7/4*zeta(3) - 1/12*pi^2*zeta(3)".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      BigRational mag = abs(c);
      if (first) {
        if (c < 0) out << "-";
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (m.is_one()) {
        out << mag.get_str();
      } else if (mag == 1) {
        out << m.to_string();
      } else {
        out << mag.get_str() << "*" << m.to_string();
      }
    }
    return out.str();
  }

 private:
  void add_term(const Monomial& m, const BigRational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

inline SymExpr pow(const SymExpr& e, int n) {
  require(n >= 0, "SymExpr pow: negative exponent");
  SymExpr r(1);
  for (int i = 0; i < n; ++i) r = r * e;
  return r;
}

inline SymExpr pi_sym(int exponent = 1) { return SymExpr(Atom::pi(), exponent); }
inline SymExpr ln2_sym(int exponent = 1) { return SymExpr(Atom::log2(), exponent); }
inline SymExpr li4_half_sym() { return SymExpr(Atom::li4_half()); }

/// zeta(s); even s becomes (-1)^(n+1) B_2n (2 pi)^2n / (2 (2n)!) with s = 2n.
inline SymExpr zeta_sym(int s) {
  require(s >= 2, "zeta_sym needs s >= 2, got " + std::to_string(s));
  if (s % 2 == 1) return SymExpr(Atom::odd_zeta(s));
  BigRational c = bernoulli(s) * pow2(s) / BigRational(2 * factorial(static_cast<unsigned long>(s)));
  if ((s / 2) % 2 == 0) c = -c;
  c.canonicalize();
  return c * pi_sym(s);
}

/// lambda(s) = sum over odd n of n^-s = (1 - 2^-s) zeta(s).
inline SymExpr lambda_sym(int s) {
  require(s >= 2, "lambda_sym needs s >= 2, got " + std::to_string(s));
  return (1 - pow2(-s)) * zeta_sym(s);
}

/// Alternating zeta: eta(s) = (1 - 2^(1-s)) zeta(s).
inline SymExpr eta_sym(int s) {
  require(s >= 2, "eta_sym needs s >= 2, got " + std::to_string(s));
  return (1 - pow2(1 - s)) * zeta_sym(s);
}

/// Common weight of all monomials. The zero expression is vacuously
/// homogeneous and reports 0; use has_weight for weight queries.
inline std::optional<int> homogeneous_weight(const SymExpr& e) {
  std::optional<int> w;
  for (const auto& [m, c] : e.terms()) {
    if (!w) {
      w = m.weight();
    } else if (*w != m.weight()) {
      return std::nullopt;
    }
  }
  return w ? w : std::optional<int>(0);
}

/// True when every monomial has weight w (always true for zero).
inline bool has_weight(const SymExpr& e, int w) {
  for (const auto& [m, c] : e.terms()) {
    if (m.weight() != w) return false;
  }
  return true;
}

}  // namespace eulersum

#endif  // EULERSUM_SYMEXPR_HPP
