#ifndef EULERSUM_SUM_ID_HPP
#define EULERSUM_SUM_ID_HPP

// Names for the series families handled by the library.

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "eulersum/errors.hpp"

namespace eulersum {

enum class Family {
  J,            // sum S_n / n^b
  Jbar,         // sum S_n / (2n-1)^b
  Sigma,        // sum S_n^(t) / n^s
  HOverOdd,     // sum H_n / (2n+1)^q
  Z,            // sum H_2n / n^(2a)
  HoddOverOdd,  // sum H_(2n-1) / (2n-1)^(2a)
  EulerStar,    // zeta*(b,1) = sum H_n / n^b
  AltEulerStar, // zeta~*(2a,1) = sum (-1)^(n-1) H_n / n^(2a)
  ZetaStar,     // zeta*(q,p) = sum H_n^(p) / n^q
  AltTildeH,    // sum (-1)^n H~_(n-1)^(2a) / n
  E,            // E(p,q) = sum H_2n^(p) / n^q
};

inline constexpr std::array<Family, 11> kAllFamilies{
    Family::J,         Family::Jbar,      Family::Sigma,     Family::HOverOdd, Family::Z, Family::HoddOverOdd,
    Family::EulerStar, Family::AltEulerStar, Family::ZetaStar, Family::AltTildeH, Family::E};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::J: return "J";
    case Family::Jbar: return "Jbar";
    case Family::Sigma: return "Sigma";
    case Family::HOverOdd: return "H_over_odd";
    case Family::Z: return "Z";
    case Family::HoddOverOdd: return "HoddOverOdd";
    case Family::EulerStar: return "EulerStar";
    case Family::AltEulerStar: return "AltEulerStar";
    case Family::ZetaStar: return "ZetaStar";
    case Family::AltTildeH: return "AltTildeH";
    case Family::E: return "E";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

/// Number of integer parameters a family takes (1 or 2).
inline int family_arity(Family f) { return f == Family::Sigma || f == Family::ZetaStar || f == Family::E ? 2 : 1; }

/// A family with its parameters. Two-parameter families store them in
/// (p1, p2) as: Sigma (s, t); ZetaStar (q, p) for zeta*(q,p); E (p, q).
/// One-parameter families use p1 only.
class SumId {
 public:
  static SumId J(int b) { return make(Family::J, b); }
  static SumId Jbar(int b) { return make(Family::Jbar, b); }
  static SumId Sigma(int s, int t) { return make(Family::Sigma, s, t); }
  static SumId HOverOdd(int q) { return make(Family::HOverOdd, q); }
  static SumId Z(int a) { return make(Family::Z, a); }
  static SumId HoddOverOdd(int a) { return make(Family::HoddOverOdd, a); }
  static SumId EulerStar(int b) { return make(Family::EulerStar, b); }
  static SumId AltEulerStar(int a) { return make(Family::AltEulerStar, a); }
  static SumId ZetaStar(int q, int p) { return make(Family::ZetaStar, q, p); }
  static SumId AltTildeH(int a) { return make(Family::AltTildeH, a); }
  static SumId E(int p, int q) { return make(Family::E, p, q); }

  static SumId make(Family f, int p1, int p2 = 0) {
    SumId id(f, p1, p2);
    id.validate();
    return id;
  }

  Family family() const { return family_; }
  int p1() const { return p1_; }
  int p2() const { return p2_; }

  /// s + t for sigma sums; in general the weight of the closed form.
  int weight() const {
    switch (family_) {
      case Family::J:
      case Family::Jbar:
      case Family::HOverOdd:
      case Family::EulerStar:
        return p1_ + 1;
      case Family::Z:
      case Family::HoddOverOdd:
      case Family::AltEulerStar:
      case Family::AltTildeH:
        return 2 * p1_ + 1;
      case Family::Sigma:
      case Family::ZetaStar:
      case Family::E:
        return p1_ + p2_;
    }
    return 0;
  }

  /// "Sigma(4,3)", "J(2)".
  std::string to_string() const {
    std::string s(family_name(family_));
    s += "(" + std::to_string(p1_);
    if (family_arity(family_) == 2) s += "," + std::to_string(p2_);
    return s + ")";
  }

  /// Parses the to_string form.
  static SumId parse(std::string_view text) {
    auto open = text.find('(');
    if (open == std::string_view::npos || text.empty() || text.back() != ')') {
      throw DomainError("malformed series id '" + std::string(text) + "'");
    }
    auto f = parse_family(text.substr(0, open));
    if (!f) throw DomainError("unknown family '" + std::string(text.substr(0, open)) + "'");
    std::string args(text.substr(open + 1, text.size() - open - 2));
    auto comma = args.find(',');
    try {
      if (family_arity(*f) == 2) {
        if (comma == std::string::npos) throw DomainError("family needs two parameters");
        return make(*f, std::stoi(args.substr(0, comma)), std::stoi(args.substr(comma + 1)));
      }
      if (comma != std::string::npos) throw DomainError("family takes one parameter");
      return make(*f, std::stoi(args));
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const DomainError*>(&e)) throw;
      throw DomainError("malformed series id '" + std::string(text) + "'");
    }
  }

  friend auto operator<=>(const SumId&, const SumId&) = default;

 private:
  SumId(Family f, int p1, int p2) : family_(f), p1_(p1), p2_(p2) {}

  void validate() const {
    const std::string name = to_string();
    auto need = [&](bool ok, const char* what) {
      if (!ok) throw DivergentParameters(name + ": " + what);
    };
    switch (family_) {
      case Family::J:
      case Family::Jbar:
      case Family::EulerStar:
        need(p1_ >= 2, "needs b >= 2");
        break;
      case Family::HOverOdd:
        need(p1_ >= 2, "needs q >= 2");
        break;
      case Family::Z:
      case Family::HoddOverOdd:
      case Family::AltEulerStar:
      case Family::AltTildeH:
        need(p1_ >= 1, "needs a >= 1");
        break;
      case Family::Sigma:
        need(p1_ >= 2 && p2_ >= 1, "needs s >= 2 and t >= 1");
        break;
      case Family::ZetaStar:
        need(p1_ >= 2 && p2_ >= 1, "needs q >= 2 and p >= 1");
        break;
      case Family::E:
        need(p1_ >= 1 && p2_ >= 2, "needs p >= 1 and q >= 2");
        break;
    }
    if (family_arity(family_) == 1) need(p2_ == 0, "takes one parameter");
  }

  // Member order defines the canonical ordering: family, then parameters.
  Family family_;
  int p1_;
  int p2_;
};

}  // namespace eulersum

#endif  // EULERSUM_SUM_ID_HPP
