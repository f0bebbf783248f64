#ifndef EULERSUM_IO_HPP
#define EULERSUM_IO_HPP

// JSON forms of library values. Keys keep insertion order so output is stable.

#include <json.hpp>

#include "eulersum/relations.hpp"

namespace eulersum {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "eulersum/1";

/// [{"atoms": [[name, exponent], ...], "coeff": "p/q"}, ...] in canonical term order.
inline Json to_json(const SymExpr& e) {
  Json terms = Json::array();
  for (const auto& [mono, coeff] : e.terms()) {
    Json atoms = Json::array();
    for (const auto& [atom, exp] : mono.factors()) atoms.push_back(Json::array({atom.name(), exp}));
    terms.push_back(Json{{"atoms", atoms}, {"coeff", to_fraction_string(coeff)}});
  }
  return terms;
}

inline SymExpr symexpr_from_json(const Json& j) {
  SymExpr out;
  for (const Json& term : j) {
    SymExpr t(parse_rational(term.at("coeff").get<std::string>()));
    for (const Json& f : term.at("atoms")) {
      t = t * SymExpr(Atom::parse(f.at(0).get<std::string>()), f.at(1).get<int>());
    }
    out += t;
  }
  return out;
}

/// {"value": certified decimal, "bound": radius}
inline Json to_json(const BigReal& x) { return Json{{"value", to_decimal(x)}, {"bound", bound_string(x.radius())}}; }

inline Json to_json(const OracleResult& r) {
  return Json{{"value", to_decimal(r.value)}, {"bound", bound_string(r.achieved_bound)}, {"terms", r.terms_used}};
}

inline Json to_json(const Relation& r) {
  Json coeffs = Json::array();
  for (const auto& [id, c] : r.coefficients) coeffs.push_back(Json{{"sum", id.to_string()}, {"coeff", to_fraction_string(c)}});
  return Json{{"source", r.source}, {"weight", r.weight}, {"coefficients", coeffs}, {"rhs", r.rhs.to_string()}};
}

inline Json to_json(const SolveReport& rep) {
  Json j;
  j["weight"] = rep.weight;
  j["rank"] = rep.rank;
  j["consistent"] = rep.consistent;
  Json solved = Json::array();
  for (const auto& [id, v] : rep.solved) {
    solved.push_back(Json{{"sum", id.to_string()}, {"known", rep.known.count(id) > 0}, {"text", v.to_string()}, {"expr", to_json(v)}});
  }
  j["solved"] = solved;
  Json unresolved = Json::array();
  for (const SumId& id : rep.unresolved) unresolved.push_back(id.to_string());
  j["unresolved"] = unresolved;
  Json rels = Json::array();
  for (const Relation& r : rep.relations) rels.push_back(to_json(r));
  j["relations"] = rels;
  Json residuals = Json::array();
  for (const ResidualCheck& c : rep.residual_checks) {
    residuals.push_back(Json{{"relation", c.relation},
                             {"residual", bound_string(Bound::from_mpfr_abs(c.difference.mid()))},
                             {"bound", bound_string(c.difference.radius())}});
  }
  j["residual_checks"] = residuals;
  Json values = Json::array();
  for (const ValueCheck& c : rep.value_checks) {
    values.push_back(Json{{"sum", c.id.to_string()},
                          {"residual", bound_string(Bound::from_mpfr_abs(c.difference.mid()))},
                          {"bound", bound_string(c.difference.radius())}});
  }
  j["value_checks"] = values;
  Json problems = Json::array();
  for (const std::string& p : rep.problems) problems.push_back(p);
  j["problems"] = problems;
  return j;
}

}  // namespace eulersum

#endif  // EULERSUM_IO_HPP
