#ifndef EULERSUM_RELATIONS_HPP
#define EULERSUM_RELATIONS_HPP

// Linear relations among sigma(s,t) of one weight, exact elimination with
// symbolic right-hand sides, and the check that all sigmas of a weight sum to
// (w-1) lambda(w).

#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eulersum/closedform.hpp"
#include "eulersum/oracle.hpp"

namespace eulersum {

/// sum over coefficients c_id * id = rhs, scaled so the first coefficient is 1.
/// A relation without coefficients is a tautology 0 = 0.
struct Relation {
  std::map<SumId, BigRational> coefficients;
  SymExpr rhs;
  int weight = 0;
  std::string source;

  bool is_tautology() const { return coefficients.empty(); }
  std::string to_string() const;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.weight == b.weight && a.coefficients == b.coefficients && a.rhs == b.rhs;
  }
};

/// The sigma(w-i, i), i = 1..w-2, in SumId order.
inline std::vector<SumId> sigma_ids(int w) {
  require(w >= 3, "sigma_ids: weight must be at least 3");
  std::vector<SumId> out;
  for (int t = w - 2; t >= 1; --t) out.push_back(SumId::Sigma(w - t, t));
  return out;
}

namespace detail {

/// Accumulates sigma terms on the left and symbolic terms on the right.
class RelationBuilder {
 public:
  RelationBuilder(int weight, std::string source) : weight_(weight), source_(std::move(source)) {}

  void sigma(int s, int t, const BigRational& c) {
    if (c == 0) return;
    SumId id = SumId::Sigma(s, t);
    require(id.weight() == weight_, "relation: mixed weights");
    coeffs_[id] += c;
  }
  void rhs(const SymExpr& e) { rhs_ += e; }

  Relation build() {
    Relation r;
    r.weight = weight_;
    r.source = source_;
    for (const auto& [id, c] : coeffs_) {
      if (c != 0) r.coefficients.emplace(id, c);
    }
    if (!has_weight(rhs_, weight_)) throw std::logic_error("relation " + source_ + ": right-hand side is not homogeneous");
    if (r.coefficients.empty()) {
      if (!rhs_.is_zero()) throw std::logic_error("relation " + source_ + " reduces to 0 = nonzero");
      return r;
    }
    BigRational lead = r.coefficients.begin()->second;
    for (auto& [id, c] : r.coefficients) c /= lead;
    r.rhs = (1 / lead) * rhs_;
    return r;
  }

 private:
  int weight_;
  std::string source_;
  std::map<SumId, BigRational> coeffs_;
  SymExpr rhs_;
};

inline BigRational C(long n, long k) { return binomial(n, k); }
inline SymExpr lam(int s) { return lambda_sym(s); }

}  // namespace detail

inline std::string Relation::to_string() const {
  std::string out;
  for (const auto& [id, c] : coefficients) {
    if (!out.empty()) out += " + ";
    out += to_fraction_string(c) + "*" + id.to_string();
  }
  if (out.empty()) out = "0";
  return out + " = " + rhs.to_string();
}

/// lambda(k) lambda(l) = 2^-w sum_{i=1}^{w-2} 2^i [C(w-i-1, l-1) + C(w-i-1, k-1)] sigma(w-i, i).
inline Relation gen_product_relation(int k, int l) {
  require(k >= 2 && l >= 2, "gen_product_relation: k and l must be at least 2");
  const int w = k + l;
  detail::RelationBuilder b(w, "product(" + std::to_string(std::min(k, l)) + "," + std::to_string(std::max(k, l)) + ")");
  for (int i = 1; i <= w - 2; ++i) {
    b.sigma(w - i, i, pow2(i - w) * (detail::C(w - i - 1, l - 1) + detail::C(w - i - 1, k - 1)));
  }
  b.rhs(detail::lam(k) * detail::lam(l));
  return b.build();
}

/// Partial-fraction relation for sigma(s,t):
/// (-1)^t sigma(s,t) = sum_{i=0}^{s-2} 2^i C(t+i-1,i) sigma(s-i,t+i)
///   + (-1)^t 2^s sum_{j=0}^{t-2} (-1)^j C(s+j-1,j) lambda(s+j) lambda(t-j)
///   - 2^(s-1) C(s+t-2,s-1) h_(s+t-1) - 2^s C(s+t-2,s-1) lambda(s+t-1) ln 2,
/// with h_q folded in through its closed form.
inline Relation gen_partial_fraction_relation(int s, int t) {
  require(s >= 2 && t >= 1, "gen_partial_fraction_relation: needs s >= 2 and t >= 1");
  const int w = s + t;
  const BigRational sign_t = t % 2 == 0 ? 1 : -1;
  detail::RelationBuilder b(w, "partial_fraction(" + std::to_string(s) + "," + std::to_string(t) + ")");
  b.sigma(s, t, sign_t);
  for (int i = 0; i <= s - 2; ++i) b.sigma(s - i, t + i, -pow2(i) * detail::C(t + i - 1, i));
  for (int j = 0; j <= t - 2; ++j) {
    BigRational c = sign_t * pow2(s) * detail::C(s + j - 1, j) * (j % 2 == 0 ? 1 : -1);
    b.rhs(c * (detail::lam(s + j) * detail::lam(t - j)));
  }
  const BigRational binom = detail::C(s + t - 2, s - 1);
  b.rhs(-pow2(s - 1) * binom * h_sum(s + t - 1));
  b.rhs(-pow2(s) * binom * (detail::lam(s + t - 1) * ln2_sym()));
  return b.build();
}

/// The even-t form, t = 2r, where sigma(s,t) cancels:
/// sum_{i=1}^{s-2} 2^(i-1) C(2r+i-1,i) sigma(s-i,2r+i)
///   = -2^(s-1) sum_{j=0}^{2r-2} (-1)^j C(s+j-1,j) lambda(s+j) lambda(2r-j)
///     + 2^(s-2) C(s+2r-2,s-1) h_(s+2r-1) + 2^(s-1) C(s+2r-2,s-1) lambda(s+2r-1) ln 2.
inline Relation gen_even_t_relation(int s, int r) {
  require(s >= 2 && r >= 1, "gen_even_t_relation: needs s >= 2 and r >= 1");
  const int w = s + 2 * r;
  detail::RelationBuilder b(w, "even_t(" + std::to_string(s) + "," + std::to_string(r) + ")");
  for (int i = 1; i <= s - 2; ++i) b.sigma(s - i, 2 * r + i, pow2(i - 1) * detail::C(2 * r + i - 1, i));
  for (int j = 0; j <= 2 * r - 2; ++j) {
    BigRational c = -pow2(s - 1) * detail::C(s + j - 1, j) * (j % 2 == 0 ? 1 : -1);
    b.rhs(c * (detail::lam(s + j) * detail::lam(2 * r - j)));
  }
  const BigRational binom = detail::C(s + 2 * r - 2, s - 1);
  b.rhs(pow2(s - 2) * binom * h_sum(s + 2 * r - 1));
  b.rhs(pow2(s - 1) * binom * (detail::lam(s + 2 * r - 1) * ln2_sym()));
  return b.build();
}

/// The even-t form with h already replaced by its lambda expression, so that
/// ln 2 cancels. Variant 1 has s = 2v, variant 2 has s = 2v+1.
inline Relation gen_folded_relation(int variant, int v, int r) {
  require(variant == 1 || variant == 2, "gen_folded_relation: variant must be 1 or 2");
  require(v >= 1 && r >= 1, "gen_folded_relation: needs v >= 1 and r >= 1");
  using detail::C;
  using detail::lam;
  const std::string tag = std::to_string(variant) + ":" + std::to_string(v) + "," + std::to_string(r);
  if (variant == 1) {
    const int w = 2 * v + 2 * r;
    detail::RelationBuilder b(w, "folded(" + tag + ")");
    for (int i = 1; i <= 2 * v - 2; ++i) b.sigma(2 * v - i, 2 * r + i, pow2(i - 1) * C(2 * r + i - 1, i));
    for (int j = 0; j <= 2 * r - 2; ++j) {
      b.rhs(-pow2(2 * v - 1) * C(2 * v + j - 1, j) * (j % 2 == 0 ? 1 : -1) * (lam(2 * v + j) * lam(2 * r - j)));
    }
    b.rhs(pow2(2 * v - 3) * C(2 * v + 2 * r - 2, 2 * v - 1) * (2 * v + 2 * r - 1) * lam(2 * v + 2 * r));
    // The coefficient that the substitution actually produces is C(2v+2r-2, 2v-1).
    const BigRational outer = -pow2(2 * v - 2) * C(2 * v + 2 * r - 2, 2 * v - 1);
    for (int j = 1; j <= r + v - 2; ++j) b.rhs(outer * (lam(2 * j + 1) * lam(2 * r + 2 * v - 2 * j - 1)));
    return b.build();
  }
  const int w = 2 * v + 2 * r + 1;
  detail::RelationBuilder b(w, "folded(" + tag + ")");
  for (int i = 1; i <= 2 * v - 1; ++i) b.sigma(2 * v + 1 - i, 2 * r + i, pow2(i - 1) * C(2 * r + i - 1, i));
  for (int j = 0; j <= 2 * r - 2; ++j) {
    b.rhs(-pow2(2 * v) * C(2 * v + j, j) * (j % 2 == 0 ? 1 : -1) * (lam(2 * v + 1 + j) * lam(2 * r - j)));
  }
  const BigRational binom = C(2 * v + 2 * r - 1, 2 * v);
  b.rhs(pow2(2 * v) * binom * (v + r) * lam(2 * v + 2 * r + 1));
  for (int j = 1; j <= r + v - 1; ++j) b.rhs(-pow2(2 * v) * binom * (lam(2 * j) * lam(2 * r + 2 * v - 2 * j + 1)));
  return b.build();
}

/// Every relation of weight w from all generator families, tautologies included.
inline std::vector<Relation> all_relations(int w, bool product_only = false) {
  require(w >= 3, "all_relations: weight must be at least 3");
  std::vector<Relation> out;
  for (int k = 2; 2 * k <= w; ++k) out.push_back(gen_product_relation(k, w - k));
  if (product_only) return out;
  for (int s = 2; s <= w - 1; ++s) out.push_back(gen_partial_fraction_relation(s, w - s));
  for (int r = 1; 2 * r <= w - 2; ++r) out.push_back(gen_even_t_relation(w - 2 * r, r));
  for (int v = 1; 2 * v + 2 <= w; ++v) {
    if ((w - 2 * v) % 2 == 0) out.push_back(gen_folded_relation(1, v, (w - 2 * v) / 2));
    if (w % 2 == 1 && 2 * v + 3 <= w) out.push_back(gen_folded_relation(2, v, (w - 2 * v - 1) / 2));
  }
  return out;
}

/// Sources of closed forms injected into a solve.
enum class KnownProvider {
  JordanEven,  // sigma(w-1, 1) = J(w-1) for even w-1
  Sigma2Odd,   // sigma(2, w-2) for odd w
  SigmaOdd2,   // sigma(w-2, 2) for odd w
  SigmaEven3,  // sigma(w-3, 3) for odd w >= 7
  LowWeight,   // sigma(3, 1) = J(3)
};

inline const std::set<KnownProvider>& all_providers() {
  static const std::set<KnownProvider> all{KnownProvider::JordanEven, KnownProvider::Sigma2Odd, KnownProvider::SigmaOdd2,
                                           KnownProvider::SigmaEven3, KnownProvider::LowWeight};
  return all;
}

inline std::string_view provider_name(KnownProvider p) {
  switch (p) {
    case KnownProvider::JordanEven: return "jordan_even";
    case KnownProvider::Sigma2Odd: return "sigma_2_odd";
    case KnownProvider::SigmaOdd2: return "sigma_odd_2";
    case KnownProvider::SigmaEven3: return "sigma_even_3";
    case KnownProvider::LowWeight: return "low_weight";
  }
  return "?";
}

/// Closed forms available for the sigmas of weight w.
inline std::map<SumId, SymExpr> known_values(int w, const std::set<KnownProvider>& providers) {
  std::map<SumId, SymExpr> out;
  const bool odd = w % 2 == 1;
  const int a = (w - 1) / 2;
  auto add = [&](KnownProvider p, bool applies, int s, int t, auto&& fn) {
    if (!providers.count(p) || !applies || s < 2 || t < 1) return;
    try {
      out.emplace(SumId::Sigma(s, t), fn());
    } catch (const DomainError&) {
    }
  };
  add(KnownProvider::JordanEven, odd, w - 1, 1, [&] { return jordan_even(a); });
  add(KnownProvider::Sigma2Odd, odd && w >= 5, 2, w - 2, [&] { return sigma_2_odd(a); });
  add(KnownProvider::SigmaOdd2, odd && w >= 5, w - 2, 2, [&] { return sigma_odd_2(a); });
  add(KnownProvider::SigmaEven3, odd && w >= 7, w - 3, 3, [&] { return sigma_even_3(a); });
  add(KnownProvider::LowWeight, w == 4, 3, 1, [&] { return jordan_J3(); });
  return out;
}

struct ResidualCheck {
  size_t relation;  // index into SolveReport::relations
  BigReal difference;
};

struct ValueCheck {
  SumId id;
  BigReal difference;  // oracle minus closed form
};

struct SolveOptions {
  std::set<KnownProvider> providers = all_providers();
  bool all_generators = false;  // product relations only when false
  bool check_residuals = true;
  OracleConfig oracle{1e-12, 10'000'000, 4};
  std::map<SumId, SymExpr> extra_known;  // injected values, taking precedence over providers
};

struct SolveReport {
  int weight = 0;
  std::vector<Relation> relations;
  std::map<SumId, SymExpr> known;
  std::map<SumId, SymExpr> solved;           // includes the known values
  std::map<SumId, SymExpr> cross_checked;    // known values the relations also determine
  std::vector<SumId> unresolved;
  int rank = 0;  // rank of the generated relations alone
  bool consistent = true;
  std::vector<std::string> problems;
  std::vector<ResidualCheck> residual_checks;
  std::vector<ValueCheck> value_checks;
};

namespace detail {

struct Row {
  std::map<SumId, BigRational> c;
  SymExpr rhs;
};

inline void axpy(Row& target, const BigRational& f, const Row& src) {
  for (const auto& [id, v] : src.c) {
    BigRational nv = target.c[id] - f * v;
    if (nv == 0) {
      target.c.erase(id);
    } else {
      target.c[id] = nv;
    }
  }
  target.rhs -= f * src.rhs;
}

struct Reduced {
  std::vector<Row> rows;
  std::map<SumId, size_t> pivot_row;
  int rank = 0;
};

/// Reduced row echelon form; pivots taken column by column in SumId order on
/// the first row with a nonzero entry.
inline Reduced reduce(std::vector<Row> rows, const std::vector<SumId>& columns) {
  Reduced out;
  size_t next = 0;
  for (const SumId& col : columns) {
    size_t p = next;
    while (p < rows.size() && !rows[p].c.count(col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[next], rows[p]);
    const BigRational inv = 1 / rows[next].c.at(col);
    for (auto& [id, v] : rows[next].c) v *= inv;
    rows[next].rhs = inv * rows[next].rhs;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == next) continue;
      auto it = rows[i].c.find(col);
      if (it != rows[i].c.end()) axpy(rows[i], BigRational(it->second), rows[next]);
    }
    out.pivot_row[col] = next++;
  }
  out.rank = static_cast<int>(next);
  out.rows = std::move(rows);
  return out;
}

inline std::map<SumId, SymExpr> solved_values(const Reduced& red) {
  std::map<SumId, SymExpr> out;
  for (const auto& [col, r] : red.pivot_row) {
    if (red.rows[r].c.size() == 1) out.emplace(col, red.rows[r].rhs);
  }
  return out;
}

inline std::vector<Row> rows_of(const std::vector<Relation>& relations, const std::map<SumId, SymExpr>& known) {
  std::vector<Row> rows;
  for (const Relation& r : relations) rows.push_back({r.coefficients, r.rhs});
  for (const auto& [id, value] : known) rows.push_back({{{id, BigRational(1)}}, value});
  return rows;
}

/// Oracle values of every sigma of weight w, evaluated concurrently.
inline std::map<SumId, OracleResult> sigma_oracle_values(int w, const OracleConfig& cfg, const PrecisionContext& ctx) {
  std::vector<std::pair<SumId, std::future<OracleResult>>> jobs;
  for (const SumId& id : sigma_ids(w)) {
    jobs.emplace_back(id, std::async(std::launch::async, [id, cfg, ctx] { return oracle_eval(id, cfg, ctx); }));
  }
  std::map<SumId, OracleResult> out;
  for (auto& [id, job] : jobs) out.emplace(id, job.get());
  return out;
}

inline BigReal relation_difference(const Relation& r, const std::map<SumId, OracleResult>& values,
                                   const PrecisionContext& ctx) {
  BigReal acc(0L, ctx.bits());
  for (const auto& [id, c] : r.coefficients) acc += BigReal(c, ctx.bits()) * values.at(id).value;
  return acc - eval_sym(r.rhs, ctx);
}

}  // namespace detail

/// Solves the relations of weight w for the sigma(w-i, i) with the chosen closed forms injected.
inline SolveReport solve_weight(int w, const SolveOptions& opts, const PrecisionContext& ctx) {
  require(w >= 3, "solve_weight: weight must be at least 3");
  SolveReport rep;
  rep.weight = w;
  for (Relation& r : all_relations(w, !opts.all_generators)) {
    if (!r.is_tautology()) rep.relations.push_back(std::move(r));
  }
  rep.known = known_values(w, opts.providers);
  for (const auto& [id, value] : opts.extra_known) rep.known[id] = value;
  const std::vector<SumId> columns = sigma_ids(w);

  rep.rank = detail::reduce(detail::rows_of(rep.relations, {}), columns).rank;
  detail::Reduced full = detail::reduce(detail::rows_of(rep.relations, rep.known), columns);
  for (size_t i = static_cast<size_t>(full.rank); i < full.rows.size(); ++i) {
    if (!full.rows[i].rhs.is_zero()) {
      rep.consistent = false;
      rep.problems.push_back("inconsistent system: 0 = " + full.rows[i].rhs.to_string());
    }
  }
  rep.solved = detail::solved_values(full);
  for (const SumId& id : columns) {
    if (!rep.solved.count(id)) rep.unresolved.push_back(id);
  }
  // A known value is also derived when the rest of the system determines it.
  for (const auto& [id, value] : rep.known) {
    auto others = rep.known;
    others.erase(id);
    auto derived = detail::solved_values(detail::reduce(detail::rows_of(rep.relations, others), columns));
    auto it = derived.find(id);
    if (it == derived.end()) continue;
    rep.cross_checked.emplace(id, it->second);
    if (!(it->second == value)) {
      rep.consistent = false;
      rep.problems.push_back(id.to_string() + ": closed form and derived value differ");
    }
  }

  if (opts.check_residuals) {
    auto values = detail::sigma_oracle_values(w, opts.oracle, ctx);
    for (size_t i = 0; i < rep.relations.size(); ++i) {
      rep.residual_checks.push_back({i, detail::relation_difference(rep.relations[i], values, ctx)});
    }
    for (const auto& [id, value] : rep.solved) {
      rep.value_checks.push_back({id, values.at(id).value - eval_sym(value, ctx)});
    }
  }
  return rep;
}

inline SolveReport solve_weight(int w, const PrecisionContext& ctx) { return solve_weight(w, SolveOptions{}, ctx); }

struct SumTheoremResult {
  BigReal difference;            // sum of oracle values minus (w-1) lambda(w)
  double numeric_residual = 0;   // |difference| midpoint
  std::optional<bool> symbolic_ok;
  std::string path;              // "all_solved", "row_space" or "numeric_only"
};

/// Checks sum_{i=1}^{w-2} sigma(w-i, i) = (w-1) lambda(w) numerically and, when
/// the relations determine the sum, exactly.
inline SumTheoremResult verify_sum_theorem(int w, const PrecisionContext& ctx, const OracleConfig& cfg) {
  require(w >= 3, "verify_sum_theorem: weight must be at least 3");
  const SymExpr target = BigRational(w - 1) * lambda_sym(w);
  const std::vector<SumId> columns = sigma_ids(w);

  SumTheoremResult out{BigReal(0L, ctx.bits()), 0, std::nullopt, "numeric_only"};
  auto values = detail::sigma_oracle_values(w, cfg, ctx);
  BigReal sum(0L, ctx.bits());
  for (const SumId& id : columns) sum += values.at(id).value;
  out.difference = sum - eval_sym(target, ctx);
  out.numeric_residual = std::abs(out.difference.to_double());

  SolveOptions opts;
  opts.all_generators = true;
  opts.check_residuals = false;
  SolveReport rep = solve_weight(w, opts, ctx);
  if (rep.unresolved.empty()) {
    SymExpr exact;
    for (const SumId& id : columns) exact += rep.solved.at(id);
    out.symbolic_ok = exact == target;
    out.path = "all_solved";
    return out;
  }
  // Reduce the all-ones row against the echelon form; if nothing is left the
  // relations determine the sum even though single values stay open.
  std::vector<Relation> relations = rep.relations;
  detail::Reduced red = detail::reduce(detail::rows_of(relations, rep.known), columns);
  detail::Row probe;
  for (const SumId& id : columns) probe.c[id] = 1;
  for (const auto& [col, r] : red.pivot_row) {
    auto it = probe.c.find(col);
    if (it != probe.c.end()) detail::axpy(probe, BigRational(it->second), red.rows[r]);
  }
  if (probe.c.empty()) {
    out.symbolic_ok = (-probe.rhs) == target;
    out.path = "row_space";
  }
  return out;
}

}  // namespace eulersum

#endif  // EULERSUM_RELATIONS_HPP
