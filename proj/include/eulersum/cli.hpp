#ifndef EULERSUM_CLI_HPP
#define EULERSUM_CLI_HPP

// Command-line front end: eval, oracle, verify, solve and table. run() takes the
// argument list without the program name and writes one document to out.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "eulersum/io.hpp"

namespace eulersum::cli {

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFailed = 2, kBudget = 3 };

inline constexpr int kDefaultBits = 192;

/// Raised for bad flag values; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct IntRange {
  int lo = 0;
  int hi = 0;
};

/// "7" or "3..10".
inline IntRange parse_range(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw UsageError("empty number in '" + text + "'");
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
  };
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = parse_int(text);
    return {v, v};
  }
  IntRange r{parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
  if (r.lo > r.hi) throw UsageError("empty range '" + text + "'");
  return r;
}

/// Parameter flags as given; empty means absent.
struct ParamFlags {
  std::string family;
  std::string id;
  std::map<char, std::string> values;  // keys s, t, a, b, q
};

/// Flags each family reads, in (p1, p2) order. ZetaStar(q,p) and E(p,q) use
/// --s for the outer power and --t for the harmonic-number order.
inline std::vector<char> family_flags(Family f) {
  switch (f) {
    case Family::J:
    case Family::Jbar:
    case Family::EulerStar:
      return {'b'};
    case Family::Sigma:
    case Family::ZetaStar:
      return {'s', 't'};
    case Family::E:
      return {'t', 's'};
    case Family::HOverOdd:
      return {'q'};
    case Family::Z:
    case Family::HoddOverOdd:
    case Family::AltEulerStar:
    case Family::AltTildeH:
      return {'a'};
  }
  return {};
}

inline Family require_family(const std::string& name) {
  auto f = parse_family(name);
  if (!f) {
    std::string known;
    for (Family g : kAllFamilies) known += (known.empty() ? "" : ", ") + std::string(family_name(g));
    throw UsageError("unknown family '" + name + "' (known: " + known + ")");
  }
  return *f;
}

/// Every SumId selected by the flags; ranges are allowed only when allow_ranges.
inline std::vector<SumId> select_ids(const ParamFlags& p, bool allow_ranges) {
  if (!p.id.empty()) {
    if (!p.family.empty() || !p.values.empty()) throw UsageError("--id cannot be combined with --family or parameter flags");
    return {SumId::parse(p.id)};
  }
  if (p.family.empty()) throw UsageError("--family or --id is required");
  const Family f = require_family(p.family);
  const std::vector<char> flags = family_flags(f);
  for (const auto& [name, value] : p.values) {
    if (std::find(flags.begin(), flags.end(), name) == flags.end()) {
      throw UsageError(std::string("--") + name + " does not apply to family " + p.family);
    }
  }
  std::vector<IntRange> ranges;
  for (char name : flags) {
    auto it = p.values.find(name);
    if (it == p.values.end()) throw UsageError(std::string("family ") + p.family + " needs --" + name);
    IntRange r = parse_range(it->second);
    if (!allow_ranges && r.lo != r.hi) throw UsageError(std::string("--") + name + " takes a single value here");
    ranges.push_back(r);
  }
  std::vector<SumId> out;
  const IntRange second = ranges.size() == 2 ? ranges[1] : IntRange{0, 0};
  for (int x = ranges[0].lo; x <= ranges[0].hi; ++x) {
    for (int y = second.lo; y <= second.hi; ++y) out.push_back(SumId::make(f, x, y));
  }
  return out;
}

/// Parameter names and values of an id as the CLI spells them.
inline std::vector<std::pair<char, int>> id_params(const SumId& id) {
  std::vector<char> flags = family_flags(id.family());
  std::vector<std::pair<char, int>> out{{flags[0], id.p1()}};
  if (flags.size() == 2) out.emplace_back(flags[1], id.p2());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::string("stabq").find(x.first) < std::string("stabq").find(y.first);
  });
  return out;
}

inline std::string params_string(const SumId& id) {
  std::string s;
  for (const auto& [name, v] : id_params(id)) s += (s.empty() ? "" : ",") + std::string(1, name) + "=" + std::to_string(v);
  return s;
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

/// Certified combination sum c_i * value_i minus the identity value.
inline BigReal identity_difference(const Identity& ident, const std::map<SumId, OracleResult>& values,
                                   const PrecisionContext& ctx) {
  BigReal diff = -eval_sym(ident.value, ctx);
  for (const auto& [id, c] : ident.combination) diff += BigReal(c, ctx.bits()) * values.at(id).value;
  return diff;
}

/// Oracle values for ids, at most hardware_concurrency at a time.
inline std::map<SumId, OracleResult> oracle_batch(const std::vector<SumId>& ids, const OracleConfig& cfg,
                                                  const PrecisionContext& ctx) {
  std::map<SumId, OracleResult> out;
  const size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (size_t start = 0; start < ids.size(); start += width) {
    std::vector<std::future<OracleResult>> jobs;
    const size_t stop = std::min(ids.size(), start + width);
    for (size_t i = start; i < stop; ++i) {
      jobs.push_back(std::async(std::launch::async, [&, i] { return oracle_eval(ids[i], cfg, ctx); }));
    }
    for (size_t i = start; i < stop; ++i) out.emplace(ids[i], jobs[i - start].get());
  }
  return out;
}

struct Options {
  std::string command;
  ParamFlags params;
  std::string weight;
  std::optional<int> bits;
  std::optional<double> tol;
  long max_terms = 10'000'000;
  std::string format = "json";
  bool pretty = false;
  bool all_generators = false;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out), ctx_(resolve_bits(o.bits)) {
    if (o_.pretty) o_.format = "pretty";
  }

  int dispatch() {
    if (o_.command == "eval") return eval();
    if (o_.command == "oracle") return oracle();
    if (o_.command == "verify") return verify();
    if (o_.command == "solve") return solve();
    return table();
  }

 private:
  static int resolve_bits(const std::optional<int>& flag) {
    int bits = kDefaultBits;
    if (flag) {
      bits = *flag;
    } else if (const char* env = std::getenv("EULERSUM_DEFAULT_BITS"); env && *env) {
      IntRange r = parse_range(env);
      if (r.lo != r.hi) throw UsageError("EULERSUM_DEFAULT_BITS must be a single integer");
      bits = r.lo;
    }
    if (bits < 64) throw UsageError("--bits must be >= 64");
    return bits;
  }

  double default_tol() const { return std::max(1e-10, std::ldexp(1.0, -(ctx_.working_bits - 40))); }

  OracleConfig oracle_config(double tol) const {
    if (!(tol > 0)) throw UsageError("--tol must be positive");
    OracleConfig cfg;
    cfg.target_tolerance = tol;
    cfg.max_terms = o_.max_terms;
    return cfg;
  }

  Json header() const { return Json{{"schema", kSchema}, {"command", o_.command}, {"bits", ctx_.working_bits}}; }

  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  void require_format(std::initializer_list<const char*> allowed) const {
    for (const char* f : allowed) {
      if (o_.format == f) return;
    }
    throw UsageError("--format " + o_.format + " is not available for " + o_.command);
  }

  int eval() {
    require_format({"json", "tsv", "pretty"});
    const SumId id = select_ids(o_.params, false).front();
    auto cf = closed_form(id);
    if (!cf) throw DomainError("no closed form is known for " + id.to_string());
    const BigReal v = eval_sym(*cf, ctx_);
    if (o_.format == "tsv") {
      out_ << "params\tsymbolic\tnumeric\tbound\n"
           << params_string(id) << "\t" << cf->to_string() << "\t" << to_decimal(v) << "\t" << bound_string(v.radius())
           << "\n";
    } else if (o_.format == "pretty") {
      out_ << id.to_string() << " = " << cf->to_string() << "\n  ~ " << to_decimal(v) << " +/- "
           << bound_string(v.radius()) << "\n";
    } else {
      Json j = header();
      j["sum"] = id.to_string();
      j["weight"] = id.weight();
      j["symbolic"] = cf->to_string();
      j["expr"] = to_json(*cf);
      j["value"] = to_decimal(v);
      j["bound"] = bound_string(v.radius());
      emit(j);
    }
    return kOk;
  }

  int oracle() {
    require_format({"json", "tsv", "pretty"});
    const SumId id = select_ids(o_.params, false).front();
    const double tol = o_.tol.value_or(default_tol());
    OracleResult r = oracle_eval(id, oracle_config(tol), ctx_);
    if (o_.format == "tsv") {
      out_ << "params\tnumeric\tbound\tterms\n"
           << params_string(id) << "\t" << to_decimal(r.value) << "\t" << bound_string(r.achieved_bound) << "\t"
           << r.terms_used << "\n";
    } else if (o_.format == "pretty") {
      out_ << id.to_string() << " ~ " << to_decimal(r.value) << " +/- " << bound_string(r.achieved_bound) << " ("
           << r.terms_used << " terms)\n";
    } else {
      Json j = header();
      j["sum"] = id.to_string();
      j["tolerance"] = format_double(tol);
      j["result"] = to_json(r);
      emit(j);
    }
    return kOk;
  }

  struct Check {
    std::string name;
    std::string kind;
    int weight;
    BigReal difference;
    bool pass;
  };

  int verify() {
    require_format({"json", "pretty"});
    if (!o_.params.values.empty() || !o_.params.id.empty()) throw UsageError("verify takes --family and --weight only");
    IntRange weights{3, 11};
    if (!o_.weight.empty()) weights = parse_range(o_.weight);
    if (weights.lo < 3) throw UsageError("--weight must start at 3 or more");
    std::optional<Family> family;
    if (!o_.params.family.empty()) family = require_family(o_.params.family);
    const double tol = o_.tol.value_or(1e-8);
    if (!(tol > 0)) throw UsageError("--tol must be positive");
    // Per-sum oracle tolerance leaves room for coefficient growth.
    const double floor = std::ldexp(1.0, -(ctx_.contract_bits() - 2));
    const OracleConfig cfg = oracle_config(std::max(tol * 1e-4, floor));

    std::vector<Identity> idents;
    for (Identity& ident : identity_catalogue(weights.hi)) {
      if (ident.weight() < weights.lo) continue;
      bool hit = !family;
      for (const auto& [id, c] : ident.combination) hit = hit || id.family() == *family;
      if (hit) idents.push_back(std::move(ident));
    }
    std::vector<Relation> relations;
    if (!family || *family == Family::Sigma) {
      for (int w = weights.lo; w <= weights.hi; ++w) {
        for (Relation& r : all_relations(w)) {
          if (!r.is_tautology()) relations.push_back(std::move(r));
        }
      }
    }
    std::vector<SumId> needed;
    for (const Identity& ident : idents) {
      for (const auto& [id, c] : ident.combination) needed.push_back(id);
    }
    for (const Relation& r : relations) {
      for (const auto& [id, c] : r.coefficients) needed.push_back(id);
    }
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
    const auto values = oracle_batch(needed, cfg, ctx_);

    const Bound limit(tol);
    auto certified = [&](const BigReal& d) { return Bound::from_mpfr_abs(d.mid()) + d.radius() <= limit; };
    std::vector<Check> checks;
    for (const Identity& ident : idents) {
      BigReal d = identity_difference(ident, values, ctx_);
      checks.push_back({ident.name, "identity", ident.weight(), d, certified(d)});
    }
    for (const Relation& r : relations) {
      BigReal d = detail::relation_difference(r, values, ctx_);
      checks.push_back({r.source, "relation", r.weight, d, certified(d)});
    }
    const long failed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });

    if (o_.format == "pretty") {
      for (const Check& c : checks) {
        out_ << (c.pass ? "PASS " : "FAIL ") << c.kind << " w=" << c.weight << " " << c.name << " |diff| "
             << bound_string(Bound::from_mpfr_abs(c.difference.mid())) << " +/- " << bound_string(c.difference.radius())
             << "\n";
      }
      out_ << (checks.size() - failed) << " passed, " << failed << " failed\n";
    } else {
      Json j = header();
      j["scope"] = Json{{"family", family ? Json(std::string(family_name(*family))) : Json()},
                        {"weight", std::to_string(weights.lo) + ".." + std::to_string(weights.hi)}};
      j["tolerance"] = format_double(tol);
      j["passed"] = static_cast<long>(checks.size()) - failed;
      j["failed"] = failed;
      Json list = Json::array();
      for (const Check& c : checks) {
        list.push_back(Json{{"name", c.name},
                            {"kind", c.kind},
                            {"weight", c.weight},
                            {"difference", bound_string(Bound::from_mpfr_abs(c.difference.mid()))},
                            {"bound", bound_string(c.difference.radius())},
                            {"pass", c.pass}});
      }
      j["checks"] = list;
      emit(j);
    }
    return failed == 0 ? kOk : kVerifyFailed;
  }

  int solve() {
    require_format({"json", "pretty"});
    if (!o_.params.values.empty() || !o_.params.id.empty() || !o_.params.family.empty()) {
      throw UsageError("solve takes --weight only");
    }
    if (o_.weight.empty()) throw UsageError("solve needs --weight");
    IntRange w = parse_range(o_.weight);
    if (w.lo != w.hi) throw UsageError("solve takes a single weight");
    SolveOptions opts;
    opts.all_generators = o_.all_generators;
    opts.oracle = oracle_config(o_.tol.value_or(std::max(1e-12, std::ldexp(1.0, -(ctx_.contract_bits() - 2)))));
    opts.oracle.max_terms = o_.max_terms;
    SolveReport rep = solve_weight(w.lo, opts, ctx_);
    if (o_.format == "pretty") {
      out_ << "weight " << rep.weight << ": " << rep.relations.size() << " relations, rank " << rep.rank
           << (rep.consistent ? ", consistent" : ", INCONSISTENT") << "\n";
      for (const auto& [id, v] : rep.solved) {
        out_ << "  " << id.to_string() << " = " << v.to_string() << (rep.known.count(id) ? "  [known]" : "") << "\n";
      }
      for (const SumId& id : rep.unresolved) out_ << "  " << id.to_string() << " unresolved\n";
      for (const std::string& p : rep.problems) out_ << "  problem: " << p << "\n";
    } else {
      Json j = header();
      j["report"] = to_json(rep);
      emit(j);
    }
    return rep.consistent ? kOk : kVerifyFailed;
  }

  int table() {
    require_format({"json", "tsv", "pretty"});
    if (!o_.params.id.empty()) throw UsageError("table takes --family with parameter ranges");
    const std::vector<SumId> ids = select_ids(o_.params, true);
    const double tol = o_.tol.value_or(default_tol());
    const OracleConfig cfg = oracle_config(tol);
    struct Row {
      SumId id;
      std::optional<SymExpr> symbolic;
      BigReal value;
    };
    std::vector<Row> rows;
    for (const SumId& id : ids) {
      auto cf = closed_form(id);
      BigReal v = cf ? eval_sym(*cf, ctx_) : oracle_eval(id, cfg, ctx_).value;
      rows.push_back({id, cf, v});
    }
    if (o_.format == "tsv") {
      out_ << "params\tsymbolic\tnumeric\tbound\n";
      for (const Row& r : rows) {
        out_ << params_string(r.id) << "\t" << (r.symbolic ? r.symbolic->to_string() : "") << "\t"
             << to_decimal(r.value) << "\t" << bound_string(r.value.radius()) << "\n";
      }
    } else if (o_.format == "pretty") {
      for (const Row& r : rows) {
        out_ << std::left << std::setw(14) << r.id.to_string() << " " << std::setw(44) << to_decimal(r.value) << " "
             << (r.symbolic ? r.symbolic->to_string() : "(oracle)") << "\n";
      }
    } else {
      Json j = header();
      j["family"] = std::string(family_name(ids.front().family()));
      Json list = Json::array();
      for (const Row& r : rows) {
        Json params;
        for (const auto& [name, v] : id_params(r.id)) params[std::string(1, name)] = v;
        list.push_back(Json{{"sum", r.id.to_string()},
                            {"params", params},
                            {"symbolic", r.symbolic ? Json(r.symbolic->to_string()) : Json()},
                            {"value", to_decimal(r.value)},
                            {"bound", bound_string(r.value.radius())},
                            {"source", r.symbolic ? "closed_form" : "oracle"}});
      }
      j["rows"] = list;
      emit(j);
    }
    return kOk;
  }

  Options o_;
  std::ostream& out_;
  PrecisionContext ctx_;
};

inline void add_param_flags(CLI::App* sub, Options& o, bool ranges) {
  sub->add_option("--family", o.params.family, "Series family");
  sub->add_option("--id", o.params.id, "Series id such as Sigma(4,3)");
  const char* what = ranges ? " (value or lo..hi)" : "";
  for (char name : std::string("stabq")) {
    sub->add_option_function<std::string>(
        std::string("--") + name, [&o, name](const std::string& v) { o.params.values[name] = v; },
        std::string("Parameter ") + name + what);
  }
}

inline void add_common_flags(CLI::App* sub, Options& o, bool with_format) {
  sub->add_option("--bits", o.bits, "Working precision in bits (>= 64)");
  sub->add_option("--tol", o.tol, "Target tolerance");
  sub->add_option("--max-terms", o.max_terms, "Oracle term budget");
  if (with_format) sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "tsv", "pretty"}));
  sub->add_flag("--pretty", o.pretty, "Human-readable output");
}

/// Runs one command. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Symbolic and certified numeric evaluation of Jordan and sigma-Euler sums"};
  app.name("eulersum");
  app.require_subcommand(1);

  CLI::App* eval = app.add_subcommand("eval", "Closed form and its value");
  add_param_flags(eval, o, false);
  add_common_flags(eval, o, true);
  CLI::App* oracle = app.add_subcommand("oracle", "Certified direct summation");
  add_param_flags(oracle, o, false);
  add_common_flags(oracle, o, true);
  CLI::App* verify = app.add_subcommand("verify", "Check identities and relations against the oracle");
  verify->add_option("--family", o.params.family, "Restrict to identities involving this family");
  verify->add_option("--weight", o.weight, "Weight or range lo..hi (default 3..11)");
  add_common_flags(verify, o, true);
  CLI::App* solve = app.add_subcommand("solve", "Solve the sigma relations of one weight");
  solve->add_option("--weight", o.weight, "Weight")->required();
  solve->add_flag("--all-generators", o.all_generators, "Use every relation generator");
  add_common_flags(solve, o, true);
  CLI::App* table = app.add_subcommand("table", "Tabulate a family over parameter ranges");
  add_param_flags(table, o, true);
  add_common_flags(table, o, true);

  std::vector<std::string> argv_storage{"eulersum"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  for (CLI::App* sub : {eval, oracle, verify, solve, table}) {
    if (sub->parsed()) o.command = sub->get_name();
  }

  try {
    Runner runner(o, out);
    return runner.dispatch();
  } catch (const UsageError& e) {
    err << "eulersum: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "eulersum: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExhausted& e) {
    err << "eulersum: " << e.what() << "\n";
    return kBudget;
  } catch (const PrecisionExhausted& e) {
    err << "eulersum: " << e.what() << "\n";
    return kBudget;
  }
}

}  // namespace eulersum::cli

#endif  // EULERSUM_CLI_HPP
