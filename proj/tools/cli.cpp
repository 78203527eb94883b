#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <complex>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "decat/exprlang.hpp"
#include "decat/fock.hpp"
#include "decat/groupoid.hpp"
#include "decat/series.hpp"
#include "decat/species.hpp"

namespace decat::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kDigits = 10;
constexpr std::size_t kMaxTerms = 4096;
constexpr std::size_t kMaxSetSize = 1000;
constexpr const char* kSchemaVersion = "1";

// Malformed command-line input that is not an expression: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string exact(const Rational& q) { return decat::to_string(q); }

json decimal(const std::string& digits) {
  return {{"digits", digits}, {"approximate", true}, {"significant_digits", kDigits}};
}

json decimal(const Rational& q) { return decimal(to_decimal(q, kDigits)); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kDigits, v);
  return buf;
}

std::string with_decimal(const json& value, const json& dec) {
  return value.get<std::string>() + " (approx " + dec["digits"].get<std::string>() + ", " +
         std::to_string(kDigits) + " significant digits)";
}

std::string caret_report(const std::string& label, std::size_t start, std::size_t end,
                         const std::string& message, const std::string& source) {
  std::string out = label + " at " + std::to_string(start) + ".." + std::to_string(end) + ": " +
                    message + "\n  " + source + "\n  " + std::string(start, ' ') +
                    std::string(std::max<std::size_t>(1, end - start), '^') + "\n";
  return out;
}

std::uint64_t parse_count(std::string_view text, const std::string& what) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw UsageError("invalid " + what + " '" + std::string(text) + "'");
  return value;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Rational parse_arg_rational(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("invalid " + what + " '" + text + "'");
  }
}

// Parse errors in expressions carry the source so the caret line can be drawn.
struct ExpressionError {
  exprlang::ParseError error;
  std::string source;
};

species::SpeciesExpr parse_species_arg(const std::string& src) {
  try {
    return exprlang::parse_species(src);
  } catch (const exprlang::ParseError& e) {
    throw ExpressionError{e, src};
  }
}

exprlang::OperatorExpr parse_operator_arg(const std::string& src) {
  try {
    return exprlang::parse_operator(src);
  } catch (const exprlang::ParseError& e) {
    throw ExpressionError{e, src};
  }
}

series::CountSeq compile_for(const species::SpeciesExpr& expr, std::size_t terms) {
  return species::compile(expr, {}, {std::max(series::kDefaultOrder, terms)});
}

void check_terms(std::size_t terms) {
  if (terms > kMaxTerms) throw UsageError("--terms is capped at " + std::to_string(kMaxTerms));
}

json eval_fields(const series::EvalResult& r) {
  json out;
  out["status"] = series::to_string(r.status);
  out["value"] = exact(r.value);
  out["value_decimal"] = decimal(r.value);
  out["terms_used"] = r.terms_used;
  if (r.tail_bound) {
    out["tail_bound"] = exact(*r.tail_bound);
    out["tail_bound_decimal"] = decimal(*r.tail_bound);
  } else {
    out["tail_bound"] = nullptr;
    out["tail_bound_decimal"] = nullptr;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands. Each returns the "result" object of the output document.

struct CoeffArgs {
  std::string expr;
  std::size_t terms = 10;
  bool egf = false;
};

json cmd_coeff(const CoeffArgs& a) {
  check_terms(a.terms);
  const auto expr = parse_species_arg(a.expr);
  const auto seq = compile_for(expr, a.terms);
  json result;
  result["expression"] = a.expr;
  result["terms"] = a.terms;
  result["view"] = a.egf ? "egf_coefficient" : "count";
  json values = json::array(), sequence = json::array();
  for (std::size_t n = 0; n < a.terms; ++n) {
    const Rational count = seq.term(n);
    const Rational egf = seq.egf(n);
    values.push_back(exact(a.egf ? egf : count));
    sequence.push_back({{"n", n}, {"count", exact(count)}, {"egf_coefficient", exact(egf)}});
  }
  result["values"] = std::move(values);
  result["sequence"] = std::move(sequence);
  return result;
}

struct EvalArgs {
  std::string expr;
  std::string at = "1";
  std::size_t terms = 64;
  std::string tol = "1e-9";
};

json cmd_eval(const EvalArgs& a) {
  check_terms(a.terms);
  const Rational at = parse_arg_rational(a.at, "--at value");
  const Rational tol = parse_arg_rational(a.tol, "--tol value");
  const auto expr = parse_species_arg(a.expr);
  const series::EvalPoint point(at);
  const auto seq = compile_for(expr, a.terms);
  const auto r = series::evaluate(seq, point, a.terms, tol);

  json result;
  result["expression"] = a.expr;
  result["at"] = exact(at);
  result["max_terms"] = a.terms;
  result["tol"] = exact(tol);
  result.update(eval_fields(r));
  if (expr.kind() == species::Kind::BinaryTrees && r.status == series::EvalStatus::diverged &&
      at != 0) {
    const auto z = series::catalan_closed_form(at);
    result["note"] =
        "the series diverges here; the closed form (1 - sqrt(1 - 4x))/(2x) continues it";
    result["continuation"] = {{"re", decimal(format_double(z.real()))},
                              {"im", decimal(format_double(z.imag()))}};
  }
  return result;
}

struct InnerArgs {
  std::string left, right;
  std::size_t terms = 64;
  std::string tol = "1e-9";
};

json cmd_inner(const InnerArgs& a) {
  check_terms(a.terms);
  const Rational tol = parse_arg_rational(a.tol, "--tol value");
  const auto f = compile_for(parse_species_arg(a.left), a.terms);
  const auto g = compile_for(parse_species_arg(a.right), a.terms);
  const auto r = fock::inner_product(f, g, a.terms, tol);
  json result;
  result["left"] = a.left;
  result["right"] = a.right;
  result["max_terms"] = a.terms;
  result["tol"] = exact(tol);
  result.update(eval_fields(r));
  return result;
}

struct QuotientArgs {
  std::size_t size = 0;
  std::string gens;
};

json cmd_quotient(const QuotientArgs& a) {
  if (a.size > kMaxSetSize)
    throw UsageError("--size is capped at " + std::to_string(kMaxSetSize));
  const auto generators = groupoid::parse_generators(a.gens, a.size);
  const auto q = groupoid::weak_quotient(groupoid::PermAction(a.size, generators));
  json result;
  result["set_size"] = a.size;
  result["generators"] = a.gens;
  result["group_order"] = q.group_order;
  json orbits = json::array();
  for (const auto& o : q.orbits)
    orbits.push_back({{"elements", o.elements}, {"stabilizer_order", o.stabilizer_order}});
  result["orbits"] = std::move(orbits);
  result["cardinality"] = exact(q.cardinality);
  result["cardinality_decimal"] = decimal(q.cardinality);
  return result;
}

struct HomotopyArgs {
  std::string components;
};

json cmd_homotopy(const HomotopyArgs& a) {
  groupoid::HomotopyOrders orders;
  for (const auto& component : split(a.components, ';')) {
    std::vector<std::uint64_t> groups;
    if (!component.empty())
      for (const auto& o : split(component, ','))
        groups.push_back(parse_count(o, "group order"));
    orders.push_back(std::move(groups));
  }
  const Rational c = groupoid::homotopy_cardinality(orders);
  json result;
  result["components"] = orders;
  result["cardinality"] = exact(c);
  result["cardinality_decimal"] = decimal(c);
  return result;
}

struct WickArgs {
  std::optional<std::uint32_t> power;
  std::optional<std::string> normal;
};

json cmd_wick(const WickArgs& a) {
  fock::WeylOp op;
  json result;
  if (a.power) {
    op = fock::wick_power(*a.power);
    result["input"] = ":Phi^" + std::to_string(*a.power) + ":";
  } else {
    op = fock::evaluate(parse_operator_arg(*a.normal));
    result["input"] = *a.normal;
  }
  result["normal_form"] = fock::to_string(op);
  json terms = json::array();
  for (const auto& [m, c] : op.terms())
    terms.push_back({{"j", m.creators}, {"l", m.annihilators}, {"coefficient", exact(c)}});
  result["terms"] = std::move(terms);
  return result;
}

struct FeynmanArgs {
  std::string valences;
  std::uint32_t out = 0;
  std::uint32_t in = 0;
  bool oracle = false;
  bool diagrams = false;
};

json cmd_feynman(const FeynmanArgs& a, bool& mismatch) {
  fock::MatchingProblem problem;
  if (!trim(a.valences).empty())
    for (const auto& v : split(a.valences, ',')) {
      const auto p = parse_count(v, "valence");
      if (p > fock::kMaxLegs) throw TooLarge("valence " + v + " exceeds the leg cap");
      problem.valences.push_back(static_cast<std::uint32_t>(p));
    }
  problem.out_legs = a.out;
  problem.in_legs = a.in;
  const Rational algebraic = fock::feynman_algebraic(problem);

  json result;
  result["valences"] = problem.valences;
  result["out_legs"] = a.out;
  result["in_legs"] = a.in;
  result["algebraic"] = exact(algebraic);
  if (a.oracle || a.diagrams) {
    const auto count = fock::feynman_oracle(problem, a.diagrams);
    result["oracle"] = count.count;
    mismatch = Rational(Integer(std::to_string(count.count))) != algebraic;
    result["verdict"] = mismatch ? "mismatch" : "agree";
    if (a.diagrams) {
      json list = json::array();
      for (const auto& d : count.diagrams) {
        json pairs = json::array();
        for (const auto& [x, y] : d) pairs.push_back({fock::to_string(x), fock::to_string(y)});
        list.push_back(std::move(pairs));
      }
      result["diagrams"] = std::move(list);
    }
  }
  return result;
}

struct OracleArgs {
  std::string expr;
  std::size_t nmax = 7;
};

json cmd_oracle(const OracleArgs& a, bool& mismatch) {
  const auto expr = parse_species_arg(a.expr);
  species::OracleReport report;
  try {
    report = species::oracle_check(expr, a.nmax);
  } catch (const species::OracleMismatch& e) {
    report = e.report;
    mismatch = true;
  }
  json result;
  result["expression"] = a.expr;
  result["nmax"] = a.nmax;
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"n", r.n}, {"engine", exact(r.engine)}, {"enumerated", r.enumerated}});
  result["rows"] = std::move(rows);
  result["verdict"] = mismatch ? "mismatch" : "agree";
  return result;
}

// ---------------------------------------------------------------------------
// Plain-text rendering of a document.

std::string join(const json& values, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += values[i].is_string() ? values[i].get<std::string>() : values[i].dump();
  }
  return out;
}

void render_eval_fields(const json& r, std::ostream& out) {
  out << "max_terms: " << r["max_terms"].dump() << "\n";
  out << "tol: " << r["tol"].get<std::string>() << "\n";
  out << "status: " << r["status"].get<std::string>() << "\n";
  out << "value: " << with_decimal(r["value"], r["value_decimal"]) << "\n";
  out << "terms_used: " << r["terms_used"].dump() << "\n";
  if (r["tail_bound"].is_null())
    out << "tail_bound: none\n";
  else
    out << "tail_bound: " << with_decimal(r["tail_bound"], r["tail_bound_decimal"]) << "\n";
}

void render_plain(const json& doc, std::ostream& out) {
  const std::string cmd = doc["command"];
  const json& r = doc["result"];
  if (cmd == "coeff") {
    out << "species: " << r["expression"].get<std::string>() << "\n";
    out << "terms: " << r["terms"].dump() << "\n";
    out << r["view"].get<std::string>() << ": " << join(r["values"], ", ") << "\n";
    out << "n  count  egf_coefficient\n";
    for (const auto& row : r["sequence"])
      out << row["n"].dump() << "  " << row["count"].get<std::string>() << "  "
          << row["egf_coefficient"].get<std::string>() << "\n";
  } else if (cmd == "eval") {
    out << "species: " << r["expression"].get<std::string>() << "\n";
    out << "at: " << r["at"].get<std::string>() << "\n";
    render_eval_fields(r, out);
    if (r.contains("note")) {
      out << "note: " << r["note"].get<std::string>() << "\n";
      out << "continuation: re " << r["continuation"]["re"]["digits"].get<std::string>() << ", im "
          << r["continuation"]["im"]["digits"].get<std::string>() << " (approx, " << kDigits
          << " significant digits)\n";
    }
  } else if (cmd == "inner") {
    out << "left: " << r["left"].get<std::string>() << "\n";
    out << "right: " << r["right"].get<std::string>() << "\n";
    render_eval_fields(r, out);
  } else if (cmd == "quotient") {
    out << "set_size: " << r["set_size"].dump() << "\n";
    out << "group_order: " << r["group_order"].dump() << "\n";
    out << "orbit  stabilizer_order\n";
    for (const auto& o : r["orbits"])
      out << "{" << join(o["elements"], ",") << "}  " << o["stabilizer_order"].dump() << "\n";
    out << "cardinality: " << with_decimal(r["cardinality"], r["cardinality_decimal"]) << "\n";
  } else if (cmd == "homotopy") {
    std::string components;
    for (const auto& c : r["components"])
      components += (components.empty() ? "" : "; ") + join(c, ",");
    out << "components: " << components << "\n";
    out << "cardinality: " << with_decimal(r["cardinality"], r["cardinality_decimal"]) << "\n";
  } else if (cmd == "wick") {
    out << "normal_form: " << r["normal_form"].get<std::string>() << "\n";
    out << "j  l  coefficient\n";
    for (const auto& t : r["terms"])
      out << t["j"].dump() << "  " << t["l"].dump() << "  " << t["coefficient"].get<std::string>()
          << "\n";
  } else if (cmd == "feynman") {
    out << "valences: " << join(r["valences"], ",") << "\n";
    out << "out_legs: " << r["out_legs"].dump() << "\n";
    out << "in_legs: " << r["in_legs"].dump() << "\n";
    out << "algebraic: " << r["algebraic"].get<std::string>() << "\n";
    if (r.contains("oracle")) {
      out << "oracle: " << r["oracle"].dump() << "\n";
      out << "verdict: " << r["verdict"].get<std::string>() << "\n";
    }
    if (r.contains("diagrams"))
      for (const auto& d : r["diagrams"]) {
        std::string line;
        for (const auto& p : d)
          line += (line.empty() ? "" : " ") + p[0].get<std::string>() + "-" +
                  p[1].get<std::string>();
        out << line << "\n";
      }
  } else if (cmd == "oracle") {
    out << "species: " << r["expression"].get<std::string>() << "\n";
    out << "nmax: " << r["nmax"].dump() << "\n";
    out << "n  engine  enumerated\n";
    for (const auto& row : r["rows"])
      out << row["n"].dump() << "  " << row["engine"].get<std::string>() << "  "
          << row["enumerated"].dump() << "\n";
    out << "verdict: " << r["verdict"].get<std::string>() << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting for species, groupoids and Fock-space operators", "decat"};
  app.require_subcommand(1);
  bool as_json = false;
  auto add_json = [&](CLI::App* sub) {
    sub->add_flag("--json", as_json, "Emit the JSON document instead of plain text");
  };

  CoeffArgs coeff;
  auto* c = app.add_subcommand("coeff", "Counting sequence or EGF coefficients of a species");
  c->add_option("expr", coeff.expr, "Species expression")->required();
  c->add_option("--terms", coeff.terms, "Number of terms")->capture_default_str();
  c->add_flag("--egf", coeff.egf, "Show EGF coefficients F_n/n! instead of counts");
  add_json(c);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Evaluate the generating function at a rational point");
  e->add_option("expr", eval.expr, "Species expression")->required();
  e->add_option("--at", eval.at, "Point p/q >= 0")->capture_default_str();
  e->add_option("--terms", eval.terms, "Maximum number of terms")->capture_default_str();
  e->add_option("--tol", eval.tol, "Tail tolerance")->capture_default_str();
  add_json(e);

  InnerArgs inner;
  auto* i = app.add_subcommand("inner", "Fock inner product <F, G>");
  i->add_option("left", inner.left, "Species expression F")->required();
  i->add_option("right", inner.right, "Species expression G")->required();
  i->add_option("--terms", inner.terms, "Maximum number of terms")->capture_default_str();
  i->add_option("--tol", inner.tol, "Tail tolerance")->capture_default_str();
  add_json(i);

  QuotientArgs quotient;
  auto* q = app.add_subcommand("quotient", "Weak quotient of a permutation action");
  q->add_option("--size", quotient.size, "Size n of the set {1..n}")->required();
  q->add_option("--gens", quotient.gens, "Generators in cycle notation, separated by ';'");
  add_json(q);

  HomotopyArgs homotopy;
  auto* h = app.add_subcommand("homotopy", "Homotopy cardinality from homotopy group orders");
  h->add_option("--components", homotopy.components,
                "Orders |pi_1|,|pi_2|,... per component, components separated by ';'")
      ->required();
  add_json(h);

  WickArgs wick;
  std::uint32_t power = 0;
  std::string normal;
  auto* w = app.add_subcommand("wick", "Normal-ordered form of a Wick power or operator");
  auto* power_opt = w->add_option("--power", power, "Wick power :Phi^p:");
  auto* normal_opt = w->add_option("--normal", normal, "Operator expression to normal-order");
  power_opt->excludes(normal_opt);
  add_json(w);

  FeynmanArgs feynman;
  auto* f = app.add_subcommand("feynman", "Count Feynman diagrams for a product of Wick powers");
  f->add_option("--valences", feynman.valences, "Vertex valences, comma separated");
  f->add_option("--out", feynman.out, "Outgoing external legs")->capture_default_str();
  f->add_option("--in", feynman.in, "Incoming external legs")->capture_default_str();
  f->add_flag("--oracle", feynman.oracle, "Also enumerate matchings and compare");
  f->add_flag("--diagrams", feynman.diagrams, "List every enumerated diagram");
  add_json(f);

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Compare engine counts with brute-force enumeration");
  o->add_option("expr", oracle.expr, "Species expression")->required();
  o->add_option("--nmax", oracle.nmax, "Largest set size")->capture_default_str();
  add_json(o);

  std::vector<std::string> argv_storage{"decat"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["argv"] = args;
  bool mismatch = false;
  try {
    if (*c) {
      doc["command"] = "coeff";
      doc["result"] = cmd_coeff(coeff);
    } else if (*e) {
      doc["command"] = "eval";
      doc["result"] = cmd_eval(eval);
    } else if (*i) {
      doc["command"] = "inner";
      doc["result"] = cmd_inner(inner);
    } else if (*q) {
      doc["command"] = "quotient";
      doc["result"] = cmd_quotient(quotient);
    } else if (*h) {
      doc["command"] = "homotopy";
      doc["result"] = cmd_homotopy(homotopy);
    } else if (*w) {
      if (!*power_opt && !*normal_opt) throw UsageError("wick needs --power or --normal");
      if (*power_opt) wick.power = power;
      if (*normal_opt) wick.normal = normal;
      doc["command"] = "wick";
      doc["result"] = cmd_wick(wick);
    } else if (*f) {
      doc["command"] = "feynman";
      doc["result"] = cmd_feynman(feynman, mismatch);
    } else if (*o) {
      doc["command"] = "oracle";
      doc["result"] = cmd_oracle(oracle, mismatch);
    }
  } catch (const ExpressionError& ex) {
    err << exprlang::format_error(ex.error, ex.source);
    return kExitParse;
  } catch (const groupoid::BadCycle& ex) {
    err << caret_report("BadCycle", ex.start, ex.end, ex.what(), quotient.gens);
    return kExitParse;
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitParse;
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitDomain;
  }

  if (as_json)
    out << doc.dump(2) << "\n";
  else
    render_plain(doc, out);
  if (mismatch) {
    err << "error: engine and oracle disagree\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace decat::cli
