// tcw — theory-combination workbench

#include "tcw/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tcw/errors.hpp"
#include "tcw/formula.hpp"
#include "tcw/minmod.hpp"
#include "tcw/oracle.hpp"
#include "tcw/properties.hpp"
#include "tcw/theory.hpp"
#include "tcw/witness.hpp"

namespace tcw {

namespace {

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInput = 3;
constexpr int kExitExhausted = 4;

using Report = std::vector<std::pair<std::string, std::string>>;

void emit_json_like(const Report& kv, int exit_code) {
  std::cout << "[report]\n";
  for (const auto& [k, v] : kv) std::cout << k << " = " << v << "\n";
  std::cout << "exit = " << exit_code << "\n";
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Proved:
      return kExitPositive;
    case Verdict::Refuted:
      return kExitNegative;
    case Verdict::Unknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

std::uint64_t default_bound(const Signature& sig) {
  return sig.has_unary_fn ? 4 : 6;
}

std::string mode_word(bool exact) { return exact ? "exact" : "bounded"; }

std::vector<int> parse_sort_subset(const Signature& sig, const std::string& csv) {
  std::vector<int> out;
  if (csv.empty()) {
    for (std::size_t i = 0; i < sig.sorts.size(); ++i) out.push_back(static_cast<int>(i));
    return out;
  }
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    const int idx = sig.sort_index(tok);
    if (idx < 0) throw CatalogError("unknown sort '" + tok + "'");
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw CatalogError("empty sort list");
  return out;
}

std::string sort_names(const Signature& sig, const std::vector<int>& S) {
  std::string out;
  for (std::size_t i = 0; i < S.size(); ++i) {
    out += (i ? "," : "") + sig.sorts[static_cast<std::size_t>(S[i])];
  }
  return out;
}

// kind(inner) split for the transfer route, which needs the base theory
// rather than the derived one.
std::optional<std::pair<OperatorKind, std::string>> split_operator_ref(
    const std::string& ref) {
  for (const char* op : {"add_sort", "add_fn_id", "add_fn_or"}) {
    const std::string prefix = std::string(op) + "(";
    if (ref.size() > prefix.size() + 1 && ref.rfind(prefix, 0) == 0 &&
        ref.back() == ')') {
      return std::make_pair(parse_operator_kind(op),
                            ref.substr(prefix.size(), ref.size() - prefix.size() - 1));
    }
  }
  return std::nullopt;
}

struct Opts {
  std::string theory;
  std::string formula;
  std::string sorts;
  std::string catalog = "catalog";
  std::string method = "generic";
  std::string property;
  std::string kind;
  std::uint64_t bound = 0;
  bool has_bound = false;
  bool json_like = false;
  bool validate = false;
  bool strong = false;
};

std::uint64_t pick_bound(const Opts& o, const Signature& sig) {
  return o.has_bound ? o.bound : default_bound(sig);
}

int cmd_parse(const Opts& o) {
  Signature sig;
  if (!o.theory.empty()) {
    sig = resolve_theory(o.theory, o.catalog).sig;
  } else if (!o.sorts.empty()) {
    std::vector<std::string> names;
    std::istringstream in(o.sorts);
    std::string tok;
    while (std::getline(in, tok, ',')) names.push_back(tok);
    sig = Signature::with_unary(std::move(names));
  } else {
    sig = Signature::with_unary({"s1"});
  }
  const Formula f = parse_formula(o.formula, sig);
  const std::string canon = to_string(f, sig);
  std::cout << canon << "\n";
  if (o.json_like) {
    emit_json_like({{"command", "parse"}, {"formula", canon}}, kExitPositive);
  }
  return kExitPositive;
}

int cmd_sat(const Opts& o) {
  const TheoryDef t = resolve_theory(o.theory, o.catalog);
  const Formula f = parse_formula(o.formula, t.sig);
  const bool sat = satisfiable(t, f);
  std::cout << "theory:  " << t.name << "\n";
  std::cout << "formula: " << to_string(f, t.sig) << "\n";
  std::cout << "verdict: " << (sat ? "sat" : "unsat") << "\n";
  std::cout << (sat ? "SAT" : "UNSAT") << "\n";
  const int code = sat ? kExitPositive : kExitNegative;
  if (o.json_like) {
    emit_json_like({{"command", "sat"},
                    {"theory", t.name},
                    {"formula", to_string(f, t.sig)},
                    {"verdict", sat ? "sat" : "unsat"}},
                   code);
  }
  return code;
}

int cmd_minmod(const Opts& o) {
  std::vector<CardTuple> tuples;
  std::string theory_name;
  std::string formula_text;
  std::string sorts_text;
  bool complete = true;
  if (o.method == "transfer") {
    const auto split = split_operator_ref(o.theory);
    if (!split) {
      throw CatalogError(
          "--method transfer needs an operator expression theory reference, "
          "e.g. add_sort(T_geq_2)");
    }
    if (!o.sorts.empty()) {
      throw CatalogError("--method transfer computes over all sorts");
    }
    const TheoryDef base = resolve_theory(split->second, o.catalog);
    const TheoryDef derived = apply_operator(split->first, base);
    const Formula f = parse_formula(o.formula, derived.sig);
    tuples = minmod_via_transfer(split->first, base, f);
    theory_name = derived.name;
    formula_text = to_string(f, derived.sig);
    sorts_text = sort_names(derived.sig, parse_sort_subset(derived.sig, ""));
  } else {
    const TheoryDef t = resolve_theory(o.theory, o.catalog);
    const Formula f = parse_formula(o.formula, t.sig);
    const std::vector<int> S = parse_sort_subset(t.sig, o.sorts);
    if (o.method == "oracle") {
      OracleBudget budget = OracleBudget::from_env();
      const auto res = oracle_minmod(t, f, S, pick_bound(o, t.sig), &budget);
      tuples = res.tuples;
      complete = res.complete;
    } else {
      tuples = minmod(t, S, f);
    }
    theory_name = t.name;
    formula_text = to_string(f, t.sig);
    sorts_text = sort_names(t.sig, S);
  }
  std::cout << "theory:  " << theory_name << "\n";
  std::cout << "formula: " << formula_text << "\n";
  std::cout << "method:  " << o.method << "\n";
  std::cout << "sorts:   " << sorts_text << "\n";
  std::cout << "minmod:  " << to_string(tuples) << "\n";
  if (o.method == "oracle") {
    std::cout << "complete: " << (complete ? "yes" : "no") << "\n";
  }
  if (tuples.empty()) std::cout << "UNSAT\n";
  int code = tuples.empty() ? kExitNegative : kExitPositive;
  if (!complete) code = kExitUnknown;
  if (o.json_like) {
    Report kv{{"command", "minmod"},
              {"theory", theory_name},
              {"formula", formula_text},
              {"method", o.method},
              {"sorts", sorts_text},
              {"minmod", to_string(tuples)}};
    if (o.method == "oracle") kv.emplace_back("complete", complete ? "yes" : "no");
    emit_json_like(kv, code);
  }
  return code;
}

int cmd_witness(const Opts& o) {
  const TheoryDef t = resolve_theory(o.theory, o.catalog);
  const Formula f = parse_formula(o.formula, t.sig);
  const Formula wit = build_witness(t, f);
  std::cout << "theory:  " << t.name << "\n";
  std::cout << "formula: " << to_string(f, t.sig) << "\n";
  std::cout << "witness: " << to_string(wit, t.sig) << "\n";
  int code = kExitPositive;
  Report kv{{"command", "witness"},
            {"theory", t.name},
            {"formula", to_string(f, t.sig)},
            {"witness", to_string(wit, t.sig)}};
  if (o.validate || o.strong) {
    const auto rep =
        validate_witness(t, wit, f, pick_bound(o, t.sig), o.strong);
    std::cout << "validation: " << to_string(rep.verdict) << " ("
              << mode_word(!rep.bounded) << ")\n";
    std::cout << "detail: " << rep.detail << "\n";
    code = verdict_exit(rep.verdict);
    kv.emplace_back("validation", to_string(rep.verdict));
    kv.emplace_back("mode", mode_word(!rep.bounded));
    kv.emplace_back("detail", rep.detail);
  }
  if (o.json_like) emit_json_like(kv, code);
  return code;
}

int cmd_check(const Opts& o) {
  const TheoryDef t = resolve_theory(o.theory, o.catalog);
  const std::vector<int> S = parse_sort_subset(t.sig, o.sorts);
  std::string prop = o.property;
  std::transform(prop.begin(), prop.end(), prop.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  const auto res = check_property(t, prop, S, pick_bound(o, t.sig));
  std::cout << "theory: " << t.name << "\n";
  std::cout << "sorts:  " << sort_names(t.sig, S) << "\n";
  std::cout << "bound:  " << pick_bound(o, t.sig) << "\n";
  std::cout << prop << ": " << to_string(res.verdict) << " ("
            << mode_word(res.exact) << ")\n";
  std::cout << "detail: " << res.detail << "\n";
  const int code = verdict_exit(res.verdict);
  if (o.json_like) {
    emit_json_like({{"command", "check"},
                    {"theory", t.name},
                    {"property", prop},
                    {"sorts", sort_names(t.sig, S)},
                    {"bound", std::to_string(pick_bound(o, t.sig))},
                    {"verdict", to_string(res.verdict)},
                    {"mode", mode_word(res.exact)},
                    {"detail", res.detail}},
                   code);
  }
  return code;
}

int cmd_profile(const Opts& o) {
  const TheoryDef t = resolve_theory(o.theory, o.catalog);
  const std::uint64_t bound = pick_bound(o, t.sig);
  const TheoryProfile profile = property_profile(t, bound);
  std::cout << "theory: " << t.name << "\n";
  std::cout << "bound:  " << bound << "\n";
  Report kv{{"command", "profile"},
            {"theory", t.name},
            {"bound", std::to_string(bound)}};
  for (const std::string& name : property_names()) {
    const PropertyResult& res = profile.rows.at(name);
    std::cout << name << ": " << to_string(res.verdict) << " ("
              << mode_word(res.exact) << ")\n";
    std::cout << "    " << res.detail << "\n";
    kv.emplace_back(name, to_string(res.verdict) + " (" + mode_word(res.exact) + ")");
  }
  if (profile.violations.empty()) {
    std::cout << "violations: none\n";
  } else {
    for (const std::string& v : profile.violations) {
      std::cout << "violation: " << v << "\n";
    }
  }
  kv.emplace_back("violations", std::to_string(profile.violations.size()));
  const int code = profile.violations.empty() ? kExitPositive : kExitNegative;
  if (o.json_like) emit_json_like(kv, code);
  return code;
}

int cmd_operator(const Opts& o) {
  const TheoryDef base = resolve_theory(o.theory, o.catalog);
  const TheoryDef derived = apply_operator(parse_operator_kind(o.kind), base);
  std::cout << theory_to_json(derived) << "\n";
  return kExitPositive;
}

char verdict_sign(Verdict v) {
  switch (v) {
    case Verdict::Proved:
      return '+';
    case Verdict::Refuted:
      return '-';
    case Verdict::Unknown:
      return '?';
  }
  return '?';
}

int cmd_verify_catalog(const Opts& o) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(o.catalog)) {
    throw CatalogError("catalog directory '" + o.catalog + "' not found");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.catalog)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  int mismatches = 0;
  int violations = 0;
  Report kv{{"command", "verify-catalog"}, {"catalog", o.catalog}};
  for (const fs::path& path : files) {
    const TheoryDef t = load_theory(path.string());
    const std::uint64_t bound = o.has_bound ? o.bound : default_bound(t.sig);
    const TheoryProfile profile = property_profile(t, bound);
    std::string row = t.name + ":";
    std::vector<std::string> row_issues;
    for (const std::string& name : property_names()) {
      const char got = verdict_sign(profile.rows.at(name).verdict);
      row += " " + name + std::string(1, got);
      const auto want = t.expected_profile.find(name);
      if (want != t.expected_profile.end() && want->second != got) {
        ++mismatches;
        row_issues.push_back("expected " + name + std::string(1, want->second) +
                             " got " + name + std::string(1, got));
      }
    }
    std::cout << row << (row_issues.empty() ? "  ok" : "  MISMATCH") << "\n";
    for (const std::string& issue : row_issues) {
      std::cout << "    " << issue << "\n";
    }
    for (const std::string& v : profile.violations) {
      ++violations;
      std::cout << "    violation: " << v << "\n";
    }
    kv.emplace_back(t.name, row_issues.empty() && profile.violations.empty()
                                ? "ok"
                                : "fail");
  }
  std::cout << "catalog: " << files.size() << " theories, " << mismatches
            << " mismatches, " << violations << " violations\n";
  const int code =
      mismatches == 0 && violations == 0 ? kExitPositive : kExitNegative;
  kv.emplace_back("theories", std::to_string(files.size()));
  kv.emplace_back("mismatches", std::to_string(mismatches));
  kv.emplace_back("violations", std::to_string(violations));
  if (o.json_like) emit_json_like(kv, code);
  return code;
}

void add_common(CLI::App* sub, Opts& o, bool with_formula) {
  sub->add_option("--theory", o.theory,
                  "theory reference: catalog name, file path, family(params), "
                  "or operator expression");
  sub->add_option("--catalog", o.catalog, "catalog directory");
  sub->add_flag("--json-like", o.json_like, "append a machine-readable block");
  if (with_formula) {
    sub->add_option("formula,--formula", o.formula, "formula");
  }
}

}  // namespace

int run_command(int argc, const char* const* argv) {
  Opts o;
  CLI::App app{"workbench for model-cardinality properties of equality theories"};
  app.require_subcommand(1);

  CLI::App* parse = app.add_subcommand("parse", "parse and echo a formula");
  add_common(parse, o, true);
  parse->add_option("--sorts", o.sorts, "sort names for the default signature");

  CLI::App* sat = app.add_subcommand("sat", "decide satisfiability");
  add_common(sat, o, true);

  CLI::App* mm = app.add_subcommand("minmod", "minimal satisfying cardinalities");
  add_common(mm, o, true);
  mm->add_option("--method", o.method, "generic | transfer | oracle")
      ->check(CLI::IsMember({"generic", "transfer", "oracle"}));
  mm->add_option("--sorts", o.sorts, "restrict to these sorts (names, comma-separated)");
  CLI::Option* mm_bound = mm->add_option("--bound", o.bound, "oracle bound");

  CLI::App* wit = app.add_subcommand("witness", "build a witness formula");
  add_common(wit, o, true);
  wit->add_flag("--validate", o.validate, "validate the witness");
  wit->add_flag("--strong", o.strong, "strong-mode validation (implies --validate)");
  CLI::Option* wit_bound = wit->add_option("--bound", o.bound, "validation bound");

  CLI::App* chk = app.add_subcommand("check", "check one property");
  add_common(chk, o, false);
  chk->add_option("--property", o.property, "SI SM FW SW CV FM SF CF")->required();
  chk->add_option("--sorts", o.sorts, "requested sorts (names, comma-separated)");
  CLI::Option* chk_bound = chk->add_option("--bound", o.bound, "scan bound");

  CLI::App* prof = app.add_subcommand("profile", "check all eight properties");
  add_common(prof, o, false);
  CLI::Option* prof_bound = prof->add_option("--bound", o.bound, "scan bound");

  CLI::App* oper = app.add_subcommand("operator", "apply a theory operator");
  add_common(oper, o, false);
  oper->add_option("--kind", o.kind, "add_sort | add_fn_id | add_fn_or")->required();

  CLI::App* vc = app.add_subcommand("verify-catalog",
                                    "recompute and compare catalog profiles");
  add_common(vc, o, false);
  CLI::Option* vc_bound = vc->add_option("--bound", o.bound, "scan bound for all theories");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  o.has_bound = (mm_bound->count() || wit_bound->count() || chk_bound->count() ||
                 prof_bound->count() || vc_bound->count()) > 0;

  try {
    if (parse->parsed()) return cmd_parse(o);
    if (sat->parsed()) return cmd_sat(o);
    if (mm->parsed()) return cmd_minmod(o);
    if (wit->parsed()) return cmd_witness(o);
    if (chk->parsed()) return cmd_check(o);
    if (prof->parsed()) return cmd_profile(o);
    if (oper->parsed()) return cmd_operator(o);
    if (vc->parsed()) return cmd_verify_catalog(o);
  } catch (const ParseError& e) {
    std::cout << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CatalogError& e) {
    std::cout << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const WitnessUnavailable& e) {
    std::cout << "no witness: " << e.what() << "\n";
    return kExitNegative;
  } catch (const OracleExhausted& e) {
    std::cout << "sequence prefix exhausted: " << e.what() << "\n";
    return kExitExhausted;
  } catch (const BudgetExceeded& e) {
    std::cout << "work budget exceeded: " << e.what() << "\n";
    return kExitExhausted;
  }
  return kExitInput;
}

int run_command(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("tcw");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data());
}

}  // namespace tcw
