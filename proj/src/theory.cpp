// tcw — theory-combination workbench

#include "tcw/theory.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "tcw/errors.hpp"

namespace tcw {

using nlohmann::json;

std::vector<std::string> TheoryDef::oracle_deps() const {
  std::vector<std::string> names;
  for (const auto& [name, oracle] : oracles) names.push_back(name);
  return names;
}

void validate_theory(const TheoryDef& theory) {
  if (theory.sig.sorts.empty()) {
    throw CatalogError("theory '" + theory.name + "' has no sorts");
  }
  validate_spectrum(theory.spectrum, static_cast<int>(theory.sig.sorts.size()),
                    theory.oracles);
  for (const auto& piece : theory.spectrum.pieces) {
    if (!theory.sig.has_unary_fn && piece.tag.kind != TagKind::None) {
      throw CatalogError("theory '" + theory.name +
                         "' uses a shape tag without the unary function");
    }
    if (!theory.sig.has_unary_fn && piece.trivial_model) {
      throw CatalogError("theory '" + theory.name +
                         "' sets trivial_model without the unary function");
    }
  }
  if (theory.witness_rule.kind == WitnessRule::Kind::Doubling &&
      theory.witness_rule.first < 1) {
    throw CatalogError("doubling witness rule needs a positive first rung");
  }
}

namespace {

json cardset_to_json(const CardSet& cs) {
  json j;
  switch (cs.kind) {
    case CardSetKind::Finite:
      j["kind"] = "finite";
      j["values"] = cs.values;
      break;
    case CardSetKind::From:
      j["kind"] = "from";
      j["min"] = cs.from_min;
      break;
    case CardSetKind::Seq:
      j["kind"] = "seq";
      j["oracle"] = cs.oracle;
      j["prefix_len"] = cs.prefix_len;
      j["tail_unbounded"] = cs.tail_unbounded;
      break;
  }
  j["inf"] = cs.include_inf;
  return j;
}

CardSet cardset_from_json(const json& j, const OracleTable& oracles) {
  const std::string kind = j.at("kind").get<std::string>();
  const bool inf = j.value("inf", false);
  if (kind == "finite") {
    return CardSet::finite(j.at("values").get<std::vector<std::uint64_t>>(), inf);
  }
  if (kind == "from") {
    return CardSet::from(j.at("min").get<std::uint64_t>(), inf);
  }
  if (kind == "seq") {
    const std::string oracle = j.at("oracle").get<std::string>();
    std::size_t prefix_len;
    if (j.contains("prefix_len")) {
      prefix_len = j.at("prefix_len").get<std::size_t>();
    } else {
      auto it = oracles.find(oracle);
      if (it == oracles.end()) {
        throw CatalogError("cardinality set references unknown sequence '" +
                           oracle + "'");
      }
      prefix_len = it->second.computable() ? 1 : it->second.stored_size();
    }
    return CardSet::seq(oracle, prefix_len, j.value("tail_unbounded", false), inf);
  }
  throw CatalogError("unknown cardinality-set kind '" + kind + "'");
}

SequenceOracle oracle_from_json(const std::string& name, const json& j) {
  if (j.value("computable", false)) {
    return SequenceOracle::arithmetic(name, j.value("start", std::uint64_t{1}),
                                      j.at("first").get<std::uint64_t>(),
                                      j.at("stride").get<std::uint64_t>());
  }
  return SequenceOracle::prefix(name, j.value("start", std::uint64_t{0}),
                                j.at("values").get<std::vector<std::uint64_t>>());
}

json oracle_to_json(const SequenceOracle& o) {
  json j;
  if (o.computable()) {
    j["computable"] = true;
    j["start"] = o.start_index();
    j["first"] = o.first_value();
    j["stride"] = o.stride();
  } else {
    j["start"] = o.start_index();
    j["values"] = o.stored_values();
  }
  return j;
}

int require_sort(const Signature& sig, const std::string& name) {
  int idx = sig.sort_index(name);
  if (idx < 0) throw CatalogError("unknown sort '" + name + "' in piece");
  return idx;
}

}  // namespace

TheoryDef theory_from_json(const std::string& text,
                           const std::string& fallback_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CatalogError("malformed theory document: " + std::string(e.what()));
  }
  TheoryDef t;
  t.name = j.value("name", fallback_name);
  auto sorts = j.at("sorts").get<std::vector<std::string>>();
  t.sig = j.value("has_fn", false) ? Signature::with_unary(sorts)
                                   : Signature::empty(sorts);
  if (j.contains("oracles")) {
    for (const auto& [name, oj] : j.at("oracles").items()) {
      t.oracles.emplace(name, oracle_from_json(name, oj));
    }
  }
  for (const auto& pj : j.at("pieces")) {
    Piece piece;
    if (pj.contains("sets")) {
      for (const auto& [sort_name, cj] : pj.at("sets").items()) {
        piece.per_sort.emplace(require_sort(t.sig, sort_name),
                               cardset_from_json(cj, t.oracles));
      }
    }
    if (pj.contains("diagonal")) {
      for (const auto& sn : pj.at("diagonal")) {
        piece.diagonal_sorts.push_back(
            require_sort(t.sig, sn.get<std::string>()));
      }
      std::sort(piece.diagonal_sorts.begin(), piece.diagonal_sorts.end());
      piece.diagonal_set = cardset_from_json(pj.at("diagonal_set"), t.oracles);
    }
    piece.tag = parse_tag(pj.value("tag", std::string("none")));
    piece.trivial_model = pj.value("trivial_model", false);
    t.spectrum.pieces.push_back(std::move(piece));
  }
  if (j.contains("witness_rule")) {
    const auto& wj = j.at("witness_rule");
    const std::string kind = wj.value("kind", std::string("minmod"));
    if (kind == "doubling") {
      t.witness_rule.kind = WitnessRule::Kind::Doubling;
      t.witness_rule.first = wj.at("first").get<std::uint64_t>();
    } else if (kind != "minmod") {
      throw CatalogError("unknown witness rule '" + kind + "'");
    }
  }
  if (j.contains("expected_profile")) {
    for (const auto& [prop, sign] : j.at("expected_profile").items()) {
      const std::string s = sign.get<std::string>();
      if (s.size() != 1 || (s[0] != '+' && s[0] != '-' && s[0] != '?')) {
        throw CatalogError("expected_profile entries must be '+', '-' or '?'");
      }
      t.expected_profile[prop] = s[0];
    }
  }
  t.paper_lemma = j.value("paper_lemma", std::string());
  validate_theory(t);
  return t;
}

std::string theory_to_json(const TheoryDef& theory) {
  json j;
  j["name"] = theory.name;
  j["sorts"] = theory.sig.sorts;
  j["has_fn"] = theory.sig.has_unary_fn;
  if (!theory.oracles.empty()) {
    json oj = json::object();
    for (const auto& [name, o] : theory.oracles) oj[name] = oracle_to_json(o);
    j["oracles"] = oj;
  }
  json pieces = json::array();
  for (const auto& piece : theory.spectrum.pieces) {
    json pj;
    if (!piece.per_sort.empty()) {
      json sets = json::object();
      for (const auto& [sort, cs] : piece.per_sort) {
        sets[theory.sig.sorts.at(static_cast<std::size_t>(sort))] =
            cardset_to_json(cs);
      }
      pj["sets"] = sets;
    }
    if (piece.is_diagonal()) {
      json diag = json::array();
      for (int s : piece.diagonal_sorts) {
        diag.push_back(theory.sig.sorts.at(static_cast<std::size_t>(s)));
      }
      pj["diagonal"] = diag;
      pj["diagonal_set"] = cardset_to_json(*piece.diagonal_set);
    }
    pj["tag"] = to_string(piece.tag);
    pj["trivial_model"] = piece.trivial_model;
    pieces.push_back(pj);
  }
  j["pieces"] = pieces;
  if (theory.witness_rule.kind == WitnessRule::Kind::Doubling) {
    j["witness_rule"] = {{"kind", "doubling"},
                         {"first", theory.witness_rule.first}};
  }
  if (!theory.expected_profile.empty()) {
    json ej = json::object();
    for (const auto& [prop, sign] : theory.expected_profile) {
      ej[prop] = std::string(1, sign);
    }
    j["expected_profile"] = ej;
  }
  if (!theory.paper_lemma.empty()) j["paper_lemma"] = theory.paper_lemma;
  return j.dump(2);
}

TheoryDef load_theory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open theory file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) {
    stem = stem.substr(slash + 1);
  }
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) {
    stem = stem.substr(0, dot);
  }
  return theory_from_json(buf.str(), stem);
}

OperatorKind parse_operator_kind(const std::string& name) {
  if (name == "add_sort") return OperatorKind::AddSort;
  if (name == "add_fn_id") return OperatorKind::AddFnId;
  if (name == "add_fn_or") return OperatorKind::AddFnOr;
  throw CatalogError("unknown operator '" + name + "'");
}

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::AddSort:
      return "add_sort";
    case OperatorKind::AddFnId:
      return "add_fn_id";
    case OperatorKind::AddFnOr:
      return "add_fn_or";
  }
  return "?";
}

TheoryDef apply_operator(OperatorKind kind, const TheoryDef& theory) {
  TheoryDef out = theory;
  out.name = to_string(kind) + "(" + theory.name + ")";
  out.witness_rule = WitnessRule{};
  out.expected_profile.clear();
  out.paper_lemma = "derived by " + to_string(kind);

  switch (kind) {
    case OperatorKind::AddSort: {
      if (theory.sig.sorts.size() != 1) {
        throw CatalogError("add_sort requires a 1-sorted theory, got '" +
                           theory.name + "'");
      }
      // Fresh sort name: the first s<k> not already taken.
      std::string fresh;
      for (int k = 2;; ++k) {
        fresh = "s" + std::to_string(k);
        if (out.sig.sort_index(fresh) < 0) break;
      }
      out.sig.sorts.push_back(fresh);
      const int added = static_cast<int>(out.sig.sorts.size()) - 1;
      for (auto& piece : out.spectrum.pieces) {
        piece.per_sort.emplace(added, CardSet::from(1, /*inf=*/true));
      }
      break;
    }
    case OperatorKind::AddFnId:
    case OperatorKind::AddFnOr: {
      if (theory.sig.has_unary_fn) {
        throw CatalogError("add_fn operators require a function-free theory, got '" +
                           theory.name + "'");
      }
      out.sig.has_unary_fn = true;
      const ShapeTag tag = kind == OperatorKind::AddFnId
                               ? ShapeTag::identity()
                               : ShapeTag::cycle_or(1);
      for (auto& piece : out.spectrum.pieces) piece.tag = tag;
      break;
    }
  }
  validate_theory(out);
  return out;
}

namespace {

TheoryDef make_simple(std::string name, CardSet cs) {
  TheoryDef t;
  t.name = std::move(name);
  t.sig = Signature::empty({"s1"});
  Piece piece;
  piece.per_sort.emplace(0, std::move(cs));
  t.spectrum.pieces.push_back(std::move(piece));
  validate_theory(t);
  return t;
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

TheoryDef catalog_lookup(const std::string& family,
                         const std::vector<std::uint64_t>& params,
                         const std::string& catalog_dir) {
  auto want_arity = [&](std::size_t n) {
    if (params.size() != n) {
      throw CatalogError("'" + family + "' takes " + std::to_string(n) +
                         " parameter(s), got " + std::to_string(params.size()));
    }
  };
  if (family == "T_geq") {
    want_arity(1);
    if (params[0] < 1) throw CatalogError("T_geq parameter must be >= 1");
    return make_simple("T_geq_" + std::to_string(params[0]),
                       CardSet::from(params[0], /*inf=*/true));
  }
  if (family == "T_leq") {
    want_arity(1);
    if (params[0] < 1) throw CatalogError("T_leq parameter must be >= 1");
    std::vector<std::uint64_t> values;
    for (std::uint64_t v = 1; v <= params[0]; ++v) values.push_back(v);
    return make_simple("T_leq_" + std::to_string(params[0]),
                       CardSet::finite(std::move(values)));
  }
  if (family == "T_interval") {
    want_arity(2);
    if (params[0] < 1 || params[1] < params[0]) {
      throw CatalogError("T_interval needs 1 <= lo <= hi");
    }
    std::vector<std::uint64_t> values;
    for (std::uint64_t v = params[0]; v <= params[1]; ++v) values.push_back(v);
    return make_simple(
        "T_interval_" + std::to_string(params[0]) + "_" + std::to_string(params[1]),
        CardSet::finite(std::move(values)));
  }
  // Anything else resolves through the catalog directory.
  std::string file = family;
  for (std::uint64_t p : params) file += "_" + std::to_string(p);
  return load_theory(catalog_dir + "/" + file + ".json");
}

TheoryDef resolve_theory(const std::string& ref, const std::string& catalog_dir) {
  std::string s = ref;
  auto strip = [](std::string& str) {
    while (!str.empty() && std::isspace(static_cast<unsigned char>(str.front()))) {
      str.erase(str.begin());
    }
    while (!str.empty() && std::isspace(static_cast<unsigned char>(str.back()))) {
      str.pop_back();
    }
  };
  strip(s);
  if (s.empty()) throw CatalogError("empty theory reference");

  // Operator expression kind(inner).
  for (const char* op : {"add_sort", "add_fn_id", "add_fn_or"}) {
    const std::string prefix = std::string(op) + "(";
    if (s.size() > prefix.size() + 1 && s.rfind(prefix, 0) == 0 && s.back() == ')') {
      const std::string inner = s.substr(prefix.size(), s.size() - prefix.size() - 1);
      return apply_operator(parse_operator_kind(op), resolve_theory(inner, catalog_dir));
    }
  }

  // Explicit file path.
  const bool ends_json =
      s.size() >= 5 && s.compare(s.size() - 5, 5, ".json") == 0;
  if (s.find('/') != std::string::npos || ends_json) {
    if (ends_json) return load_theory(s);
    std::ifstream probe(s);
    if (probe) return load_theory(s);
    return load_theory(s + ".json");
  }

  // Catalog file by plain name.
  {
    const std::string path = catalog_dir + "/" + s + ".json";
    std::ifstream probe(path);
    if (probe) return load_theory(path);
  }

  // Parametric form name(p1,p2) or name_p1_p2.
  if (auto open = s.find('('); open != std::string::npos && s.back() == ')') {
    const std::string family = s.substr(0, open);
    std::vector<std::uint64_t> params;
    std::string args = s.substr(open + 1, s.size() - open - 2);
    std::istringstream as(args);
    std::string tok;
    while (std::getline(as, tok, ',')) {
      strip(tok);
      if (!all_digits(tok)) {
        throw CatalogError("bad parameter '" + tok + "' in '" + s + "'");
      }
      params.push_back(std::stoull(tok));
    }
    return catalog_lookup(family, params, catalog_dir);
  }
  {
    std::vector<std::uint64_t> params;
    std::string stem = s;
    while (true) {
      auto us = stem.find_last_of('_');
      if (us == std::string::npos) break;
      const std::string tail = stem.substr(us + 1);
      if (!all_digits(tail)) break;
      params.insert(params.begin(), std::stoull(tail));
      stem = stem.substr(0, us);
    }
    if (!params.empty()) return catalog_lookup(stem, params, catalog_dir);
  }
  throw CatalogError("cannot resolve theory reference '" + s + "'");
}

}  // namespace tcw
