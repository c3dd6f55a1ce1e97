// tcw — theory-combination workbench
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcw/formula.hpp"
#include "tcw/sequences.hpp"
#include "tcw/spectrum.hpp"

namespace tcw {

// How witness formulas are grown for a theory: `Minmod` derives the target
// cardinalities from minimal models of the input; `Doubling` walks the fixed
// ladder first, 2*first, 4*first, ... and picks the least rung covering the
// variable count.
struct WitnessRule {
  enum class Kind { Minmod, Doubling };
  Kind kind = Kind::Minmod;
  std::uint64_t first = 0;  // Doubling only: the least rung
};

// A theory description: signature, model-cardinality spectrum, the sequence
// oracles its size sets draw from, and optional bookkeeping used by the
// witness builder and the catalog self-checks.
struct TheoryDef {
  std::string name;
  Signature sig;
  Spectrum spectrum;
  OracleTable oracles;
  WitnessRule witness_rule;
  // Free-text provenance note carried verbatim from the catalog file.
  std::string paper_lemma;
  // Property name -> expected verdict sign ('+', '-', '?'), when declared.
  std::map<std::string, char> expected_profile;

  std::vector<std::string> oracle_deps() const;
};

// Structural sanity: spectrum covers exactly the signature's sorts, shape
// tags appear only when the signature has the unary function, referenced
// oracles exist.  Throws CatalogError on violation.
void validate_theory(const TheoryDef& theory);

// JSON (de)serialization.  The document shape:
//   { "name": ..., "sorts": ["s1",...], "has_fn": bool,
//     "oracles": { "g": {"start":1,"values":[...]}
//                 | {"computable":true,"start":1,"first":2,"stride":2} },
//     "pieces": [ { "sets": { "s1": {"kind":"finite|from|seq", ...} },
//                   "diagonal": ["s1","s2"], "diagonal_set": {...},
//                   "tag": "none|identity|...", "trivial_model": bool } ],
//     "witness_rule": {"kind":"minmod|doubling","first":n},
//     "expected_profile": {"SI":"+",...}, "paper_lemma": "..." }
TheoryDef theory_from_json(const std::string& text,
                           const std::string& fallback_name);
std::string theory_to_json(const TheoryDef& theory);
TheoryDef load_theory(const std::string& path);

enum class OperatorKind { AddSort, AddFnId, AddFnOr };

OperatorKind parse_operator_kind(const std::string& name);
std::string to_string(OperatorKind kind);

// The three theory operators.  add_sort appends a fresh unconstrained sort
// (any size from 1 up, or infinite) to a 1-sorted theory; add_fn_id adds the
// unary function forced to be the identity; add_fn_or adds it forced to
// satisfy s(s(x))=s(x) or s(s(x))=x pointwise.  The function-adding forms
// require a function-free input.  Throws CatalogError on precondition
// violations.
TheoryDef apply_operator(OperatorKind kind, const TheoryDef& theory);

// Built-in parametric families constructed in code: T_geq(n), T_leq(n),
// T_interval(m,n).  Fixed theories resolve through the catalog directory.
// Throws CatalogError for unknown names or out-of-range parameters.
TheoryDef catalog_lookup(const std::string& family,
                         const std::vector<std::uint64_t>& params,
                         const std::string& catalog_dir = "catalog");

// Resolves a theory reference from the command line or a test: an operator
// expression add_sort(...)/add_fn_id(...)/add_fn_or(...), a file path, a
// catalog file name, or a parametric family instance like T_geq_3 or
// T_geq(3).
TheoryDef resolve_theory(const std::string& ref,
                         const std::string& catalog_dir = "catalog");

}  // namespace tcw
