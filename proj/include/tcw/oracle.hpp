// tcw — theory-combination workbench
// Brute-force reference semantics: exhaustive enumeration of bounded models
// up to isomorphism, minimal-model computation by literal enumeration, and
// bounded entailment.  Everything here is independent of the spectrum-based
// engine so the two can be cross-checked.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcw/extnat.hpp"
#include "tcw/interpretation.hpp"
#include "tcw/theory.hpp"
#include "tcw/verdict.hpp"

namespace tcw {

// Work cap for exhaustive searches.  Each candidate (sizes, valuation,
// function table) combination costs one step; exceeding the limit raises
// BudgetExceeded.  The TCW_BUDGET environment variable overrides the default.
struct OracleBudget {
  std::uint64_t limit = 50'000'000;
  std::uint64_t used = 0;

  static OracleBudget from_env();
  void charge(std::uint64_t steps = 1);
};

// Whether a concrete function table satisfies a shape tag pointwise.
bool tag_holds(const std::vector<std::uint64_t>& table, const ShapeTag& tag);

// Every model of the theory satisfying phi with all domains <= bound, up to
// isomorphism.  Valuations are canonical (named elements form an initial
// segment in first-use order); function tables are deduplicated by conjugation
// over the unnamed elements.  budget = nullptr uses a fresh default budget.
std::vector<Interpretation> enumerate_models(const TheoryDef& theory,
                                             const Formula& phi,
                                             std::uint64_t bound,
                                             OracleBudget* budget = nullptr);

struct OracleMinmodResult {
  std::vector<CardTuple> tuples;  // over restrict_sorts, Dickson-minimal
  bool complete = false;          // no minimal tuple can hide beyond the bound
};

// Minimal satisfying cardinality tuples by enumeration: finite tuples up to
// the bound, plus infinite coordinates via bounded proxies for pieces whose
// size sets include Inf (a bounded tag-model extends to an infinite one by
// appending unnamed cycles).  The completeness flag reports, per piece,
// whether a least realization was found, the finite sizes were exhausted, or
// the piece is Inf-only.
OracleMinmodResult oracle_minmod(const TheoryDef& theory, const Formula& phi,
                                 const std::vector<int>& restrict_sorts,
                                 std::uint64_t bound,
                                 OracleBudget* budget = nullptr);

struct EntailResult {
  Verdict verdict = Verdict::Unknown;
  std::string detail;  // counterexample description, or why unknown
};

// Does the cube T-entail the disjunction of the given equalities?  Refuted
// comes with a countermodel.  Proved requires certification that no larger
// countermodel can exist: for function-free signatures the partition-level
// argument is exact (a countermodel never needs more named classes than
// variables, and realizability is a spectrum query); with the unary function
// the verdict is Proved only when the finite spectrum is exhausted by the
// bound, otherwise Unknown.
EntailResult oracle_entails(const TheoryDef& theory, const Formula& cube,
                            const std::vector<Formula>& disjuncts,
                            std::uint64_t bound,
                            OracleBudget* budget = nullptr);

}  // namespace tcw
