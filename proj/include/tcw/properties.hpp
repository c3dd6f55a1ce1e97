// tcw — theory-combination workbench
// Checkers for the eight combination properties over spectrum theories, and
// per-theory profiles with the structural cross-checks between properties.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcw/theory.hpp"
#include "tcw/verdict.hpp"

namespace tcw {

struct PropertyResult {
  Verdict verdict = Verdict::Unknown;
  bool exact = false;  // conclusion independent of the bound and stored prefixes
  std::string detail;
};

// The eight property keys in report order:
// SI (every satisfiable formula has an all-infinite model), SM (models at
// every cardinality above an existing one), FW (finite witnesses exist),
// SW (finite witnesses robust under variable arrangements), CV (entailed
// equality disjunctions have an entailed disjunct), FM (satisfiable formulas
// have finite models), SF (no minimal model is infinite), CF (minimal model
// sizes are computable by closed rules).
const std::vector<std::string>& property_names();

// Decides one property with respect to the sorts in S (sorted indices) at the
// given search bound.  Refuted verdicts carry a replayable counterexample in
// the detail.  Bounded conclusions leave exact=false.
PropertyResult check_property(const TheoryDef& theory, const std::string& prop,
                              const std::vector<int>& S, std::uint64_t bound);

struct TheoryProfile {
  std::map<std::string, PropertyResult> rows;  // one per property name
  std::vector<std::string> violations;         // cross-implication failures
};

// All eight checkers over all sorts, plus the implication cross-checks; any
// violation reported here indicates an engine bug, not a theory fact.
TheoryProfile property_profile(const TheoryDef& theory, std::uint64_t bound);

// The implication cross-checks on a finished row set: SM proved forces CF
// provable on empty signatures; FM and CF cannot both fail one-sorted
// function-free; CF with FM forces FW; CV without SI, FM, and CF cannot
// happen two-sorted function-free.  Unknown entries never trigger a report.
std::vector<std::string> impossibility_violations(
    const Signature& sig, const std::map<std::string, PropertyResult>& rows);

}  // namespace tcw
