// tcw — theory-combination workbench
// Witness construction and validation.  A witness extends a formula with
// fresh self-equalities so that, whenever the formula is satisfiable, it has
// a model whose domain is fully named by the witness's variables; validation
// checks that contract against the brute-force model enumerator.

#pragma once

#include <cstdint>
#include <string>

#include "tcw/formula.hpp"
#include "tcw/theory.hpp"
#include "tcw/verdict.hpp"

namespace tcw {

struct WitnessReport {
  Verdict verdict = Verdict::Unknown;
  bool bounded = true;  // conclusion depends on the search bound
  std::string detail;
};

// Builds the theory's witness for phi per its declared rule.
//   minmod rule: appends one fresh self-equality per element of the least
//     all-finite minimal cardinality tuple of phi; WitnessUnavailable when
//     every minimal tuple has an infinite coordinate.
//   doubling rule: appends first*2^i fresh sort-0 self-equalities, the least
//     such rung >= the variable count (single-sorted theories only).
// Fresh variables are named __w_<sort>_<i>.  Unsatisfiable inputs come back
// unchanged.
Formula build_witness(const TheoryDef& theory, const Formula& phi);

// Checks at the given domain bound that wit is a correct witness for phi:
//   (a) wit and phi have the same models up to the fresh variables
//       (induced variable arrangements projected to phi's variables agree),
//   (b) when satisfiable, wit has a model whose every domain element is the
//       value of some variable.
// strong additionally sweeps forced class counts up to the bound: every
// per-sort class count that some arrangement of the variables makes
// satisfiable must be realized by a model of exactly that many elements.
// The strong sweep is implemented for function-free signatures; elsewhere it
// reports Unknown.
WitnessReport validate_witness(const TheoryDef& theory, const Formula& wit,
                               const Formula& phi, std::uint64_t bound,
                               bool strong);

}  // namespace tcw
