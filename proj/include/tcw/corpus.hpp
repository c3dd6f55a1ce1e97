// tcw — theory-combination workbench
// Deterministic formula corpora for the cross-checking commands and the
// property checkers: small cubes, clauses, and two-clause conjunctions over a
// fixed variable pool per sort, plus shallow function terms when the
// signature has s.

#pragma once

#include <cstdint>
#include <vector>

#include "tcw/formula.hpp"

namespace tcw {

// The standard corpus for a signature, in a fixed deterministic order.
// Function-free: over three variables per sort, all cubes of up to four
// literals (two with several sorts), per-sort distinctness, clauses of two or
// three literals, and conjunctions of two binary clauses.  With the function
// symbol: the same shapes over the depth<=1 terms of two variables, plus a
// fixed block of depth-2 probes.
std::vector<Formula> corpus_formulas(const Signature& sig);

// Pairwise disequalities over `count` fresh variables of the sort.
Formula distinct_vars(int sort, std::uint64_t count);

}  // namespace tcw
