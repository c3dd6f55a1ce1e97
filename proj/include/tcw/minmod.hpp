// tcw — theory-combination workbench
// The minimal-model engine: spectrum-based computation of the minimal
// satisfying cardinality tuples of a formula, and the operator-transfer
// routes that compute the same sets through the base theory only.
#pragma once

#include <vector>

#include "tcw/extnat.hpp"
#include "tcw/formula.hpp"
#include "tcw/theory.hpp"

namespace tcw {

// Minimal elements of the set of satisfying cardinality tuples of phi in the
// theory, projected to the sorted sort indices in restrict_sorts.
// Unsatisfiable inputs yield the empty set.  Pipeline: flatten (when the
// signature has s) -> admitted partitions per spectrum piece -> per-partition
// demands -> least feasible covers -> Dickson-minimal union.  Throws
// OracleExhausted when a sequence prefix cannot resolve a cover query.
std::vector<CardTuple> minmod(const TheoryDef& theory,
                              const std::vector<int>& restrict_sorts,
                              const Formula& phi);

// Same set over all sorts of apply_operator(kind, base), computed without
// building the derived spectrum: add_sort enumerates partitions of the
// added-sort variables and substitutes their atoms; add_fn_id erases s;
// add_fn_or reduces each admitted chain partition to a base query conjoined
// with its arrangement.
std::vector<CardTuple> minmod_via_transfer(OperatorKind kind,
                                           const TheoryDef& base,
                                           const Formula& phi);

// True when phi has at least one model of the theory (minmod nonempty).
bool satisfiable(const TheoryDef& theory, const Formula& phi);

// Least member of the sort-0 size set that is >= lower and admits a total
// tag-satisfying extension of the partial successor structure in fp; nullopt
// when none exists.  Scans a few successive members (the shipped sets are
// parity-regular), then falls back to the infinite member if admitted.
std::optional<ExtNat> least_feasible_size(const CardSet& cs, const ShapeTag& tag,
                                          const ChainFootprint& fp, ExtNat lower,
                                          const OracleTable& oracles);

}  // namespace tcw
