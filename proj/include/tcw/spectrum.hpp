// tcw — theory-combination workbench
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcw/cardset.hpp"
#include "tcw/extnat.hpp"
#include "tcw/tags.hpp"

namespace tcw {

// One piece of a model-cardinality spectrum.  A piece either constrains each
// sort independently (product form) or ties a group of sorts to a single
// shared set (diagonal form) with the remaining sorts in product form.  The
// shape tag constrains the unary function on sort 0, when present; the
// trivial-model flag records that the piece also admits the one-element model
// in which every chain collapses.
struct Piece {
  std::map<int, CardSet> per_sort;        // sort index -> admissible sizes
  std::vector<int> diagonal_sorts;        // sorted, tied together; may be empty
  std::optional<CardSet> diagonal_set;    // present iff diagonal_sorts nonempty
  ShapeTag tag = ShapeTag::none();
  bool trivial_model = false;

  bool is_diagonal() const { return !diagonal_sorts.empty(); }
  bool sort_is_tied(int sort) const;
  // The size set governing `sort` (the shared diagonal set for tied sorts).
  const CardSet& set_for(int sort) const;
};

struct Spectrum {
  std::vector<Piece> pieces;
};

// Checks structural sanity against a sort count: at least one piece, and each
// piece covers every sort exactly once.  Throws CatalogError on violation.
void validate_spectrum(const Spectrum& spec, int num_sorts,
                       const OracleTable& oracles);

// Least point of `piece` dominating `demand` (a full tuple over all sorts),
// or nullopt when some coordinate has no admissible size >= its demand.
// Product coordinates are answered independently; tied coordinates by a
// single query at the largest tied demand.  Propagates OracleExhausted.
std::optional<CardTuple> piece_cover(const Piece& piece,
                                     const CardTuple& demand,
                                     const OracleTable& oracles);

// Dickson-minimal set of spectrum points dominating `demand`, projected to
// the sorts in `restrict` (sorted sort indices).  Propagates OracleExhausted.
std::vector<CardTuple> spectrum_cover(const Spectrum& spec,
                                      const CardTuple& demand,
                                      const std::vector<int>& restrict_sorts,
                                      const OracleTable& oracles);

// Projects a full tuple to the given sorted sort indices.
CardTuple project_tuple(const CardTuple& t, const std::vector<int>& sorts);

// Whether some piece admits exactly this full tuple of sizes: diagonal groups
// carry one shared value, every coordinate is a member of its set (Inf via
// include_inf), and on tagged pieces a total tag-compatible function exists at
// the sort-0 size (the trivial-model disjunct covers size 1).  Throws
// OracleExhausted when a prefix cannot decide a membership.
bool spectrum_exact_at(const Spectrum& spec, const CardTuple& t,
                       const OracleTable& oracles);

// All points of the spectrum with every finite coordinate <= bound
// (infinite coordinates allowed), as full-signature tuples.  Exhaustive for
// spectra whose sets are decidable up to `bound`; used for small-scale
// cross-checks.  Throws OracleExhausted if a set cannot decide membership.
std::vector<CardTuple> enumerate_spectrum_points(const Spectrum& spec,
                                                 int num_sorts,
                                                 std::uint64_t bound,
                                                 const OracleTable& oracles);

}  // namespace tcw
