// tcw — theory-combination workbench
// Sort-respecting set partitions: enumeration, arrangements, evaluation of
// flat formulas over partitions, and the constrained enumeration of the
// partitions a formula plus a shape tag admits.

#pragma once

#include <cstdint>
#include <vector>

#include "tcw/flatten.hpp"
#include "tcw/formula.hpp"
#include "tcw/interpretation.hpp"
#include "tcw/tags.hpp"

namespace tcw {

// A partition of a fixed, ordered variable universe into sort-homogeneous
// blocks.  block_of is in restricted-growth form: block ids appear in order
// of first occurrence, so equal partitions have equal encodings.
struct Partition {
  std::vector<Var> universe;
  std::vector<int> block_of;

  int num_blocks() const;
  bool same_block(std::size_t i, std::size_t j) const {
    return block_of[i] == block_of[j];
  }
  std::vector<std::vector<std::size_t>> blocks() const;

  // Number of blocks whose variables have the given sort; sorts with no
  // variables contribute 0.
  std::vector<std::uint64_t> per_sort_block_counts(std::size_t num_sorts) const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

std::string to_string(const Partition& e);

// Every sort-respecting partition of the universe, in restricted-growth-string
// lexicographic order.  The empty universe yields the single empty partition.
std::vector<Partition> enumerate_partitions(const std::vector<Var>& universe);

// The arrangement: equalities inside blocks, disequalities across same-sort
// blocks, over all variable pairs in universe order.
Formula arrangement_formula(const Partition& e);

// Evaluates a flat (depth-0) formula with equality-as-block-membership.
bool partition_satisfies(const Formula& flat, const Partition& e);

// Groups vars by value under the interpretation (sort-respecting by
// construction); the result satisfies its own arrangement in a.
Partition induced_partition(const Interpretation& a, const std::vector<Var>& vars);

// Restriction of e to a subset of its universe (in the subset's order).
Partition project_partition(const Partition& e, const std::vector<Var>& subset);

struct AdmittedPartition {
  Partition partition;
  ChainFootprint footprint;
};

// All partitions E of flat's variables such that
//   (a) flat evaluates true with equality-as-block-membership,
//   (b) when origin is present, the block-level successor relation along the
//       chains is a partial function,
//   (c) the tag's shape condition holds on every chain position in range,
// plus, when admit_trivial is set and the tag forbids fixpoints, the
// partitions merging all chain variables into one block (standing for the
// one-element identity model a trivial-model piece admits).
// origin must be present whenever tag is not None.
std::vector<AdmittedPartition> satisfying_partitions(const Formula& flat,
                                                     const ShapeTag& tag,
                                                     const FlattenResult* origin,
                                                     bool admit_trivial = false);

}  // namespace tcw
