// tcw — theory-combination workbench
// Shape tags: the constraints a theory piece places on the unary function
// (identity, fixpoint-freedom, bounded cycles), plus the predicate deciding
// whether a partial chain assignment extends to a total function of a given
// domain size.

#pragma once

#include <cstdint>
#include <string>

#include "tcw/extnat.hpp"

namespace tcw {

enum class TagKind {
  None,               // no constraint on the function
  Identity,           // s(x) = x everywhere
  NoFixpoint,         // s(x) != x everywhere
  CycleEq,            // s^k(x) = x everywhere
  CycleOr,            // s^2k(x) = s^k(x) or s^2k(x) = x everywhere
  NoFixpointCycleEq,  // NoFixpoint and CycleEq(k)
  NoFixpointCycleOr,  // NoFixpoint and CycleOr(k)
};

struct ShapeTag {
  TagKind kind = TagKind::None;
  int k = 0;  // cycle parameter; meaningful for the four cycle kinds, in {1,2}

  bool requires_origin() const { return kind != TagKind::None; }

  static ShapeTag none() { return {TagKind::None, 0}; }
  static ShapeTag identity() { return {TagKind::Identity, 0}; }
  static ShapeTag no_fixpoint() { return {TagKind::NoFixpoint, 0}; }
  static ShapeTag cycle_eq(int k) { return {TagKind::CycleEq, k}; }
  static ShapeTag cycle_or(int k) { return {TagKind::CycleOr, k}; }
  static ShapeTag no_fixpoint_cycle_eq(int k) { return {TagKind::NoFixpointCycleEq, k}; }
  static ShapeTag no_fixpoint_cycle_or(int k) { return {TagKind::NoFixpointCycleOr, k}; }

  friend bool operator==(const ShapeTag&, const ShapeTag&) = default;
};

// Canonical names: none, identity, nofixpoint, cycle_eq_k, cycle_or_k,
// nofixpoint_cycle_eq_k, nofixpoint_cycle_or_k (k in {1,2}).
std::string to_string(const ShapeTag& tag);
ShapeTag parse_tag(const std::string& name);

// Largest function-exponent appearing in the tag's defining axiom.  Chains
// flattened with this much headroom see every tag condition in range.
int tag_reach(const ShapeTag& tag);

bool tag_needs_nofixpoint(const ShapeTag& tag);

// Whether a countably infinite domain admits a function meeting the tag.
// True for every tag except NoFixpoint&CycleEq(1), which is contradictory.
bool tag_feasible_at_inf(const ShapeTag& tag);

// Summary of an admitted partition's chain structure, produced alongside the
// partition by the satisfying-partition enumeration.
struct ChainFootprint {
  std::uint64_t blocks = 0;        // chain-sort blocks (each one model element)
  std::uint64_t paired = 0;        // blocks locked into two-cycles (or forced pairs)
  bool trivial_all_merged = false; // the one-block chain partition admitted via
                                   // the piece's trivial-model flag
  bool eq_irregular = false;       // successor structure no s^2-involution extends
  bool id_irregular = false;       // successor structure no identity map extends
};

// Whether the partial successor function recorded in the footprint extends to
// a total function on a domain of total_card elements meeting the tag:
//   None / Identity / CycleEq(k) / CycleOr(k): always (leftovers become fixed
//     points or fresh cycles);
//   NoFixpoint: total_card >= 2;
//   NoFixpoint&CycleEq(2): total_card >= 2 and the leftover count
//     (total minus the blocks already locked into two-cycles) is even;
//   NoFixpoint&CycleOr(2): total_card >= 2;
//   NoFixpoint&CycleEq(1): never (contradictory axiom);
//   NoFixpoint&CycleOr(1): collapses to s^2 = id, same rule as
//     NoFixpoint&CycleEq(2).
// A footprint flagged trivial_all_merged under a fixpoint-free tag stands for
// the one-element identity model and is feasible exactly at total_card 1.
// total_card below the block count is never feasible.
bool feasible_extension(const ShapeTag& tag, const ChainFootprint& fp,
                        const ExtNat& total_card);

}  // namespace tcw
