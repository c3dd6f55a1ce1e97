// tcw — theory-combination workbench

#include "tcw/tags.hpp"

#include <algorithm>

#include "tcw/errors.hpp"

namespace tcw {

std::string to_string(const ShapeTag& tag) {
  switch (tag.kind) {
    case TagKind::None: return "none";
    case TagKind::Identity: return "identity";
    case TagKind::NoFixpoint: return "nofixpoint";
    case TagKind::CycleEq: return "cycle_eq_" + std::to_string(tag.k);
    case TagKind::CycleOr: return "cycle_or_" + std::to_string(tag.k);
    case TagKind::NoFixpointCycleEq:
      return "nofixpoint_cycle_eq_" + std::to_string(tag.k);
    case TagKind::NoFixpointCycleOr:
      return "nofixpoint_cycle_or_" + std::to_string(tag.k);
  }
  return "none";
}

ShapeTag parse_tag(const std::string& name) {
  if (name == "none") return ShapeTag::none();
  if (name == "identity") return ShapeTag::identity();
  if (name == "nofixpoint") return ShapeTag::no_fixpoint();
  auto with_k = [&](const std::string& stem) -> int {
    // name = stem + "_" + k
    if (name.size() == stem.size() + 2 && name.compare(0, stem.size(), stem) == 0 &&
        name[stem.size()] == '_' &&
        (name.back() == '1' || name.back() == '2')) {
      return name.back() - '0';
    }
    return 0;
  };
  if (int k = with_k("cycle_eq"); k != 0) return ShapeTag::cycle_eq(k);
  if (int k = with_k("cycle_or"); k != 0) return ShapeTag::cycle_or(k);
  if (int k = with_k("nofixpoint_cycle_eq"); k != 0) return ShapeTag::no_fixpoint_cycle_eq(k);
  if (int k = with_k("nofixpoint_cycle_or"); k != 0) return ShapeTag::no_fixpoint_cycle_or(k);
  throw CatalogError("unknown shape tag '" + name + "'");
}

int tag_reach(const ShapeTag& tag) {
  switch (tag.kind) {
    case TagKind::None: return 0;
    case TagKind::Identity: return 1;
    case TagKind::NoFixpoint: return 1;
    case TagKind::CycleEq: return tag.k;
    case TagKind::CycleOr: return 2 * tag.k;
    case TagKind::NoFixpointCycleEq: return std::max(1, tag.k);
    case TagKind::NoFixpointCycleOr: return std::max(1, 2 * tag.k);
  }
  return 0;
}

bool tag_needs_nofixpoint(const ShapeTag& tag) {
  return tag.kind == TagKind::NoFixpoint || tag.kind == TagKind::NoFixpointCycleEq ||
         tag.kind == TagKind::NoFixpointCycleOr;
}

bool tag_feasible_at_inf(const ShapeTag& tag) {
  return !(tag.kind == TagKind::NoFixpointCycleEq && tag.k == 1);
}

namespace {

// NoFixpoint&CycleEq(2) core: domain of n with fp.paired blocks already in
// two-cycles; everything else must pair up into fresh two-cycles.
bool involution_feasible(const ChainFootprint& fp, std::uint64_t n) {
  if (fp.eq_irregular) return false;
  if (n < 2 || n < fp.blocks) return false;
  return (n - fp.paired) % 2 == 0;
}

}  // namespace

bool feasible_extension(const ShapeTag& tag, const ChainFootprint& fp,
                        const ExtNat& total_card) {
  if (fp.trivial_all_merged && tag_needs_nofixpoint(tag)) {
    // Stands for the one-element identity model a trivial-model piece admits.
    return total_card == ExtNat(1);
  }
  if (total_card.is_inf()) {
    if (!tag_feasible_at_inf(tag)) return false;
    if (tag.kind == TagKind::Identity) return !fp.id_irregular;
    if (tag.kind == TagKind::CycleEq) {
      return tag.k == 1 ? !fp.id_irregular : !fp.eq_irregular;
    }
    return true;
  }
  const std::uint64_t n = total_card.finite();
  if (n < fp.blocks) return false;
  switch (tag.kind) {
    case TagKind::None:
      return true;
    case TagKind::Identity:
      return !fp.id_irregular;
    case TagKind::CycleEq:
      if (tag.k == 1) return !fp.id_irregular;
      return !fp.eq_irregular;  // k = 2: fixed points allowed, so no parity
    case TagKind::CycleOr:
      return true;  // leftovers become fixed points
    case TagKind::NoFixpoint:
      return n >= 2;
    case TagKind::NoFixpointCycleEq:
      if (tag.k == 1) return false;  // s(x) != x and s(x) = x together
      return involution_feasible(fp, n);
    case TagKind::NoFixpointCycleOr:
      if (tag.k == 1) return involution_feasible(fp, n);  // forced s^2 = id
      return n >= 2;
  }
  return false;
}

}  // namespace tcw
