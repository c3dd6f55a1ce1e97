// tcw — theory-combination workbench
// Chain flattening: rewrites a formula over the unary-function signature into
// an equality formula over indexed chain variables y_{i,j} standing for
// s^j(z_i), with configurable headroom past each variable's maximum depth.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tcw/formula.hpp"

namespace tcw {

struct FlattenResult {
  Formula flat;  // over the same sorts, no s-terms

  // Chain i lists the fresh sort-0 variables y_{i,0..L_i} for base variable
  // z_i, where L_i = (max depth of z_i in the input) + extra_depth.
  struct Chain {
    std::string base;        // source variable name
    std::vector<Var> vars;   // chain variables in index order
  };
  std::vector<Chain> chains;

  // All variables of flat in enumeration order: chain variables chain-major,
  // then untouched variables of other sorts (sorted).
  std::vector<Var> universe;

  // Fresh variable name -> (chain index, position).
  std::map<std::string, std::pair<int, int>> origin_of;

  bool has_chains() const { return !chains.empty(); }
};

// Replaces every atom s^j(z_i) = s^q(z_p) by y_{i,j} = y_{p,q}; variables of
// sorts other than 0 pass through untouched.  Fresh names are deterministic:
// __y_<base>_<j>.  Over an empty signature the formula is returned unchanged
// with no chains.  extra_depth must cover the shape conditions the caller
// intends to check (cycle length k needs at least k).
FlattenResult flatten_unary(const Formula& phi, const Signature& sig, int extra_depth);

}  // namespace tcw
