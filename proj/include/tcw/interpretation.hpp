// tcw — theory-combination workbench
// Finite interpretations: per-sort domains as initial segments of the
// naturals, a valuation, and (when the signature has s) a total function
// table on sort 0.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcw/formula.hpp"

namespace tcw {

struct Interpretation {
  Signature sig;
  std::vector<std::uint64_t> domain_sizes;        // per sort, each >= 1
  std::map<std::string, std::uint64_t> valuation; // variable name -> element
  std::map<std::string, int> var_sorts;           // variable name -> sort
  std::vector<std::uint64_t> fn_table;            // s on sort 0; size = domain_sizes[0]

  // Value of s^depth(var); throws std::out_of_range on unvalued variables and
  // ParseError when s is used without a table.
  std::uint64_t eval_term(const Term& t) const;

  bool satisfies(const Formula& f) const;
};

std::string to_string(const Interpretation& a);

}  // namespace tcw
