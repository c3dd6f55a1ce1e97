// tcw — theory-combination workbench
// Naturals extended with a single infinite value, cardinality tuples, and
// minimal-element extraction under the componentwise order.

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tcw {

// A cardinality: a positive natural number or Inf (countable infinity).
// The whole workbench only ever distinguishes "finite n" from "infinite", so
// one sentinel value suffices.  Ordering is numeric with Inf on top.
class ExtNat {
 public:
  constexpr ExtNat() : d_value(1) {}
  constexpr ExtNat(std::uint64_t n) : d_value(n) {}  // NOLINT: implicit by design

  static constexpr ExtNat inf() { return ExtNat(kInfValue); }

  constexpr bool is_inf() const { return d_value == kInfValue; }
  constexpr bool is_finite() const { return d_value != kInfValue; }

  // Finite payload; only meaningful when is_finite().
  constexpr std::uint64_t finite() const { return d_value; }

  friend constexpr auto operator<=>(const ExtNat&, const ExtNat&) = default;

 private:
  static constexpr std::uint64_t kInfValue = ~std::uint64_t{0};
  std::uint64_t d_value;
};

std::string to_string(const ExtNat& n);
std::ostream& operator<<(std::ostream& os, const ExtNat& n);

// A tuple of cardinalities, one slot per sort of some fixed sort list.
using CardTuple = std::vector<ExtNat>;

// a dominates b componentwise (a >= b in every slot).  Requires equal sizes.
bool dominates(const CardTuple& a, const CardTuple& b);

// The minimal elements of xs under the componentwise order: a deduplicated
// antichain, sorted lexicographically.  Every input tuple dominates some
// output tuple and every output tuple occurs in the input.
std::vector<CardTuple> dickson_minimal(std::vector<CardTuple> xs);

std::string to_string(const CardTuple& t);                     // "(2,Inf)"
std::string to_string(const std::vector<CardTuple>& ts);       // "{(2),(3,Inf)}"

}  // namespace tcw
