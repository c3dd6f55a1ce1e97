// tcw — theory-combination workbench
// Finite descriptions of sets of per-sort model cardinalities, and the
// least-member-above query the minimal-model machinery is built on.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcw/extnat.hpp"
#include "tcw/sequences.hpp"

namespace tcw {

enum class CardSetKind {
  Finite,  // an explicit finite set of naturals
  From,    // all naturals >= a threshold
  Seq,     // the value set of a named sequence, known through a prefix
};

// A set of cardinalities >= 1, possibly including Inf.  Seq sets reference a
// SequenceOracle by name; the first prefix_len values are the known finite
// members, and tail_unbounded records whether further (unknown) members exist
// beyond the prefix.  Sequences with a total rule are decidable throughout,
// prefix-only sequences answer queries past the prefix by raising
// OracleExhausted when the tail is unbounded.
struct CardSet {
  CardSetKind kind = CardSetKind::Finite;
  std::vector<std::uint64_t> values;  // Finite: sorted members
  std::uint64_t from_min = 1;         // From
  std::string oracle;                 // Seq
  std::size_t prefix_len = 0;         // Seq
  bool tail_unbounded = false;        // Seq
  bool include_inf = false;

  static CardSet finite(std::vector<std::uint64_t> vs, bool inf = false);
  static CardSet from(std::uint64_t min, bool inf = false);
  static CardSet seq(std::string oracle, std::size_t prefix_len, bool tail_unbounded,
                     bool inf = false);
};

// Checks structural invariants (members >= 1, non-emptiness, oracle present
// and long enough, increasing values); throws CatalogError on violation.
void validate_cardset(const CardSet& cs, const OracleTable& oracles);

// Least member of cs that is >= lower, with Inf counting as a member iff
// include_inf; nullopt when no member qualifies.  Throws OracleExhausted when
// the answer lies beyond a stored prefix with an unbounded unknown tail.
std::optional<ExtNat> cardset_min_geq(const CardSet& cs, const ExtNat& lower,
                                      const OracleTable& oracles);

// Exact membership.  Throws OracleExhausted when undecidable past the prefix.
bool cardset_contains(const CardSet& cs, const ExtNat& v, const OracleTable& oracles);

// True when arbitrarily large finite members are guaranteed to exist.
bool cardset_finite_cofinal(const CardSet& cs, const OracleTable& oracles);

// Largest finite member when the finite part is known to be bounded;
// nullopt when it is unbounded (or unbounded-unknown).
std::optional<std::uint64_t> cardset_finite_sup(const CardSet& cs,
                                                const OracleTable& oracles);

struct MaterializedPrefix {
  std::vector<std::uint64_t> values;  // finite members <= bound, ascending
  bool complete = true;               // membership below bound fully decided
};

// All known finite members <= bound.  Never throws: undecidable regions are
// reported via complete=false instead.
MaterializedPrefix cardset_members_upto(const CardSet& cs, std::uint64_t bound,
                                        const OracleTable& oracles);

std::string to_string(const CardSet& cs);

}  // namespace tcw
