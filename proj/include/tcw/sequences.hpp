// tcw — theory-combination workbench
// Integer sequences backing cardinality sets.  A sequence is either a stored
// strictly increasing prefix (queries past the end fail loudly) or a total
// arithmetic rule (queries always answerable).

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tcw {

class SequenceOracle {
 public:
  SequenceOracle() = default;

  // Stored-prefix sequence: values[i] is the sequence at index start + i.
  static SequenceOracle prefix(std::string name, std::uint64_t start,
                               std::vector<std::uint64_t> values);

  // Total sequence: value at index i >= start is first + stride * (i - start).
  static SequenceOracle arithmetic(std::string name, std::uint64_t start,
                                   std::uint64_t first, std::uint64_t stride);

  const std::string& name() const { return d_name; }
  bool computable() const { return d_computable; }
  std::uint64_t start_index() const { return d_start; }

  // Number of stored values (for arithmetic sequences: 0, everything is rule-based).
  std::size_t stored_size() const { return d_values.size(); }
  const std::vector<std::uint64_t>& stored_values() const { return d_values; }

  bool has_index(std::uint64_t i) const;

  // Value at index i.  Throws OracleExhausted when the index is past a stored
  // prefix and no rule is available.
  std::uint64_t at(std::uint64_t i) const;

  std::uint64_t stride() const { return d_stride; }
  std::uint64_t first_value() const;

 private:
  std::string d_name;
  std::uint64_t d_start = 0;
  std::vector<std::uint64_t> d_values;  // strictly increasing
  bool d_computable = false;
  std::uint64_t d_first = 0;   // arithmetic only
  std::uint64_t d_stride = 0;  // arithmetic only
};

using OracleTable = std::map<std::string, SequenceOracle>;

// The default admissible f-prefix: 1,0,0,1,1,0,0,1 (f(1)..f(8)).  Any prefix
// with f(1)=1 whose complete power-of-two blocks are half zeros is admissible.
const std::vector<int>& default_f_prefix();

// Builds the first prefix_len values of g, where g(n) = n + sum_{i<=n} f(i),
// from the given f-prefix (defaults to default_f_prefix()).  Validates
// f(1)=1 and the half-zeros block-balance property on every complete
// power-of-two block in range; violations raise CatalogError.
// Requires 2 <= prefix_len <= f.size().
SequenceOracle sequence_oracle_g(std::size_t prefix_len);
SequenceOracle sequence_oracle_g(std::size_t prefix_len, const std::vector<int>& f);

// The maximum-ones sequence table: 0, 1, 4 at indices 0, 1, 2.  An extension,
// if given, supplies values from index 3 on; it must be strictly increasing
// and exceed the default table's last value.  Queries past the stored table
// raise OracleExhausted rather than guess.
SequenceOracle sequence_oracle_bb(const std::vector<std::uint64_t>& extension = {});

}  // namespace tcw
