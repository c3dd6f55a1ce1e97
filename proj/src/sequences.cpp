// tcw — theory-combination workbench

#include "tcw/sequences.hpp"

#include <stdexcept>

#include "tcw/errors.hpp"

namespace tcw {

SequenceOracle SequenceOracle::prefix(std::string name, std::uint64_t start,
                                      std::vector<std::uint64_t> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw CatalogError("sequence '" + name + "' is not strictly increasing");
    }
  }
  SequenceOracle o;
  o.d_name = std::move(name);
  o.d_start = start;
  o.d_values = std::move(values);
  o.d_computable = false;
  return o;
}

SequenceOracle SequenceOracle::arithmetic(std::string name, std::uint64_t start,
                                          std::uint64_t first, std::uint64_t stride) {
  if (stride == 0) throw CatalogError("arithmetic sequence needs stride >= 1");
  SequenceOracle o;
  o.d_name = std::move(name);
  o.d_start = start;
  o.d_computable = true;
  o.d_first = first;
  o.d_stride = stride;
  return o;
}

bool SequenceOracle::has_index(std::uint64_t i) const {
  if (i < d_start) return false;
  if (d_computable) return true;
  return i - d_start < d_values.size();
}

std::uint64_t SequenceOracle::at(std::uint64_t i) const {
  if (i < d_start) {
    throw std::out_of_range("sequence '" + d_name + "' starts at index " +
                            std::to_string(d_start));
  }
  if (d_computable) return d_first + d_stride * (i - d_start);
  if (i - d_start >= d_values.size()) {
    throw OracleExhausted("sequence '" + d_name + "' has no stored value at index " +
                          std::to_string(i) + " (prefix ends at index " +
                          std::to_string(d_start + d_values.size() - 1) + ")");
  }
  return d_values[i - d_start];
}

std::uint64_t SequenceOracle::first_value() const {
  if (d_computable) return d_first;
  if (d_values.empty()) throw std::out_of_range("empty sequence '" + d_name + "'");
  return d_values.front();
}

const std::vector<int>& default_f_prefix() {
  static const std::vector<int> f = {1, 0, 0, 1, 1, 0, 0, 1};
  return f;
}

namespace {

// f(1)=1 and every complete block f(1)..f(2^k) contains exactly 2^{k-1} zeros.
void validate_f_prefix(const std::vector<int>& f) {
  if (f.empty() || f[0] != 1) {
    throw CatalogError("f-prefix must start with f(1)=1");
  }
  for (int v : f) {
    if (v != 0 && v != 1) throw CatalogError("f-prefix entries must be 0 or 1");
  }
  for (std::size_t block = 2; block <= f.size(); block *= 2) {
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < block; ++i) {
      if (f[i] == 0) ++zeros;
    }
    if (zeros != block / 2) {
      throw CatalogError("f-prefix violates block balance on the first " +
                         std::to_string(block) + " entries");
    }
  }
}

}  // namespace

SequenceOracle sequence_oracle_g(std::size_t prefix_len) {
  return sequence_oracle_g(prefix_len, default_f_prefix());
}

SequenceOracle sequence_oracle_g(std::size_t prefix_len, const std::vector<int>& f) {
  if (prefix_len < 2) throw CatalogError("g prefix needs length >= 2");
  if (prefix_len > f.size()) {
    throw CatalogError("g prefix of length " + std::to_string(prefix_len) +
                       " needs an f-prefix at least that long");
  }
  validate_f_prefix(f);
  std::vector<std::uint64_t> g;
  g.reserve(prefix_len);
  std::uint64_t sum = 0;
  for (std::size_t n = 1; n <= prefix_len; ++n) {
    sum += static_cast<std::uint64_t>(f[n - 1]);
    g.push_back(n + sum);
  }
  return SequenceOracle::prefix("g", 1, std::move(g));
}

SequenceOracle sequence_oracle_bb(const std::vector<std::uint64_t>& extension) {
  std::vector<std::uint64_t> table = {0, 1, 4};
  for (std::uint64_t v : extension) {
    if (v <= table.back()) {
      throw CatalogError("maximum-ones extension must be strictly increasing past " +
                         std::to_string(table.back()));
    }
    table.push_back(v);
  }
  return SequenceOracle::prefix("bb", 0, std::move(table));
}

}  // namespace tcw
