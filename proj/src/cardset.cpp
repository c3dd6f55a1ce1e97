// tcw — theory-combination workbench

#include "tcw/cardset.hpp"

#include <algorithm>
#include <sstream>

#include "tcw/errors.hpp"

namespace tcw {

CardSet CardSet::finite(std::vector<std::uint64_t> vs, bool inf) {
  CardSet cs;
  cs.kind = CardSetKind::Finite;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  cs.values = std::move(vs);
  cs.include_inf = inf;
  return cs;
}

CardSet CardSet::from(std::uint64_t min, bool inf) {
  CardSet cs;
  cs.kind = CardSetKind::From;
  cs.from_min = min;
  cs.include_inf = inf;
  return cs;
}

CardSet CardSet::seq(std::string oracle, std::size_t prefix_len, bool tail_unbounded,
                     bool inf) {
  CardSet cs;
  cs.kind = CardSetKind::Seq;
  cs.oracle = std::move(oracle);
  cs.prefix_len = prefix_len;
  cs.tail_unbounded = tail_unbounded;
  cs.include_inf = inf;
  return cs;
}

namespace {

const SequenceOracle& resolve(const CardSet& cs, const OracleTable& oracles) {
  auto it = oracles.find(cs.oracle);
  if (it == oracles.end()) {
    throw CatalogError("cardinality set references unknown sequence '" + cs.oracle + "'");
  }
  return it->second;
}

// The known finite members of a Seq set, ascending.
std::vector<std::uint64_t> seq_known(const CardSet& cs, const SequenceOracle& o,
                                     std::optional<std::uint64_t> upto = std::nullopt) {
  std::vector<std::uint64_t> out;
  std::uint64_t i = o.start_index();
  std::size_t taken = 0;
  while (taken < cs.prefix_len && o.has_index(i)) {
    std::uint64_t v = o.at(i);
    if (upto && v > *upto) break;
    out.push_back(v);
    ++i;
    ++taken;
    if (o.computable() && taken >= cs.prefix_len) break;
  }
  return out;
}

}  // namespace

void validate_cardset(const CardSet& cs, const OracleTable& oracles) {
  switch (cs.kind) {
    case CardSetKind::Finite:
      if (cs.values.empty() && !cs.include_inf) {
        throw CatalogError("finite cardinality set must be non-empty or include Inf");
      }
      for (std::uint64_t v : cs.values) {
        if (v < 1) throw CatalogError("cardinalities start at 1");
      }
      if (!std::is_sorted(cs.values.begin(), cs.values.end())) {
        throw CatalogError("finite cardinality set must be sorted");
      }
      break;
    case CardSetKind::From:
      if (cs.from_min < 1) throw CatalogError("cardinalities start at 1");
      break;
    case CardSetKind::Seq: {
      const SequenceOracle& o = resolve(cs, oracles);
      if (!o.computable() && cs.prefix_len > o.stored_size()) {
        throw CatalogError("prefix length " + std::to_string(cs.prefix_len) +
                           " exceeds stored length of sequence '" + cs.oracle + "'");
      }
      if (cs.prefix_len == 0) {
        throw CatalogError("sequence-backed cardinality set needs a non-empty prefix");
      }
      if (o.first_value() < 1) {
        throw CatalogError("sequence '" + cs.oracle + "' contains values below 1");
      }
      break;
    }
  }
}

std::optional<ExtNat> cardset_min_geq(const CardSet& cs, const ExtNat& lower,
                                      const OracleTable& oracles) {
  if (lower.is_inf()) {
    if (cs.include_inf) return ExtNat::inf();
    return std::nullopt;
  }
  const std::uint64_t lo = lower.finite();
  switch (cs.kind) {
    case CardSetKind::Finite: {
      auto it = std::lower_bound(cs.values.begin(), cs.values.end(), lo);
      if (it != cs.values.end()) return ExtNat(*it);
      break;
    }
    case CardSetKind::From:
      return ExtNat(std::max(cs.from_min, lo));
    case CardSetKind::Seq: {
      const SequenceOracle& o = resolve(cs, oracles);
      if (o.computable()) {
        std::uint64_t first = o.first_value();
        if (lo <= first) return ExtNat(first);
        std::uint64_t steps = (lo - first + o.stride() - 1) / o.stride();
        return ExtNat(first + steps * o.stride());
      }
      auto known = seq_known(cs, o);
      auto it = std::lower_bound(known.begin(), known.end(), lo);
      if (it != known.end()) return ExtNat(*it);
      if (cs.tail_unbounded) {
        throw OracleExhausted("least member >= " + std::to_string(lo) +
                              " of sequence '" + cs.oracle +
                              "' lies beyond the stored prefix");
      }
      break;
    }
  }
  if (cs.include_inf) return ExtNat::inf();
  return std::nullopt;
}

bool cardset_contains(const CardSet& cs, const ExtNat& v, const OracleTable& oracles) {
  if (v.is_inf()) return cs.include_inf;
  const std::uint64_t x = v.finite();
  switch (cs.kind) {
    case CardSetKind::Finite:
      return std::binary_search(cs.values.begin(), cs.values.end(), x);
    case CardSetKind::From:
      return x >= cs.from_min;
    case CardSetKind::Seq: {
      const SequenceOracle& o = resolve(cs, oracles);
      if (o.computable()) {
        std::uint64_t first = o.first_value();
        return x >= first && (x - first) % o.stride() == 0;
      }
      auto known = seq_known(cs, o);
      if (std::binary_search(known.begin(), known.end(), x)) return true;
      if (!known.empty() && x <= known.back()) return false;
      if (cs.tail_unbounded) {
        throw OracleExhausted("membership of " + std::to_string(x) + " in sequence '" +
                              cs.oracle + "' is undecided beyond the stored prefix");
      }
      return false;
    }
  }
  return false;
}

bool cardset_finite_cofinal(const CardSet& cs, const OracleTable& oracles) {
  switch (cs.kind) {
    case CardSetKind::Finite:
      return false;
    case CardSetKind::From:
      return true;
    case CardSetKind::Seq:
      return resolve(cs, oracles).computable() || cs.tail_unbounded;
  }
  return false;
}

std::optional<std::uint64_t> cardset_finite_sup(const CardSet& cs,
                                                const OracleTable& oracles) {
  switch (cs.kind) {
    case CardSetKind::Finite:
      if (cs.values.empty()) return 0;
      return cs.values.back();
    case CardSetKind::From:
      return std::nullopt;
    case CardSetKind::Seq: {
      const SequenceOracle& o = resolve(cs, oracles);
      if (o.computable() || cs.tail_unbounded) return std::nullopt;
      auto known = seq_known(cs, o);
      if (known.empty()) return 0;
      return known.back();
    }
  }
  return std::nullopt;
}

MaterializedPrefix cardset_members_upto(const CardSet& cs, std::uint64_t bound,
                                        const OracleTable& oracles) {
  MaterializedPrefix out;
  switch (cs.kind) {
    case CardSetKind::Finite:
      for (std::uint64_t v : cs.values) {
        if (v <= bound) out.values.push_back(v);
      }
      break;
    case CardSetKind::From:
      for (std::uint64_t v = cs.from_min; v <= bound; ++v) out.values.push_back(v);
      break;
    case CardSetKind::Seq: {
      const SequenceOracle& o = resolve(cs, oracles);
      if (o.computable()) {
        for (std::uint64_t v = o.first_value(); v <= bound; v += o.stride()) {
          out.values.push_back(v);
        }
      } else {
        auto known = seq_known(cs, o, bound);
        out.values = known;
        auto all_known = seq_known(cs, o);
        bool decided = !cs.tail_unbounded ||
                       (!all_known.empty() && all_known.back() >= bound);
        out.complete = decided;
      }
      break;
    }
  }
  return out;
}

std::string to_string(const CardSet& cs) {
  std::ostringstream os;
  switch (cs.kind) {
    case CardSetKind::Finite: {
      os << '{';
      for (std::size_t i = 0; i < cs.values.size(); ++i) {
        if (i > 0) os << ',';
        os << cs.values[i];
      }
      os << '}';
      break;
    }
    case CardSetKind::From:
      os << "from(" << cs.from_min << ')';
      break;
    case CardSetKind::Seq:
      os << "seq(" << cs.oracle << ",len=" << cs.prefix_len
         << (cs.tail_unbounded ? ",tail" : "") << ')';
      break;
  }
  if (cs.include_inf) os << "+Inf";
  return os.str();
}

}  // namespace tcw
