// tcw — theory-combination workbench

#include "tcw/spectrum.hpp"

#include <algorithm>
#include <set>

#include "tcw/errors.hpp"

namespace tcw {

bool Piece::sort_is_tied(int sort) const {
  return std::binary_search(diagonal_sorts.begin(), diagonal_sorts.end(), sort);
}

const CardSet& Piece::set_for(int sort) const {
  if (sort_is_tied(sort)) return *diagonal_set;
  return per_sort.at(sort);
}

void validate_spectrum(const Spectrum& spec, int num_sorts,
                       const OracleTable& oracles) {
  if (spec.pieces.empty()) {
    throw CatalogError("spectrum has no pieces");
  }
  for (const auto& piece : spec.pieces) {
    if (piece.is_diagonal() != piece.diagonal_set.has_value()) {
      throw CatalogError("diagonal sorts and diagonal set must come together");
    }
    if (!std::is_sorted(piece.diagonal_sorts.begin(),
                        piece.diagonal_sorts.end())) {
      throw CatalogError("diagonal sorts must be sorted");
    }
    std::set<int> covered(piece.diagonal_sorts.begin(),
                          piece.diagonal_sorts.end());
    if (covered.size() != piece.diagonal_sorts.size()) {
      throw CatalogError("duplicate sort in diagonal group");
    }
    for (const auto& [sort, cs] : piece.per_sort) {
      if (!covered.insert(sort).second) {
        throw CatalogError("sort constrained twice in one piece");
      }
      validate_cardset(cs, oracles);
    }
    if (piece.diagonal_set) validate_cardset(*piece.diagonal_set, oracles);
    for (int s = 0; s < num_sorts; ++s) {
      if (covered.count(s) == 0) {
        throw CatalogError("piece does not constrain sort " +
                           std::to_string(s));
      }
    }
    if (static_cast<int>(covered.size()) != num_sorts) {
      throw CatalogError("piece mentions a sort outside the signature");
    }
  }
}

std::optional<CardTuple> piece_cover(const Piece& piece,
                                     const CardTuple& demand,
                                     const OracleTable& oracles) {
  const int n = static_cast<int>(demand.size());
  CardTuple out(demand.size(), ExtNat(1));

  if (piece.is_diagonal()) {
    ExtNat tied_demand(1);
    for (int s : piece.diagonal_sorts) {
      tied_demand = std::max(tied_demand, demand[static_cast<std::size_t>(s)]);
    }
    auto v = cardset_min_geq(*piece.diagonal_set, tied_demand, oracles);
    if (!v) return std::nullopt;
    for (int s : piece.diagonal_sorts) out[static_cast<std::size_t>(s)] = *v;
  }
  for (int s = 0; s < n; ++s) {
    if (piece.sort_is_tied(s)) continue;
    auto v = cardset_min_geq(piece.per_sort.at(s),
                             demand[static_cast<std::size_t>(s)], oracles);
    if (!v) return std::nullopt;
    out[static_cast<std::size_t>(s)] = *v;
  }
  return out;
}

CardTuple project_tuple(const CardTuple& t, const std::vector<int>& sorts) {
  CardTuple out;
  out.reserve(sorts.size());
  for (int s : sorts) out.push_back(t.at(static_cast<std::size_t>(s)));
  return out;
}

std::vector<CardTuple> spectrum_cover(const Spectrum& spec,
                                      const CardTuple& demand,
                                      const std::vector<int>& restrict_sorts,
                                      const OracleTable& oracles) {
  std::vector<CardTuple> projected;
  for (const auto& piece : spec.pieces) {
    auto full = piece_cover(piece, demand, oracles);
    if (full) projected.push_back(project_tuple(*full, restrict_sorts));
  }
  return dickson_minimal(projected);
}

bool spectrum_exact_at(const Spectrum& spec, const CardTuple& t,
                       const OracleTable& oracles) {
  auto member = [&](const CardSet& cs, const ExtNat& v) {
    if (v.is_inf()) return cs.include_inf;
    return cardset_contains(cs, v, oracles);
  };
  for (const auto& piece : spec.pieces) {
    bool ok = true;
    if (piece.is_diagonal()) {
      const ExtNat v = t.at(static_cast<std::size_t>(piece.diagonal_sorts.front()));
      for (int s : piece.diagonal_sorts) {
        if (t.at(static_cast<std::size_t>(s)) != v) { ok = false; break; }
      }
      if (ok && !member(*piece.diagonal_set, v)) ok = false;
    }
    if (ok) {
      for (const auto& [s, cs] : piece.per_sort) {
        if (!member(cs, t.at(static_cast<std::size_t>(s)))) { ok = false; break; }
      }
    }
    if (!ok || piece.tag.kind == TagKind::None) {
      if (ok) return true;
      continue;
    }
    const ExtNat s0 = t.at(0);
    if (piece.trivial_model && s0 == ExtNat(1)) return true;
    const bool fn_ok = s0.is_inf() ? tag_feasible_at_inf(piece.tag)
                                   : feasible_extension(piece.tag, ChainFootprint{}, s0);
    if (fn_ok) return true;
  }
  return false;
}

std::vector<CardTuple> enumerate_spectrum_points(const Spectrum& spec,
                                                 int num_sorts,
                                                 std::uint64_t bound,
                                                 const OracleTable& oracles) {
  // Candidate values per coordinate: 1..bound plus Inf.
  std::vector<ExtNat> candidates;
  for (std::uint64_t v = 1; v <= bound; ++v) candidates.push_back(ExtNat(v));
  candidates.push_back(ExtNat::inf());

  std::set<CardTuple> points;
  for (const auto& piece : spec.pieces) {
    CardTuple cur(static_cast<std::size_t>(num_sorts), ExtNat(1));
    auto rec = [&](auto&& self, int sort) -> void {
      if (sort == num_sorts) {
        points.insert(cur);
        return;
      }
      const std::size_t s = static_cast<std::size_t>(sort);
      // A tied sort after the first must copy the group's chosen value.
      if (piece.sort_is_tied(sort) && sort != piece.diagonal_sorts.front()) {
        cur[s] = cur[static_cast<std::size_t>(piece.diagonal_sorts.front())];
        self(self, sort + 1);
        return;
      }
      for (const ExtNat& v : candidates) {
        if (!cardset_contains(piece.set_for(sort), v, oracles)) continue;
        cur[s] = v;
        self(self, sort + 1);
      }
    };
    rec(rec, 0);
  }
  return std::vector<CardTuple>(points.begin(), points.end());
}

}  // namespace tcw
