// tcw — theory-combination workbench

#include "tcw/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "tcw/errors.hpp"
#include "tcw/partition.hpp"

namespace tcw {

OracleBudget OracleBudget::from_env() {
  OracleBudget b;
  if (const char* env = std::getenv("TCW_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) b.limit = v;
  }
  return b;
}

void OracleBudget::charge(std::uint64_t steps) {
  used += steps;
  if (used > limit) {
    throw BudgetExceeded("search budget of " + std::to_string(limit) +
                         " steps exceeded");
  }
}

bool tag_holds(const std::vector<std::uint64_t>& table, const ShapeTag& tag) {
  const std::size_t n = table.size();
  auto iterate = [&](std::uint64_t a, int times) {
    std::uint64_t v = a;
    for (int i = 0; i < times; ++i) v = table[v];
    return v;
  };
  for (std::uint64_t a = 0; a < n; ++a) {
    switch (tag.kind) {
      case TagKind::None:
        break;
      case TagKind::Identity:
        if (table[a] != a) return false;
        break;
      case TagKind::NoFixpoint:
        if (table[a] == a) return false;
        break;
      case TagKind::CycleEq:
        if (iterate(a, tag.k) != a) return false;
        break;
      case TagKind::CycleOr: {
        const std::uint64_t two = iterate(a, 2 * tag.k);
        if (two != iterate(a, tag.k) && two != a) return false;
        break;
      }
      case TagKind::NoFixpointCycleEq:
        if (table[a] == a || iterate(a, tag.k) != a) return false;
        break;
      case TagKind::NoFixpointCycleOr: {
        if (table[a] == a) return false;
        const std::uint64_t two = iterate(a, 2 * tag.k);
        if (two != iterate(a, tag.k) && two != a) return false;
        break;
      }
    }
  }
  return true;
}

namespace {

// Does the piece admit these domain sizes, with coordinates under inf_mask
// standing proxy for an infinite domain (membership waived, the piece only
// needs Inf in that coordinate's set)?
bool piece_admits_sizes(const Piece& piece,
                        const std::vector<std::uint64_t>& sizes,
                        const std::vector<bool>& inf_mask,
                        const OracleTable& oracles) {
  const int n = static_cast<int>(sizes.size());
  if (piece.is_diagonal()) {
    // Tied sorts share one cardinal: all-infinite or all equal and contained.
    bool any_inf = false, all_inf = true;
    for (int s : piece.diagonal_sorts) {
      const bool inf = inf_mask[static_cast<std::size_t>(s)];
      any_inf = any_inf || inf;
      all_inf = all_inf && inf;
    }
    if (any_inf != all_inf) return false;
    if (any_inf) {
      if (!piece.diagonal_set->include_inf) return false;
    } else {
      const std::uint64_t v =
          sizes[static_cast<std::size_t>(piece.diagonal_sorts.front())];
      for (int s : piece.diagonal_sorts) {
        if (sizes[static_cast<std::size_t>(s)] != v) return false;
      }
      if (!cardset_contains(*piece.diagonal_set, ExtNat(v), oracles)) return false;
    }
  }
  for (int s = 0; s < n; ++s) {
    if (piece.sort_is_tied(s)) continue;
    const CardSet& cs = piece.per_sort.at(s);
    if (inf_mask[static_cast<std::size_t>(s)]) {
      if (!cs.include_inf) return false;
    } else if (!cardset_contains(cs, ExtNat(sizes[static_cast<std::size_t>(s)]),
                                 oracles)) {
      return false;
    }
  }
  return true;
}

// Admission of a concrete function table by a piece: the shape tag holds, or
// the piece's trivial-model disjunct applies (one-element sort-0 domain).
bool piece_admits_table(const Piece& piece,
                        const std::vector<std::uint64_t>& table,
                        const std::vector<std::uint64_t>& sizes,
                        const std::vector<bool>& inf_mask) {
  if (tag_holds(table, piece.tag)) return true;
  return piece.trivial_model && !inf_mask[0] && sizes[0] == 1;
}

struct VarLayout {
  std::vector<Var> vars;                 // sorted by (sort, name)
  std::vector<int> sort_of;              // parallel to vars
  std::map<std::string, int> var_sorts;  // for Interpretation
};

VarLayout layout_vars(const Formula& phi) {
  VarLayout out;
  out.vars = collect_vars(phi);
  for (const Var& v : out.vars) {
    out.sort_of.push_back(v.sort);
    out.var_sorts[v.name] = v.sort;
  }
  return out;
}

// Enumerates canonical valuations: scanning variables in (sort, name) order,
// each value is at most one above the per-sort running maximum, so named
// elements form an initial segment of each domain in first-use order.
// visit(valuation) returns false to stop the whole enumeration early.
template <typename Visit>
bool for_each_valuation(const VarLayout& layout,
                        const std::vector<std::uint64_t>& sizes, Visit&& visit) {
  std::vector<std::uint64_t> value(layout.vars.size(), 0);
  std::vector<std::int64_t> max_used(sizes.size(), -1);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == layout.vars.size()) return visit(value);
    const int sort = layout.sort_of[i];
    const std::uint64_t n = sizes[static_cast<std::size_t>(sort)];
    const std::uint64_t cap = std::min<std::uint64_t>(
        n - 1, static_cast<std::uint64_t>(max_used[static_cast<std::size_t>(sort)] + 1));
    for (std::uint64_t v = 0; v <= cap; ++v) {
      value[i] = v;
      const std::int64_t saved = max_used[static_cast<std::size_t>(sort)];
      max_used[static_cast<std::size_t>(sort)] =
          std::max(saved, static_cast<std::int64_t>(v));
      if (!self(self, i + 1)) return false;
      max_used[static_cast<std::size_t>(sort)] = saved;
    }
    return true;
  };
  return rec(rec, 0);
}

// Odometer over [1..bound]^k in lexicographic order.
template <typename Visit>
bool for_each_size_tuple(std::size_t k, std::uint64_t bound, Visit&& visit) {
  std::vector<std::uint64_t> sizes(k, 1);
  while (true) {
    if (!visit(sizes)) return false;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (sizes[i] < bound) {
        ++sizes[i];
        for (std::size_t j = i + 1; j < k; ++j) sizes[j] = 1;
        break;
      }
      if (i == 0) return true;
    }
  }
}

Interpretation make_interp(const TheoryDef& theory, const VarLayout& layout,
                           const std::vector<std::uint64_t>& sizes,
                           const std::vector<std::uint64_t>& value) {
  Interpretation a;
  a.sig = theory.sig;
  a.domain_sizes = sizes;
  for (std::size_t i = 0; i < layout.vars.size(); ++i) {
    a.valuation[layout.vars[i].name] = value[i];
  }
  a.var_sorts = layout.var_sorts;
  return a;
}

// Lexicographically least conjugate of the table under permutations of the
// unnamed elements [named..n); named elements are rigid (pinned by the
// valuation), so two tables are isomorphic iff they share this form.
std::vector<std::uint64_t> canonical_table(const std::vector<std::uint64_t>& table,
                                           std::uint64_t named) {
  const std::uint64_t n = table.size();
  if (named >= n) return table;
  std::vector<std::uint64_t> perm(n - named);
  std::iota(perm.begin(), perm.end(), named);
  std::vector<std::uint64_t> best = table;
  std::vector<std::uint64_t> p(n), conj(n);
  do {
    for (std::uint64_t i = 0; i < named; ++i) p[i] = i;
    for (std::uint64_t j = 0; j < n - named; ++j) p[named + j] = perm[j];
    for (std::uint64_t a = 0; a < n; ++a) conj[p[a]] = p[table[a]];
    if (conj < best) best = conj;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Visits every admitted (valuation, table) model at fixed finite/proxy sizes.
// restrict_piece limits admission to one piece; nullptr admits via any piece.
// visit returns false to stop.  Returns false when stopped early.
template <typename Visit>
bool for_each_model_at(const TheoryDef& theory, const Formula& phi,
                       const VarLayout& layout,
                       const std::vector<std::uint64_t>& sizes,
                       const std::vector<bool>& inf_mask,
                       const Piece* restrict_piece, OracleBudget& budget,
                       Visit&& visit) {
  std::vector<const Piece*> size_ok;
  for (const Piece& piece : theory.spectrum.pieces) {
    if (restrict_piece && &piece != restrict_piece) continue;
    if (piece_admits_sizes(piece, sizes, inf_mask, theory.oracles)) {
      size_ok.push_back(&piece);
    }
  }
  if (size_ok.empty()) return true;

  return for_each_valuation(layout, sizes, [&](const std::vector<std::uint64_t>& value) {
    Interpretation a = make_interp(theory, layout, sizes, value);
    if (!theory.sig.has_unary_fn) {
      budget.charge();
      if (!a.satisfies(phi)) return true;
      return visit(a);
    }
    const std::uint64_t n0 = sizes[0];
    std::vector<std::uint64_t> table(n0, 0);
    while (true) {
      budget.charge();
      bool admitted = false;
      for (const Piece* piece : size_ok) {
        if (piece_admits_table(*piece, table, sizes, inf_mask)) {
          admitted = true;
          break;
        }
      }
      if (admitted) {
        a.fn_table = table;
        if (a.satisfies(phi)) {
          if (!visit(a)) return false;
        }
      }
      // Advance the table odometer.
      std::size_t i = n0;
      bool done = true;
      while (i > 0) {
        --i;
        if (table[i] + 1 < n0) {
          ++table[i];
          std::fill(table.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                    table.end(), 0);
          done = false;
          break;
        }
      }
      if (done) break;
    }
    return true;
  });
}

std::uint64_t named_count_sort0(const Interpretation& a) {
  std::uint64_t named = 0;
  for (const auto& [name, value] : a.valuation) {
    if (a.var_sorts.at(name) == 0) named = std::max(named, value + 1);
  }
  return named;
}

}  // namespace

std::vector<Interpretation> enumerate_models(const TheoryDef& theory,
                                             const Formula& phi,
                                             std::uint64_t bound,
                                             OracleBudget* budget) {
  validate_formula(phi, theory.sig);
  OracleBudget local = OracleBudget::from_env();
  OracleBudget& bud = budget ? *budget : local;
  const VarLayout layout = layout_vars(phi);
  const std::vector<bool> no_inf(theory.sig.sorts.size(), false);

  std::vector<Interpretation> out;
  for_each_size_tuple(theory.sig.sorts.size(), bound,
                      [&](const std::vector<std::uint64_t>& sizes) {
    for_each_model_at(theory, phi, layout, sizes, no_inf, nullptr, bud,
                      [&](const Interpretation& a) {
      if (theory.sig.has_unary_fn) {
        // Keep only canonical representatives of each isomorphism class.
        if (canonical_table(a.fn_table, named_count_sort0(a)) != a.fn_table) {
          return true;
        }
      }
      out.push_back(a);
      return true;
    });
    return true;
  });
  return out;
}

OracleMinmodResult oracle_minmod(const TheoryDef& theory, const Formula& phi,
                                 const std::vector<int>& restrict_sorts,
                                 std::uint64_t bound, OracleBudget* budget) {
  validate_formula(phi, theory.sig);
  OracleBudget local = OracleBudget::from_env();
  OracleBudget& bud = budget ? *budget : local;
  const VarLayout layout = layout_vars(phi);
  const std::size_t k = theory.sig.sorts.size();

  std::set<CardTuple> realized;
  std::vector<bool> piece_found(theory.spectrum.pieces.size(), false);

  // Finite realizations.
  const std::vector<bool> no_inf(k, false);
  for_each_size_tuple(k, bound, [&](const std::vector<std::uint64_t>& sizes) {
    for (std::size_t pi = 0; pi < theory.spectrum.pieces.size(); ++pi) {
      const Piece& piece = theory.spectrum.pieces[pi];
      bool found = false;
      for_each_model_at(theory, phi, layout, sizes, no_inf, &piece, bud,
                        [&](const Interpretation&) {
        found = true;
        return false;  // existence is enough
      });
      if (found) {
        piece_found[pi] = true;
        CardTuple t;
        for (std::uint64_t s : sizes) t.push_back(ExtNat(s));
        realized.insert(t);
      }
    }
    return true;
  });

  // Infinite coordinates via bounded proxies: a tag-satisfying bounded model
  // extends to an infinite one by appending unnamed cycles, so a proxy search
  // with membership waived on the masked coordinates is sound.
  for (const Piece& piece : theory.spectrum.pieces) {
    std::vector<int> inf_sorts;
    for (std::size_t s = 0; s < k; ++s) {
      if (piece.set_for(static_cast<int>(s)).include_inf) {
        inf_sorts.push_back(static_cast<int>(s));
      }
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << inf_sorts.size());
         ++mask) {
      std::vector<bool> inf_mask(k, false);
      for (std::size_t b = 0; b < inf_sorts.size(); ++b) {
        if (mask & (std::uint64_t{1} << b)) {
          inf_mask[static_cast<std::size_t>(inf_sorts[b])] = true;
        }
      }
      std::set<std::vector<std::uint64_t>> finite_parts_done;
      for_each_size_tuple(k, bound, [&](const std::vector<std::uint64_t>& sizes) {
        std::vector<std::uint64_t> finite_part;
        for (std::size_t s = 0; s < k; ++s) {
          if (!inf_mask[s]) finite_part.push_back(sizes[s]);
        }
        if (finite_parts_done.count(finite_part)) return true;
        bool found = false;
        for_each_model_at(theory, phi, layout, sizes, inf_mask, &piece, bud,
                          [&](const Interpretation&) {
          found = true;
          return false;
        });
        if (found) {
          finite_parts_done.insert(finite_part);
          CardTuple t;
          for (std::size_t s = 0; s < k; ++s) {
            t.push_back(inf_mask[s] ? ExtNat::inf() : ExtNat(sizes[s]));
          }
          realized.insert(t);
        }
        return true;
      });
    }
  }

  OracleMinmodResult result;
  std::vector<CardTuple> projected;
  for (const CardTuple& t : realized) {
    projected.push_back(project_tuple(t, restrict_sorts));
  }
  result.tuples = dickson_minimal(projected);

  // Complete iff, for every piece, a least finite realization cannot hide
  // beyond the bound: either one was found (the least is at most it), or the
  // piece's finite sizes are exhausted by the bound (Inf-only pieces have an
  // empty, hence exhausted, finite part).
  result.complete = true;
  for (std::size_t pi = 0; pi < theory.spectrum.pieces.size(); ++pi) {
    if (piece_found[pi]) continue;
    const Piece& piece = theory.spectrum.pieces[pi];
    bool exhausted = true;
    for (std::size_t s = 0; s < k; ++s) {
      auto sup = cardset_finite_sup(piece.set_for(static_cast<int>(s)),
                                    theory.oracles);
      if (!sup || *sup > bound) {
        exhausted = false;
        break;
      }
    }
    if (!exhausted) {
      result.complete = false;
      break;
    }
  }
  return result;
}

EntailResult oracle_entails(const TheoryDef& theory, const Formula& cube,
                            const std::vector<Formula>& disjuncts,
                            std::uint64_t bound, OracleBudget* budget) {
  validate_formula(cube, theory.sig);
  for (const Formula& d : disjuncts) {
    if (d.kind() != FormulaKind::Eq) {
      throw ParseError("entailment disjuncts must be equalities", 0);
    }
    validate_formula(d, theory.sig);
  }
  OracleBudget local = OracleBudget::from_env();
  OracleBudget& bud = budget ? *budget : local;

  // A countermodel satisfies the cube and refutes every disjunct.
  std::vector<Formula> parts{cube};
  for (const Formula& d : disjuncts) parts.push_back(Formula::negate(d));
  const Formula counter = Formula::conj(parts);
  const VarLayout layout = layout_vars(counter);
  const std::size_t k = theory.sig.sorts.size();
  const std::vector<bool> no_inf(k, false);

  EntailResult result;
  bool found = false;
  Interpretation witness;
  for_each_size_tuple(k, bound, [&](const std::vector<std::uint64_t>& sizes) {
    return for_each_model_at(theory, counter, layout, sizes, no_inf, nullptr,
                             bud, [&](const Interpretation& a) {
      found = true;
      witness = a;
      return false;
    });
  });
  if (found) {
    result.verdict = Verdict::Refuted;
    result.detail = "countermodel: " + to_string(witness);
    return result;
  }

  if (!theory.sig.has_unary_fn) {
    // Exact: a countermodel induces a variable partition with at most one
    // class per variable, and exists iff some satisfying partition's demand
    // is realizable by a spectrum piece (at any cardinality, Inf included).
    for (const Partition& e : enumerate_partitions(layout.vars)) {
      if (!partition_satisfies(counter, e)) continue;
      auto counts = e.per_sort_block_counts(k);
      CardTuple demand;
      for (std::uint64_t c : counts) demand.push_back(ExtNat(std::max<std::uint64_t>(c, 1)));
      for (const Piece& piece : theory.spectrum.pieces) {
        std::optional<CardTuple> cover;
        try {
          cover = piece_cover(piece, demand, theory.oracles);
        } catch (const OracleExhausted& e2) {
          result.verdict = Verdict::Unknown;
          result.detail = e2.what();
          return result;
        }
        if (cover) {
          result.verdict = Verdict::Refuted;
          result.detail = "countermodel partition " + to_string(e) +
                          " realizable at " + to_string(*cover);
          return result;
        }
      }
    }
    result.verdict = Verdict::Proved;
    result.detail = "no satisfying partition is realizable";
    return result;
  }

  // With the function symbol the bounded search is only complete when the
  // finite spectrum is exhausted by the bound and Inf is absent.
  bool exhaustive = true;
  for (const Piece& piece : theory.spectrum.pieces) {
    for (std::size_t s = 0; s < k && exhaustive; ++s) {
      const CardSet& cs = piece.set_for(static_cast<int>(s));
      if (cs.include_inf) exhaustive = false;
      auto sup = cardset_finite_sup(cs, theory.oracles);
      if (!sup || *sup > bound) exhaustive = false;
    }
  }
  if (exhaustive) {
    result.verdict = Verdict::Proved;
    result.detail = "exhaustive up to the spectrum's largest size";
  } else {
    result.verdict = Verdict::Unknown;
    result.detail = "no countermodel up to bound " + std::to_string(bound);
  }
  return result;
}

}  // namespace tcw
