// tcw — theory-combination workbench

#include "tcw/minmod.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "tcw/errors.hpp"
#include "tcw/flatten.hpp"
#include "tcw/partition.hpp"

namespace tcw {

// The shipped size sets are parity-regular: any feasibility pattern repeats
// within four successive members, so a short ascending scan is exhaustive;
// past it, only the infinite member remains to try.
std::optional<ExtNat> least_feasible_size(const CardSet& cs, const ShapeTag& tag,
                                          const ChainFootprint& fp, ExtNat lower,
                                          const OracleTable& oracles) {
  for (int step = 0; step < 4; ++step) {
    auto q = cardset_min_geq(cs, lower, oracles);
    if (!q) return std::nullopt;
    if (feasible_extension(tag, fp, *q)) return q;
    if (q->is_inf()) return std::nullopt;
    lower = ExtNat(q->finite() + 1);
  }
  if (cs.include_inf && feasible_extension(tag, fp, ExtNat::inf())) {
    return ExtNat::inf();
  }
  return std::nullopt;
}

namespace {

// Candidate spectrum point of one piece covering the demand of one admitted
// partition; nullopt when the piece cannot realize it.
std::optional<CardTuple> piece_candidate(const Piece& piece, bool has_fn,
                                         const CardTuple& demand,
                                         const ChainFootprint& fp,
                                         const OracleTable& oracles) {
  const int n = static_cast<int>(demand.size());
  CardTuple out(demand.size(), ExtNat(1));
  std::vector<bool> filled(demand.size(), false);

  if (fp.trivial_all_merged) {
    // The collapsed-chain partition stands for the one-element model the
    // piece's trivial disjunct admits; it exists at sort-0 size exactly 1,
    // and drags any sort tied to sort 0 down to 1 as well.
    if (!cardset_contains(piece.set_for(0), ExtNat(1), oracles)) {
      return std::nullopt;
    }
    out[0] = ExtNat(1);
    filled[0] = true;
    if (piece.sort_is_tied(0)) {
      for (int s : piece.diagonal_sorts) {
        if (demand[static_cast<std::size_t>(s)] > ExtNat(1)) return std::nullopt;
        out[static_cast<std::size_t>(s)] = ExtNat(1);
        filled[static_cast<std::size_t>(s)] = true;
      }
    }
  } else if (has_fn) {
    // Sort 0 carries the function: its coordinate must both cover the demand
    // and admit a tag extension.  Tied sorts share the raised value.
    ExtNat lower = demand[0];
    if (piece.sort_is_tied(0)) {
      for (int s : piece.diagonal_sorts) {
        lower = std::max(lower, demand[static_cast<std::size_t>(s)]);
      }
    }
    auto q = least_feasible_size(piece.set_for(0), piece.tag, fp, lower, oracles);
    if (!q) return std::nullopt;
    out[0] = *q;
    filled[0] = true;
    if (piece.sort_is_tied(0)) {
      for (int s : piece.diagonal_sorts) {
        out[static_cast<std::size_t>(s)] = *q;
        filled[static_cast<std::size_t>(s)] = true;
      }
    }
  }

  if (piece.is_diagonal() && !filled[static_cast<std::size_t>(piece.diagonal_sorts.front())]) {
    ExtNat tied(1);
    for (int s : piece.diagonal_sorts) {
      tied = std::max(tied, demand[static_cast<std::size_t>(s)]);
    }
    auto v = cardset_min_geq(*piece.diagonal_set, tied, oracles);
    if (!v) return std::nullopt;
    for (int s : piece.diagonal_sorts) {
      out[static_cast<std::size_t>(s)] = *v;
      filled[static_cast<std::size_t>(s)] = true;
    }
  }

  for (int s = 0; s < n; ++s) {
    if (filled[static_cast<std::size_t>(s)]) continue;
    if (piece.sort_is_tied(s)) continue;  // handled with its group
    auto v = cardset_min_geq(piece.set_for(s), demand[static_cast<std::size_t>(s)],
                             oracles);
    if (!v) return std::nullopt;
    out[static_cast<std::size_t>(s)] = *v;
  }
  return out;
}

CardTuple demand_of(const Partition& e, std::size_t num_sorts) {
  CardTuple demand;
  for (std::uint64_t c : e.per_sort_block_counts(num_sorts)) {
    demand.push_back(ExtNat(std::max<std::uint64_t>(c, 1)));
  }
  return demand;
}

}  // namespace

std::vector<CardTuple> minmod(const TheoryDef& theory,
                              const std::vector<int>& restrict_sorts,
                              const Formula& phi) {
  validate_formula(phi, theory.sig);
  const std::size_t num_sorts = theory.sig.sorts.size();
  std::set<CardTuple> full;

  for (const Piece& piece : theory.spectrum.pieces) {
    std::vector<AdmittedPartition> admitted;
    if (theory.sig.has_unary_fn) {
      const int extra = std::max(1, tag_reach(piece.tag));
      FlattenResult fr = flatten_unary(phi, theory.sig, extra);
      admitted = satisfying_partitions(fr.flat, piece.tag, &fr,
                                       piece.trivial_model);
    } else {
      admitted = satisfying_partitions(phi, ShapeTag::none(), nullptr);
    }
    for (const AdmittedPartition& ap : admitted) {
      auto cand = piece_candidate(piece, theory.sig.has_unary_fn,
                                  demand_of(ap.partition, num_sorts),
                                  ap.footprint, theory.oracles);
      if (cand) full.insert(*cand);
    }
  }

  std::vector<CardTuple> projected;
  for (const CardTuple& t : full) {
    projected.push_back(project_tuple(t, restrict_sorts));
  }
  return dickson_minimal(projected);
}

bool satisfiable(const TheoryDef& theory, const Formula& phi) {
  std::vector<int> all;
  for (std::size_t s = 0; s < theory.sig.sorts.size(); ++s) {
    all.push_back(static_cast<int>(s));
  }
  return !minmod(theory, all, phi).empty();
}

namespace {

std::vector<int> all_sorts(const TheoryDef& t) {
  std::vector<int> out;
  for (std::size_t s = 0; s < t.sig.sorts.size(); ++s) {
    out.push_back(static_cast<int>(s));
  }
  return out;
}

std::vector<CardTuple> transfer_add_sort(const TheoryDef& base, const Formula& phi) {
  const TheoryDef derived_probe = apply_operator(OperatorKind::AddSort, base);
  validate_formula(phi, derived_probe.sig);

  // Split variables: the added sort's atoms are decided by a partition of its
  // variables; what remains is a base-signature formula.
  std::vector<Var> added_vars;
  for (const Var& v : collect_vars(phi)) {
    if (v.sort == 1) added_vars.push_back(v);
  }

  std::set<CardTuple> candidates;
  for (const Partition& f : enumerate_partitions(added_vars)) {
    auto idx = [&](const std::string& name) {
      for (std::size_t i = 0; i < f.universe.size(); ++i) {
        if (f.universe[i].name == name) return i;
      }
      return f.universe.size();
    };
    const Formula phi_f = map_atoms(phi, [&](const Formula& atom) {
      if (atom.lhs().var.sort != 1) return atom;
      const bool same = f.same_block(idx(atom.lhs().var.name), idx(atom.rhs().var.name));
      const bool truth = (atom.kind() == FormulaKind::Eq) == same;
      return truth ? Formula::truth() : Formula::falsity();
    });
    const std::uint64_t added_card =
        std::max<std::uint64_t>(static_cast<std::uint64_t>(f.num_blocks()), 1);
    for (const CardTuple& m : minmod(base, all_sorts(base), phi_f)) {
      CardTuple t = m;
      t.push_back(ExtNat(added_card));
      candidates.insert(t);
    }
  }
  return dickson_minimal(std::vector<CardTuple>(candidates.begin(), candidates.end()));
}

std::vector<CardTuple> transfer_add_fn_id(const TheoryDef& base, const Formula& phi) {
  const TheoryDef derived_probe = apply_operator(OperatorKind::AddFnId, base);
  validate_formula(phi, derived_probe.sig);
  // With s forced to the identity, s^j(x) and x coincide.
  const Formula erased = map_atoms(phi, [](const Formula& atom) {
    Term l = atom.lhs(), r = atom.rhs();
    l.depth = 0;
    r.depth = 0;
    return atom.kind() == FormulaKind::Eq ? Formula::eq(l, r) : Formula::neq(l, r);
  });
  return minmod(base, all_sorts(base), erased);
}

std::vector<CardTuple> transfer_add_fn_or(const TheoryDef& base, const Formula& phi) {
  const TheoryDef derived_probe = apply_operator(OperatorKind::AddFnOr, base);
  validate_formula(phi, derived_probe.sig);

  // Chains carry two extra elements so the pointwise shape condition is
  // expressible on the flattened variables.
  FlattenResult fr = flatten_unary(phi, derived_probe.sig, 2);
  std::set<CardTuple> candidates;
  for (const AdmittedPartition& ap :
       satisfying_partitions(fr.flat, ShapeTag::cycle_or(1), &fr, false)) {
    const Formula query =
        Formula::conj({fr.flat, arrangement_formula(ap.partition)});
    for (const CardTuple& m : minmod(base, all_sorts(base), query)) {
      candidates.insert(m);
    }
  }
  return dickson_minimal(std::vector<CardTuple>(candidates.begin(), candidates.end()));
}

}  // namespace

std::vector<CardTuple> minmod_via_transfer(OperatorKind kind,
                                           const TheoryDef& base,
                                           const Formula& phi) {
  switch (kind) {
    case OperatorKind::AddSort:
      return transfer_add_sort(base, phi);
    case OperatorKind::AddFnId:
      return transfer_add_fn_id(base, phi);
    case OperatorKind::AddFnOr:
      return transfer_add_fn_or(base, phi);
  }
  throw CatalogError("unknown operator kind");
}

}  // namespace tcw
