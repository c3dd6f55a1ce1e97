// tcw — theory-combination workbench

#include "tcw/witness.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tcw/errors.hpp"
#include "tcw/minmod.hpp"
#include "tcw/oracle.hpp"
#include "tcw/partition.hpp"
#include "tcw/spectrum.hpp"

namespace tcw {

namespace {

std::vector<int> all_sorts_of(const TheoryDef& theory) {
  std::vector<int> out(theory.sig.sorts.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// phi extended with counts[s] fresh self-equalities per sort; fresh names
// skip over any __w_ names the input already uses.
Formula with_fresh_selfeqs(const TheoryDef& theory, const Formula& phi,
                           const std::vector<std::uint64_t>& counts) {
  std::set<std::string> taken;
  for (const Var& v : collect_vars(phi)) taken.insert(v.name);
  std::vector<Formula> parts{phi};
  for (std::size_t s = 0; s < counts.size(); ++s) {
    std::uint64_t made = 0;
    for (std::uint64_t i = 1; made < counts[s]; ++i) {
      const std::string name =
          "__w_" + theory.sig.sorts[s] + "_" + std::to_string(i);
      if (!taken.insert(name).second) continue;
      const Term t{Var{name, static_cast<int>(s)}, 0};
      parts.push_back(Formula::eq(t, t));
      ++made;
    }
  }
  return Formula::conj(std::move(parts));
}

// Does the valuation of m name every element of every sort?
bool fully_named(const Interpretation& m) {
  for (std::size_t s = 0; s < m.domain_sizes.size(); ++s) {
    std::vector<bool> hit(m.domain_sizes[s], false);
    for (const auto& [name, val] : m.valuation) {
      if (m.var_sorts.at(name) == static_cast<int>(s)) hit[val] = true;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
      return false;
    }
  }
  return true;
}

}  // namespace

Formula build_witness(const TheoryDef& theory, const Formula& phi) {
  validate_formula(phi, theory.sig);
  std::vector<std::uint64_t> counts(theory.sig.sorts.size(), 0);
  switch (theory.witness_rule.kind) {
    case WitnessRule::Kind::Minmod: {
      const auto tuples = minmod(theory, all_sorts_of(theory), phi);
      if (tuples.empty()) return phi;
      const CardTuple* pick = nullptr;
      for (const auto& t : tuples) {  // lexicographically sorted
        if (std::all_of(t.begin(), t.end(),
                        [](const ExtNat& x) { return x.is_finite(); })) {
          pick = &t;
          break;
        }
      }
      if (!pick) {
        throw WitnessUnavailable("no all-finite minimal model tuple for \"" +
                                 to_string(phi, theory.sig) + "\"");
      }
      for (std::size_t s = 0; s < counts.size(); ++s) {
        counts[s] = (*pick)[s].finite();
      }
      break;
    }
    case WitnessRule::Kind::Doubling: {
      if (theory.sig.sorts.size() != 1) {
        throw CatalogError("the doubling rule needs a single-sorted theory");
      }
      if (!satisfiable(theory, phi)) return phi;
      const std::uint64_t nvars =
          std::max<std::uint64_t>(1, collect_vars(phi).size());
      std::uint64_t rung = std::max<std::uint64_t>(1, theory.witness_rule.first);
      while (rung < nvars) rung *= 2;
      counts[0] = rung;
      break;
    }
  }
  return with_fresh_selfeqs(theory, phi, counts);
}

WitnessReport validate_witness(const TheoryDef& theory, const Formula& wit,
                               const Formula& phi, std::uint64_t bound,
                               bool strong) {
  validate_formula(wit, theory.sig);
  validate_formula(phi, theory.sig);
  const std::size_t ns = theory.sig.sorts.size();
  const auto phi_vars = collect_vars(phi);
  const auto wit_vars = collect_vars(wit);
  WitnessReport rep;

  {
    const std::set<Var> have(wit_vars.begin(), wit_vars.end());
    for (const Var& v : phi_vars) {
      if (!have.count(v)) {
        rep.verdict = Verdict::Refuted;
        rep.bounded = false;
        rep.detail = "the witness drops variable " + v.name;
        return rep;
      }
    }
  }

  // Strong mode runs the arrangement sweep before the bounded enumeration: a
  // sweep refutation is conclusive on its own and costs only partition work
  // on the base formula.  The witness's naming variables carry no constraints
  // of their own — each absorbs into any existing class, a chain variable
  // mimicking its host's successor — so the base formula's satisfying
  // arrangements carry the same reach and naming analysis as the witness's.
  enum class Sweep { Clean, Undecided, Gap };
  Sweep sweep = Sweep::Clean;
  std::string sweep_info;
  if (strong) {
    // An arrangement cannot force more classes than the witness has
    // variables of the sort, so the sweep tops out there.
    std::vector<std::uint64_t> nv(ns, 0);
    for (const Var& v : wit_vars) ++nv[static_cast<std::size_t>(v.sort)];
    std::vector<std::uint64_t> d_hi(ns, 1);
    for (std::size_t s = 0; s < ns; ++s) {
      d_hi[s] =
          std::max<std::uint64_t>(1, std::min<std::uint64_t>(bound, nv[s]));
    }
    if (theory.sig.has_unary_fn) {
      if (ns != 1) {
        sweep = Sweep::Undecided;
        sweep_info =
            "the arrangement sweep is not decided for multi-sorted signatures "
            "with the function symbol";
      } else {
        // An arrangement forcing exactly d classes is satisfiable through a
        // piece when some admitted arrangement of the formula's closure fits
        // in d blocks and a feasible member >= d exists; full naming then
        // demands a feasible member of exactly d.  Per piece, collapse the
        // admitted arrangements to the distinct (block count, footprint)
        // pairs the size analysis reads.
        struct Entry {
          std::uint64_t nb;
          ChainFootprint fp;
        };
        std::vector<std::pair<const Piece*, std::vector<Entry>>> by_piece;
        for (const Piece& p : theory.spectrum.pieces) {
          const FlattenResult fr = flatten_unary(
              phi, theory.sig, std::max(1, tag_reach(p.tag)));
          std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t,
                              bool, bool, bool>>
              seen;
          std::vector<Entry> entries;
          for (const auto& ap :
               satisfying_partitions(fr.flat, p.tag, &fr, p.trivial_model)) {
            const auto nb =
                static_cast<std::uint64_t>(ap.partition.num_blocks());
            const auto key = std::make_tuple(
                nb, ap.footprint.blocks, ap.footprint.paired,
                ap.footprint.trivial_all_merged, ap.footprint.eq_irregular,
                ap.footprint.id_irregular);
            if (seen.insert(key).second) entries.push_back({nb, ap.footprint});
          }
          by_piece.emplace_back(&p, std::move(entries));
        }
        for (std::uint64_t d = 1; d <= d_hi[0] && sweep != Sweep::Gap; ++d) {
          bool reach_yes = false, reach_maybe = false;
          bool exact_yes = false, exact_maybe = false;
          for (const auto& [pp, entries] : by_piece) {
            const CardSet& cs = pp->set_for(0);
            for (const Entry& e : entries) {
              if (e.nb > d) continue;
              try {
                if (least_feasible_size(cs, pp->tag, e.fp, ExtNat(d),
                                        theory.oracles)
                        .has_value()) {
                  reach_yes = true;
                }
              } catch (const OracleExhausted&) {
                reach_maybe = true;
              }
              try {
                if (cardset_contains(cs, ExtNat(d), theory.oracles) &&
                    feasible_extension(pp->tag, e.fp, ExtNat(d))) {
                  exact_yes = true;
                }
              } catch (const OracleExhausted&) {
                exact_maybe = true;
              }
            }
          }
          const CardTuple dt{ExtNat(d)};
          if (reach_yes && !exact_yes && !exact_maybe) {
            sweep = Sweep::Gap;
            sweep_info = "arrangement with class counts " + to_string(dt) +
                         " is satisfiable but never fully named";
          } else if (sweep == Sweep::Clean &&
                     ((reach_yes && !exact_yes && exact_maybe) ||
                      (reach_maybe && !reach_yes && !exact_yes))) {
            sweep = Sweep::Undecided;
            sweep_info =
                "arrangement sweep undecided at class counts " + to_string(dt);
          }
        }
      }
    } else {
      // A class-count tuple d is forced by some arrangement of the
      // variables (plus fresh singletons); it is satisfiable iff some
      // satisfying arrangement uses at most d classes per sort and the
      // spectrum covers d; the contract then demands a model of exactly d
      // elements per sort.
      std::vector<CardTuple> floors;
      for (const auto& ap :
           satisfying_partitions(phi, ShapeTag::none(), nullptr, false)) {
        const auto counts = ap.partition.per_sort_block_counts(ns);
        CardTuple f;
        f.reserve(ns);
        for (const std::uint64_t c : counts) {
          f.push_back(ExtNat(std::max<std::uint64_t>(1, c)));
        }
        floors.push_back(std::move(f));
      }
      floors = dickson_minimal(floors);

      std::vector<std::uint64_t> d(ns, 1);
      for (;;) {
        CardTuple dt;
        dt.reserve(ns);
        for (const std::uint64_t v : d) dt.push_back(ExtNat(v));
        const bool reachable =
            std::any_of(floors.begin(), floors.end(),
                        [&](const CardTuple& f) { return dominates(dt, f); });
        if (reachable) {
          try {
            const bool coverable = std::any_of(
                theory.spectrum.pieces.begin(), theory.spectrum.pieces.end(),
                [&](const Piece& p) {
                  return piece_cover(p, dt, theory.oracles).has_value();
                });
            if (coverable &&
                !spectrum_exact_at(theory.spectrum, dt, theory.oracles)) {
              sweep = Sweep::Gap;
              sweep_info = "arrangement with class counts " + to_string(dt) +
                           " is satisfiable but never fully named";
              break;
            }
          } catch (const OracleExhausted&) {
            if (sweep == Sweep::Clean) {
              sweep = Sweep::Undecided;
              sweep_info =
                  "arrangement sweep undecided at class counts " + to_string(dt);
            }
          }
        }
        // Odometer over the per-sort ranges, rightmost coordinate fastest.
        std::size_t i = ns;
        bool advanced = false;
        while (i > 0) {
          --i;
          if (d[i] < d_hi[i]) {
            ++d[i];
            std::fill(d.begin() + static_cast<std::ptrdiff_t>(i) + 1, d.end(),
                      1);
            advanced = true;
            break;
          }
        }
        if (!advanced) break;
      }
    }
    if (sweep == Sweep::Gap) {
      rep.verdict = Verdict::Refuted;
      rep.bounded = false;
      rep.detail = sweep_info;
      return rep;
    }
  }

  OracleBudget budget = OracleBudget::from_env();

  // (a) Same models up to the fresh variables: the sets of induced variable
  // arrangements, projected to the original variables, must agree.
  const auto wit_models = enumerate_models(theory, wit, bound, &budget);
  const auto phi_models = enumerate_models(theory, phi, bound, &budget);
  std::set<Partition> wit_proj, phi_proj;
  for (const auto& m : wit_models) {
    wit_proj.insert(induced_partition(m, phi_vars));
  }
  for (const auto& m : phi_models) {
    phi_proj.insert(induced_partition(m, phi_vars));
  }
  if (wit_proj != phi_proj) {
    const Partition* miss = nullptr;
    bool phi_side = false;
    for (const auto& e : phi_proj) {
      if (!wit_proj.count(e)) {
        miss = &e;
        phi_side = true;
        break;
      }
    }
    if (!miss) {
      for (const auto& e : wit_proj) {
        if (!phi_proj.count(e)) {
          miss = &e;
          break;
        }
      }
    }
    rep.verdict = Verdict::Refuted;
    rep.bounded = true;
    rep.detail = "bounded models differ over the original variables: " +
                 to_string(*miss) +
                 (phi_side ? " is reached by the formula only"
                           : " is reached by the witness only");
    return rep;
  }

  // (b) Satisfiable inputs need a model fully named by the variables.
  const auto mm =
      oracle_minmod(theory, wit, all_sorts_of(theory), bound, &budget);
  if (mm.tuples.empty()) {
    if (!mm.complete) {
      rep.verdict = Verdict::Unknown;
      rep.detail =
          "satisfiability undecided at bound " + std::to_string(bound);
      return rep;
    }
    rep.verdict = Verdict::Proved;
    rep.bounded = false;
    rep.detail = "unsatisfiable; the naming requirement is vacuous";
    return rep;
  }
  if (!std::any_of(wit_models.begin(), wit_models.end(), fully_named)) {
    std::vector<std::uint64_t> nv(ns, 0);
    for (const Var& v : wit_vars) ++nv[static_cast<std::size_t>(v.sort)];
    const std::uint64_t maxv =
        nv.empty() ? 0 : *std::max_element(nv.begin(), nv.end());
    const bool no_finite_tuple =
        mm.complete &&
        std::none_of(mm.tuples.begin(), mm.tuples.end(), [](const CardTuple& t) {
          return std::all_of(t.begin(), t.end(),
                             [](const ExtNat& x) { return x.is_finite(); });
        });
    rep.verdict = Verdict::Refuted;
    // A fully named model has at most one element per variable, so the search
    // is exhaustive once the bound reaches the variable counts; it is also
    // conclusive when no finite model exists at all.
    rep.bounded = !(bound >= maxv || no_finite_tuple);
    rep.detail = "satisfiable, but no model at bound " + std::to_string(bound) +
                 " is fully named by the variables";
    return rep;
  }

  rep.verdict = Verdict::Proved;
  rep.bounded = true;
  rep.detail = "models agree and a fully named model exists at bound " +
               std::to_string(bound);
  if (!strong) return rep;

  if (sweep == Sweep::Undecided) {
    rep.verdict = Verdict::Unknown;
    rep.detail = sweep_info;
  } else {
    rep.detail = "every satisfiable class-count arrangement up to bound " +
                 std::to_string(bound) + " is exactly realized";
  }
  return rep;
}

}  // namespace tcw
