// tcw — theory-combination workbench

#include "tcw/properties.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "tcw/corpus.hpp"
#include "tcw/errors.hpp"
#include "tcw/flatten.hpp"
#include "tcw/minmod.hpp"
#include "tcw/oracle.hpp"
#include "tcw/partition.hpp"
#include "tcw/witness.hpp"

namespace tcw {

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> kNames{"SI", "SM", "FW", "SW",
                                               "CV", "FM", "SF", "CF"};
  return kNames;
}

namespace {

std::vector<int> all_sorts_of(const TheoryDef& theory) {
  std::vector<int> out(theory.sig.sorts.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Arbitrarily large models available in this set (large finite or infinite)?
bool set_unbounded(const CardSet& cs, const OracleTable& oracles) {
  return cs.include_inf || cardset_finite_cofinal(cs, oracles);
}

// A member >= v exists (Inf counts).  Decidable even past a stored prefix:
// the throw only happens under an unbounded unknown tail, which guarantees
// arbitrarily large finite members.
bool exists_geq(const CardSet& cs, const ExtNat& v, const OracleTable& oracles) {
  try {
    return cardset_min_geq(cs, v, oracles).has_value();
  } catch (const OracleExhausted&) {
    return true;
  }
}

// Largest finite value any scan needs to look past for this set: beyond it
// the set's membership pattern is uniform (From tails continue, finite sets
// end, arithmetic sequences repeat their stride).
std::uint64_t set_landmark(const CardSet& cs, const OracleTable& oracles) {
  switch (cs.kind) {
    case CardSetKind::Finite:
      return cs.values.empty() ? 0 : cs.values.back();
    case CardSetKind::From:
      return cs.from_min;
    case CardSetKind::Seq: {
      const auto& o = oracles.at(cs.oracle);
      if (o.computable()) return o.first_value() + o.stride();
      if (cs.prefix_len == 0) return 0;
      return o.stored_values()[cs.prefix_len - 1];
    }
  }
  return 0;
}

std::uint64_t sort_landmark(const TheoryDef& t, int sort) {
  std::uint64_t lm = 0;
  for (const Piece& p : t.spectrum.pieces) {
    lm = std::max(lm, set_landmark(p.set_for(sort), t.oracles));
  }
  return lm;
}

std::uint64_t scan_ceiling(const TheoryDef& t, std::uint64_t bound) {
  std::uint64_t lm = 0;
  for (std::size_t s = 0; s < t.sig.sorts.size(); ++s) {
    lm = std::max(lm, sort_landmark(t, static_cast<int>(s)));
  }
  return std::max(bound, lm + 1);
}

enum class Member { In, Out, Undecided };

// Membership of a full size tuple in the spectrum, piece by piece so one
// undecidable piece cannot hide another piece's definite yes.
Member tuple_status(const TheoryDef& t, const CardTuple& full) {
  bool undecided = false;
  for (const Piece& p : t.spectrum.pieces) {
    Spectrum one;
    one.pieces = {p};
    try {
      if (spectrum_exact_at(one, full, t.oracles)) return Member::In;
    } catch (const OracleExhausted&) {
      undecided = true;
    }
  }
  return undecided ? Member::Undecided : Member::Out;
}

// Best membership status over all full tuples whose S-projection is d, with
// the free coordinates ranging over 1..ceiling and Inf.
Member proj_status(const TheoryDef& t, const std::vector<int>& S,
                   const CardTuple& d, std::uint64_t ceiling) {
  const std::size_t ns = t.sig.sorts.size();
  CardTuple full(ns, ExtNat(1));
  std::vector<std::size_t> free;
  {
    std::set<int> sset(S.begin(), S.end());
    for (std::size_t i = 0; i < S.size(); ++i) {
      full[static_cast<std::size_t>(S[i])] = d[i];
    }
    for (std::size_t s = 0; s < ns; ++s) {
      if (!sset.count(static_cast<int>(s))) free.push_back(s);
    }
  }
  bool undecided = false;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == free.size()) {
      switch (tuple_status(t, full)) {
        case Member::In: return true;
        case Member::Undecided: undecided = true; return false;
        case Member::Out: return false;
      }
      return false;
    }
    for (std::uint64_t v = 1; v <= ceiling; ++v) {
      full[free[i]] = ExtNat(v);
      if (self(self, i + 1)) return true;
    }
    full[free[i]] = ExtNat::inf();
    return self(self, i + 1);
  };
  if (rec(rec, 0)) return Member::In;
  return undecided ? Member::Undecided : Member::Out;
}

// Blocks one flattened variable chain can contribute to a model's demand
// under the piece's tag: forced merges collapse identity-like chains, cycle
// laws fold long chains back.
std::uint64_t chain_blocks(const ShapeTag& tag) {
  switch (tag.kind) {
    case TagKind::None:
    case TagKind::NoFixpoint:
      return 2;
    case TagKind::Identity:
      return 1;
    case TagKind::CycleEq:
      return tag.k == 1 ? 1 : 2;
    case TagKind::NoFixpointCycleEq:
      return 2;
    case TagKind::CycleOr:
      return tag.k == 1 ? 2 : 4;
    case TagKind::NoFixpointCycleOr:
      return tag.k == 1 ? 2 : 4;
  }
  return 2;
}

// Largest n for which a distinct_n probe at this sort is worth walking: one
// past the sets' landmark, within the decidable region of any stored-prefix
// sequence (the flattened closure multiplies the demand by chain_blocks), and
// small enough that the closure's arrangement enumeration stays tractable.
std::uint64_t probe_cap(const TheoryDef& t, int s, std::uint64_t cap_limit) {
  std::uint64_t cap =
      std::min<std::uint64_t>(sort_landmark(t, s) + 1, cap_limit);
  for (const Piece& p : t.spectrum.pieces) {
    std::uint64_t cb = 1;
    if (t.sig.has_unary_fn && s == 0) {
      cb = chain_blocks(p.tag);
      const std::uint64_t reach =
          static_cast<std::uint64_t>(std::max(1, tag_reach(p.tag)));
      cap = std::min(cap, 12 / (1 + reach));
    }
    const CardSet& cs = p.set_for(s);
    if (cs.kind == CardSetKind::Seq && cs.prefix_len > 0) {
      const auto& o = t.oracles.at(cs.oracle);
      if (!o.computable() && cs.tail_unbounded) {
        cap = std::min(cap, o.stored_values()[cs.prefix_len - 1] / cb);
      }
    }
  }
  return cap;
}

// Deterministic distinctness probes beyond the corpus, per requested sort.
std::vector<Formula> distinct_probes(const TheoryDef& t,
                                     const std::vector<int>& S,
                                     std::uint64_t cap_limit) {
  std::vector<Formula> out;
  for (const int s : S) {
    const std::uint64_t cap = probe_cap(t, s, cap_limit);
    for (std::uint64_t n = 2; n <= cap; ++n) {
      out.push_back(distinct_vars(s, n));
    }
  }
  return out;
}

std::string quoted(const TheoryDef& t, const Formula& f) {
  return "\"" + to_string(f, t.sig) + "\"";
}

// ---- shape-tag structure shared by the checkers ----

// The pointwise condition a tag puts on a single element's orbit: nothing, a
// fixed point, an involution step, or one of the two collapse disjunctions.
enum class Cyc { None, Id, Eq2, Or1, Or2 };

struct TagCanon {
  bool contradictory = false;  // no function at any size meets the tag
  bool nofix = false;
  Cyc cyc = Cyc::None;
};

TagCanon canon_of(const ShapeTag& tag) {
  switch (tag.kind) {
    case TagKind::None:
      return {false, false, Cyc::None};
    case TagKind::Identity:
      return {false, false, Cyc::Id};
    case TagKind::NoFixpoint:
      return {false, true, Cyc::None};
    case TagKind::CycleEq:
      return {false, false, tag.k == 1 ? Cyc::Id : Cyc::Eq2};
    case TagKind::CycleOr:
      return {false, false, tag.k == 1 ? Cyc::Or1 : Cyc::Or2};
    case TagKind::NoFixpointCycleEq:
      if (tag.k == 1) return {true, false, Cyc::None};
      return {false, true, Cyc::Eq2};
    case TagKind::NoFixpointCycleOr:
      // k=1 collapses to the fixpoint-free involution s^2 = id.
      return {false, true, tag.k == 1 ? Cyc::Eq2 : Cyc::Or2};
  }
  return {};
}

bool cyc_implies(Cyc a, Cyc b) {
  if (b == Cyc::None || a == b) return true;
  switch (a) {
    case Cyc::Id:
      return true;  // fixed points meet every cycle law
    case Cyc::Eq2:
      return b == Cyc::Or1 || b == Cyc::Or2;
    case Cyc::Or1:
      return b == Cyc::Or2;
    default:
      return false;
  }
}

// Every function meeting tag a meets tag b, pointwise at every element.
bool axiom_implies(const ShapeTag& a, const ShapeTag& b) {
  const TagCanon ca = canon_of(a);
  const TagCanon cb = canon_of(b);
  if (ca.contradictory) return true;
  if (cb.contradictory) return false;
  return (ca.nofix || !cb.nofix) && cyc_implies(ca.cyc, cb.cyc);
}

// Any model of the tag grows elementwise to any larger finite size: fresh
// elements become fixed points, or point into an existing cycle when fixed
// points are forbidden.  The fixpoint-free collapse tags fail this (a fresh
// tail behind a long cycle breaks their disjunction).
bool monotone_tag(const ShapeTag& tag) {
  switch (tag.kind) {
    case TagKind::None:
    case TagKind::Identity:
    case TagKind::NoFixpoint:
    case TagKind::CycleEq:
    case TagKind::CycleOr:
      return true;
    case TagKind::NoFixpointCycleEq:
    case TagKind::NoFixpointCycleOr:
      return false;
  }
  return false;
}

// All large enough sizes carry a total function meeting the tag (no parity
// obstruction and no contradiction).
bool feasible_cofinite(const ShapeTag& tag) {
  const TagCanon c = canon_of(tag);
  return !c.contradictory && !(c.nofix && c.cyc == Cyc::Eq2);
}

// ---- the individual checkers ----

// Does phi have a model infinite at every sort in S?  The answer false is
// certain: every model induces an admitted arrangement of its term closure,
// and the per-piece scan covers them all.  Undecidable coordinates count in
// phi's favor.
bool has_infinite_model(const TheoryDef& t, const std::vector<int>& S,
                        const Formula& phi) {
  const std::size_t ns = t.sig.sorts.size();
  const std::set<int> sset(S.begin(), S.end());
  for (const Piece& p : t.spectrum.pieces) {
    bool inf_face = true;
    for (const int s : S) inf_face = inf_face && p.set_for(s).include_inf;
    if (!inf_face) continue;
    if (p.tag.kind != TagKind::None && sset.count(0) &&
        !tag_feasible_at_inf(p.tag)) {
      continue;
    }
    const FlattenResult fr = flatten_unary(phi, t.sig, tag_reach(p.tag));
    for (const auto& ap : satisfying_partitions(fr.flat, p.tag, &fr, false)) {
      const auto counts = ap.partition.per_sort_block_counts(ns);
      bool ok = true;
      for (std::size_t s = 0; s < ns && ok; ++s) {
        if (sset.count(static_cast<int>(s))) continue;  // taken at Inf
        const std::uint64_t need = std::max<std::uint64_t>(1, counts[s]);
        if (s == 0 && p.tag.kind != TagKind::None) {
          try {
            ok = least_feasible_size(p.set_for(0), p.tag, ap.footprint,
                                     ExtNat(need), t.oracles)
                     .has_value();
          } catch (const OracleExhausted&) {
            // Unknown tail: cannot rule the piece out, keep it.
          }
        } else {
          ok = exists_geq(p.set_for(static_cast<int>(s)), ExtNat(need),
                          t.oracles);
        }
      }
      if (ok && sset.count(0) && p.tag.kind != TagKind::None &&
          !feasible_extension(p.tag, ap.footprint, ExtNat::inf())) {
        ok = false;
      }
      if (ok) return true;
    }
  }
  return false;
}

PropertyResult check_si(const TheoryDef& t, const std::vector<int>& S) {
  PropertyResult r;
  const int ns = static_cast<int>(t.sig.sorts.size());
  const std::set<int> sset(S.begin(), S.end());

  // Can piece q, taken at its all-infinite face over S, dominate every demand
  // piece p admits?  Models found through p keep their elements and function
  // values, so q's function constraint must follow pointwise from p's, and q
  // must tolerate the growth (to Inf at the requested sorts, to some larger
  // member elsewhere).
  const auto dominator = [&](const Piece& q, const Piece& p) {
    for (const int s : S) {
      if (!q.set_for(s).include_inf) return false;
    }
    if (t.sig.has_unary_fn) {
      if (!axiom_implies(p.tag, q.tag)) return false;
      if (sset.count(0)) {
        if (!tag_feasible_at_inf(q.tag)) return false;
      } else if (!monotone_tag(q.tag)) {
        return false;
      }
    }
    for (int s = 0; s < ns; ++s) {
      if (sset.count(s)) continue;
      const CardSet& ps = p.set_for(s);
      const CardSet& qs = q.set_for(s);
      if (set_unbounded(ps, t.oracles)) {
        if (!set_unbounded(qs, t.oracles)) return false;
      } else if (!set_unbounded(qs, t.oracles)) {
        const auto psup = cardset_finite_sup(ps, t.oracles);
        const auto qsup = cardset_finite_sup(qs, t.oracles);
        if (!psup || !qsup || *qsup < *psup) return false;
      }
    }
    return true;
  };

  std::optional<std::size_t> undominated;
  for (std::size_t i = 0; i < t.spectrum.pieces.size() && !undominated; ++i) {
    const Piece& p = t.spectrum.pieces[i];
    const bool ok = std::any_of(
        t.spectrum.pieces.begin(), t.spectrum.pieces.end(),
        [&](const Piece& q) { return dominator(q, p); });
    if (!ok) undominated = i;
  }
  if (!undominated) {
    r.verdict = Verdict::Proved;
    r.exact = true;
    r.detail =
        "every admissible demand is dominated by a spectrum point infinite at "
        "every requested sort";
    return r;
  }
  if (!t.sig.has_unary_fn) {
    r.verdict = Verdict::Refuted;
    r.exact = true;
    const int s0 = S.front();
    r.detail = "satisfiable " +
               quoted(t, Formula::eq(Term{Var{"x", s0}, 0},
                                     Term{Var{"x", s0}, 0})) +
               " admits a model through piece " +
               std::to_string(*undominated + 1) +
               " that no all-infinite spectrum point dominates";
    return r;
  }

  // With the function symbol an undominated piece is not yet a
  // counterexample: its models might satisfy a stronger constraint and grow
  // through another piece.  Probe for a formula that is satisfiable but
  // certainly has no model infinite at every requested sort.
  bool pending = false;
  for (const Formula& phi : corpus_formulas(t.sig)) {
    try {
      if (minmod(t, all_sorts_of(t), phi).empty()) continue;
    } catch (const OracleExhausted&) {
      pending = true;
      continue;
    }
    if (!has_infinite_model(t, S, phi)) {
      r.verdict = Verdict::Refuted;
      r.exact = true;
      r.detail = "satisfiable " + quoted(t, phi) +
                 " has no model infinite at every requested sort";
      return r;
    }
  }
  r.verdict = Verdict::Unknown;
  r.detail =
      "some admissible demand lacks an all-infinite dominating point, and no "
      "probe found a certain finite-only counterexample" +
      std::string(pending ? " (parts of the search hit a stored prefix)" : "");
  return r;
}

PropertyResult check_sm(const TheoryDef& t, const std::vector<int>& S,
                        std::uint64_t bound) {
  PropertyResult r;
  const std::uint64_t B = scan_ceiling(t, bound);

  // Status of every S-projection over the scan grid.
  std::vector<CardTuple> grid;
  {
    CardTuple d(S.size(), ExtNat(1));
    std::vector<std::uint64_t> idx(S.size(), 0);  // 0..B-1 finite, B = Inf
    for (;;) {
      for (std::size_t i = 0; i < S.size(); ++i) {
        d[i] = idx[i] < B ? ExtNat(idx[i] + 1) : ExtNat::inf();
      }
      grid.push_back(d);
      std::size_t i = S.size();
      bool adv = false;
      while (i > 0) {
        --i;
        if (idx[i] < B) {
          ++idx[i];
          std::fill(idx.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                    idx.end(), 0);
          adv = true;
          break;
        }
      }
      if (!adv) break;
    }
  }
  std::map<CardTuple, Member> status;
  for (const auto& d : grid) status[d] = proj_status(t, S, d, B);

  std::vector<const CardTuple*> in_points;
  for (const auto& [d, st] : status) {
    if (st == Member::In) in_points.push_back(&d);
  }
  const CardTuple* bounded_gap = nullptr;
  const CardTuple* bounded_base = nullptr;
  for (const auto& [d, st] : status) {
    if (st == Member::In) continue;
    const CardTuple* base = nullptr;
    for (const CardTuple* p : in_points) {
      if (dominates(d, *p)) {
        base = p;
        break;
      }
    }
    if (!base) continue;
    if (st == Member::Out) {
      r.verdict = Verdict::Refuted;
      r.exact = true;
      r.detail = "models exist at " + to_string(*base) + " but none at " +
                 to_string(d);
      return r;
    }
    if (!bounded_gap) {
      bounded_gap = &d;
      bounded_base = base;
    }
  }
  if (bounded_gap) {
    r.verdict = Verdict::Refuted;
    r.exact = false;
    r.detail = "models exist at " + to_string(*bounded_base) + " but " +
               to_string(*bounded_gap) +
               " is not a member within the stored prefix";
    return r;
  }
  if (t.sig.has_unary_fn) {
    // A gap-free size scan proves the property only if every model grows in
    // place: all pieces must share one function constraint that extends
    // elementwise to larger sizes.  Otherwise growth could force re-shaping
    // the function, which the size scan cannot see.
    const ShapeTag lead = t.spectrum.pieces.front().tag;
    const bool uniform = std::all_of(
        t.spectrum.pieces.begin(), t.spectrum.pieces.end(),
        [&](const Piece& p) { return p.tag == lead; });
    if (!uniform || !monotone_tag(lead)) {
      r.verdict = Verdict::Unknown;
      r.detail =
          "realized sizes look upward closed through " + std::to_string(B) +
          ", but the function constraints do not support the elementwise "
          "growth argument";
      return r;
    }
  }
  r.verdict = Verdict::Proved;
  r.exact = true;
  r.detail = "realized sizes are upward closed through " + std::to_string(B) +
             " and infinity; the sets are uniform beyond";
  return r;
}

PropertyResult check_fm_sf(const TheoryDef& t, const std::vector<int>& S,
                           bool sf_mode) {
  PropertyResult r;
  bool any_inf = false;
  for (const Piece& p : t.spectrum.pieces) {
    for (const int s : all_sorts_of(t)) {
      any_inf = any_inf || p.set_for(s).include_inf;
    }
  }
  if (!any_inf) {
    r.verdict = Verdict::Proved;
    r.exact = true;
    r.detail = "no size set admits infinite models";
    return r;
  }
  const bool all_cofinal = std::all_of(
      t.spectrum.pieces.begin(), t.spectrum.pieces.end(), [&](const Piece& p) {
        return std::all_of(S.begin(), S.end(), [&](int s) {
          return cardset_finite_cofinal(p.set_for(s), t.oracles);
        });
      });
  if (all_cofinal) {
    r.verdict = Verdict::Proved;
    r.exact = true;
    r.detail =
        "every size set has arbitrarily large finite members at the requested "
        "sorts, so minimal covers stay finite";
    return r;
  }

  auto probes = corpus_formulas(t.sig);
  const auto extra = distinct_probes(t, S, 8);
  probes.insert(probes.end(), extra.begin(), extra.end());
  std::optional<std::string> pending;
  std::uint64_t cap_reached = 0;
  bool walk_complete = true;
  for (const int s : S) {
    const std::uint64_t cap = probe_cap(t, s, 8);
    cap_reached = std::max(cap_reached, cap);
    if (cap < sort_landmark(t, s) + 1) walk_complete = false;
  }
  for (const Formula& phi : probes) {
    std::vector<CardTuple> tuples;
    try {
      tuples = minmod(t, S, phi);
    } catch (const OracleExhausted& e) {
      if (!pending) pending = std::string(e.what());
      continue;
    }
    if (tuples.empty()) continue;
    const auto has_inf = [](const CardTuple& tu) {
      return std::any_of(tu.begin(), tu.end(),
                         [](const ExtNat& x) { return x.is_inf(); });
    };
    const bool bad =
        sf_mode ? std::any_of(tuples.begin(), tuples.end(), has_inf)
                : std::all_of(tuples.begin(), tuples.end(), has_inf);
    if (bad) {
      r.verdict = Verdict::Refuted;
      r.exact = true;
      r.detail = "minimal models of " + quoted(t, phi) + " are " +
                 to_string(tuples);
      return r;
    }
  }
  if (pending) {
    r.verdict = Verdict::Unknown;
    r.detail = *pending;
    return r;
  }
  r.verdict = Verdict::Proved;
  // The probes walk demands past every landmark, beyond which the sets are
  // uniform; the claim is exact unless the probe cap cut that walk short.
  r.exact = walk_complete;
  r.detail = sf_mode ? "no minimal model tuple with an infinite coordinate "
                       "up to demand " +
                           std::to_string(cap_reached)
                     : "every satisfiable probe keeps an all-finite minimal "
                       "tuple up to demand " +
                           std::to_string(cap_reached);
  return r;
}

PropertyResult check_cv(const TheoryDef& t, const std::vector<int>& S,
                        std::uint64_t bound) {
  PropertyResult r;
  const int ns = static_cast<int>(t.sig.sorts.size());
  if (!t.sig.has_unary_fn) {
    // Padding rule: one piece with arbitrarily large models in every sort
    // makes the finest satisfying arrangement realizable, and it falsifies
    // every non-entailed disjunct at once.
    for (std::size_t i = 0; i < t.spectrum.pieces.size(); ++i) {
      const Piece& p = t.spectrum.pieces[i];
      bool all_unb = true;
      for (int s = 0; s < ns && all_unb; ++s) {
        all_unb = set_unbounded(p.set_for(s), t.oracles);
      }
      if (all_unb) {
        r.verdict = Verdict::Proved;
        r.exact = true;
        r.detail = "piece " + std::to_string(i + 1) +
                   " admits arbitrarily large models in every sort; the "
                   "finest satisfying arrangement falsifies all non-entailed "
                   "disjuncts together";
        return r;
      }
    }
    // One-element rule: sorts pinned to a single element make every equality
    // over them valid.
    {
      bool all_one = true;
      for (const int s : S) {
        for (const Piece& p : t.spectrum.pieces) {
          const CardSet& cs = p.set_for(s);
          if (set_unbounded(cs, t.oracles)) {
            all_one = false;
            break;
          }
          const auto sup = cardset_finite_sup(cs, t.oracles);
          if (!sup || *sup > 1) {
            all_one = false;
            break;
          }
        }
        if (!all_one) break;
      }
      if (all_one) {
        r.verdict = Verdict::Proved;
        r.exact = true;
        r.detail =
            "every model is one-element at the requested sorts, so every "
            "disjunct of an entailed disjunction is itself entailed";
        return r;
      }
    }
    // Pigeonhole rule: a sort bounded at M >= 2 makes the all-pairs
    // disjunction over M+1 variables valid with no valid disjunct.
    for (const int s : S) {
      bool bounded_sort = true;
      std::uint64_t M = 0;
      for (const Piece& p : t.spectrum.pieces) {
        const CardSet& cs = p.set_for(s);
        if (set_unbounded(cs, t.oracles)) {
          bounded_sort = false;
          break;
        }
        const auto sup = cardset_finite_sup(cs, t.oracles);
        if (!sup) {
          bounded_sort = false;
          break;
        }
        M = std::max(M, *sup);
      }
      if (!bounded_sort || M < 2) continue;
      CardTuple demand(static_cast<std::size_t>(ns), ExtNat(1));
      demand[static_cast<std::size_t>(s)] = ExtNat(2);
      const bool two_realizable = std::any_of(
          t.spectrum.pieces.begin(), t.spectrum.pieces.end(),
          [&](const Piece& p) {
            return piece_cover(p, demand, t.oracles).has_value();
          });
      if (!two_realizable) continue;
      const Formula probe = distinct_vars(s, M + 1);
      std::vector<std::string> eqs;
      const auto vars = collect_vars(probe);
      for (std::size_t a = 0; a < vars.size(); ++a) {
        for (std::size_t b = a + 1; b < vars.size(); ++b) {
          eqs.push_back(to_string(
              Formula::eq(Term{vars[a], 0}, Term{vars[b], 0}), t.sig));
        }
      }
      std::string disj;
      for (std::size_t k = 0; k < eqs.size(); ++k) {
        disj += (k ? " | " : "") + eqs[k];
      }
      r.verdict = Verdict::Refuted;
      r.exact = true;
      r.detail = "the disjunction " + disj +
                 " is valid (at most " + std::to_string(M) + " elements at " +
                 t.sig.sorts[static_cast<std::size_t>(s)] +
                 "), yet each disjunct alone has a two-element countermodel";
      return r;
    }
    r.verdict = Verdict::Unknown;
    r.detail = "no decision rule applies to this mix of size sets";
    return r;
  }

  // With the function symbol: bounded counterexample search through the
  // reference entailment check.
  const Term x{Var{"x", 0}, 0}, y{Var{"y", 0}, 0}, z{Var{"z", 0}, 0};
  const std::vector<Formula> cubes{
      Formula::truth(),
      Formula::eq(Term{Var{"x", 0}, 1}, y),
      Formula::conj({Formula::eq(Term{Var{"x", 0}, 1}, y),
                     Formula::eq(Term{Var{"y", 0}, 1}, z)}),
      Formula::conj({Formula::neq(x, y), Formula::neq(y, z)}),
      Formula::conj({Formula::eq(Term{Var{"x", 0}, 2}, y),
                     Formula::eq(Term{Var{"y", 0}, 2}, z)}),
  };
  const std::vector<Formula> disjuncts{Formula::eq(x, y), Formula::eq(y, z),
                                       Formula::eq(x, z)};
  for (const Formula& cube : cubes) {
    OracleBudget budget = OracleBudget::from_env();
    EntailResult all;
    try {
      all = oracle_entails(t, cube, disjuncts, bound, &budget);
    } catch (const BudgetExceeded&) {
      continue;
    } catch (const OracleExhausted&) {
      continue;
    }
    if (all.verdict != Verdict::Proved) continue;
    bool every_refuted = true;
    for (const Formula& d : disjuncts) {
      OracleBudget b2 = OracleBudget::from_env();
      EntailResult one;
      try {
        one = oracle_entails(t, cube, {d}, bound, &b2);
      } catch (const BudgetExceeded&) {
        every_refuted = false;
        break;
      } catch (const OracleExhausted&) {
        every_refuted = false;
        break;
      }
      if (one.verdict != Verdict::Refuted) {
        every_refuted = false;
        break;
      }
    }
    if (every_refuted) {
      r.verdict = Verdict::Refuted;
      r.exact = true;
      r.detail = "cube " + quoted(t, cube) +
                 " entails the pairwise disjunction over x,y,z but no single "
                 "disjunct";
      return r;
    }
  }
  r.verdict = Verdict::Unknown;
  r.detail = "no counterexample found at bound " + std::to_string(bound);
  return r;
}

PropertyResult check_cf(const TheoryDef& t) {
  PropertyResult r;
  for (const Piece& p : t.spectrum.pieces) {
    for (const int s : all_sorts_of(t)) {
      const CardSet& cs = p.set_for(s);
      if (cs.kind != CardSetKind::Seq) continue;
      const auto& o = t.oracles.at(cs.oracle);
      if (!o.computable() && cs.tail_unbounded) {
        r.verdict = Verdict::Unknown;
        r.exact = false;
        r.detail = "minimal model sizes depend on sequence \"" + cs.oracle +
                   "\" beyond its stored prefix";
        return r;
      }
    }
  }
  r.verdict = Verdict::Proved;
  r.exact = true;
  r.detail = "every size set is decidable by a closed rule";
  return r;
}

PropertyResult check_fw(const TheoryDef& t, std::uint64_t bound) {
  PropertyResult r;
  const auto sorts = all_sorts_of(t);
  auto probes = corpus_formulas(t.sig);
  {
    const auto extra = distinct_probes(t, sorts, 10);
    probes.insert(probes.end(), extra.begin(), extra.end());
  }

  // Phase 1: a fully named model is finite, so a satisfiable formula with no
  // finite model has no witness at all, and a witness size the size sequences
  // cannot resolve leaves the construction stuck.
  std::vector<std::vector<CardTuple>> stored(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Formula& phi = probes[i];
    try {
      stored[i] = minmod(t, sorts, phi);
    } catch (const OracleExhausted& e) {
      r.verdict = Verdict::Refuted;
      r.exact = false;
      r.detail = "the witness size for " + quoted(t, phi) +
                 " is out of reach: " + std::string(e.what());
      return r;
    }
    if (stored[i].empty()) continue;
    const bool finite_tuple = std::any_of(
        stored[i].begin(), stored[i].end(), [](const CardTuple& tu) {
          return std::all_of(tu.begin(), tu.end(),
                             [](const ExtNat& x) { return x.is_finite(); });
        });
    if (!finite_tuple) {
      r.verdict = Verdict::Refuted;
      r.exact = true;
      r.detail = "satisfiable " + quoted(t, phi) +
                 " has no finite model, so no model can be fully named";
      return r;
    }
  }

  // The probe walk stops at the per-sort cap; a stored prefix keeps its edge
  // beyond that.  Size-derived witnesses hit the edge at the first demand
  // past the prefix, so report it without building the probe.
  if (t.witness_rule.kind == WitnessRule::Kind::Minmod) {
    for (const Piece& p : t.spectrum.pieces) {
      for (const int s : sorts) {
        const CardSet& cs = p.set_for(s);
        if (cs.kind != CardSetKind::Seq || cs.prefix_len == 0) continue;
        const auto& o = t.oracles.at(cs.oracle);
        if (o.computable() || !cs.tail_unbounded) continue;
        const std::uint64_t edge = o.stored_values()[cs.prefix_len - 1] + 1;
        if (edge <= probe_cap(t, s, 10)) continue;  // the walk exercised it
        r.verdict = Verdict::Refuted;
        r.exact = false;
        r.detail = "the witness size for " +
                   quoted(t, distinct_vars(s, edge)) + " needs sequence \"" +
                   cs.oracle + "\" beyond its stored prefix";
        return r;
      }
    }
  }

  // Phase 2: build each witness and validate it against the enumerator.
  // Probes whose least all-finite model lies past the bound are skipped (the
  // enumerator cannot reach their naming model), as are probes whose witness
  // would blow up the enumeration.
  std::optional<std::string> pending;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (stored[i].empty()) continue;  // unsatisfiable: the witness is phi itself
    const Formula& phi = probes[i];
    const CardTuple* pick = nullptr;
    for (const auto& tu : stored[i]) {
      if (std::all_of(tu.begin(), tu.end(),
                      [](const ExtNat& x) { return x.is_finite(); })) {
        pick = &tu;
        break;
      }
    }
    const bool within_bound =
        std::all_of(pick->begin(), pick->end(),
                    [&](const ExtNat& x) { return x.finite() <= bound; });
    if (!within_bound) continue;
    std::uint64_t fresh = 0;
    if (t.witness_rule.kind == WitnessRule::Kind::Minmod) {
      for (const ExtNat& x : *pick) fresh += x.finite();
    } else {
      const std::uint64_t nvars =
          std::max<std::uint64_t>(1, collect_vars(phi).size());
      std::uint64_t rung = std::max<std::uint64_t>(1, t.witness_rule.first);
      while (rung < nvars) rung *= 2;
      fresh = rung;
    }
    if (collect_vars(phi).size() + fresh > 11) continue;  // enumeration cost cap
    Formula wit;
    try {
      wit = build_witness(t, phi);
    } catch (const WitnessUnavailable& e) {
      r.verdict = Verdict::Refuted;
      r.exact = true;
      r.detail = std::string(e.what());
      return r;
    } catch (const OracleExhausted& e) {
      r.verdict = Verdict::Refuted;
      r.exact = false;
      r.detail = "witness construction for " + quoted(t, phi) +
                 " needs a sequence beyond its stored prefix: " + e.what();
      return r;
    }
    WitnessReport rep;
    try {
      rep = validate_witness(t, wit, phi, bound, false);
    } catch (const BudgetExceeded&) {
      if (!pending) {
        pending = "validation budget exhausted for " + quoted(t, phi);
      }
      continue;
    }
    if (rep.verdict == Verdict::Refuted && !rep.bounded) {
      r.verdict = Verdict::Refuted;
      r.exact = true;
      r.detail = "witness for " + quoted(t, phi) + " fails: " + rep.detail;
      return r;
    }
    if (rep.verdict != Verdict::Proved && !pending) {
      pending =
          "validation undecided for " + quoted(t, phi) + ": " + rep.detail;
    }
    ++checked;
  }
  if (pending) {
    r.verdict = Verdict::Unknown;
    r.detail = *pending;
    return r;
  }
  r.verdict = Verdict::Proved;
  // Exact only when the bound exhausts the whole spectrum; otherwise larger
  // formulas could still misbehave.
  bool exhausted = true;
  for (const Piece& p : t.spectrum.pieces) {
    for (const int s : sorts) {
      const CardSet& cs = p.set_for(s);
      if (cs.include_inf) {
        exhausted = false;
        break;
      }
      const auto sup = cardset_finite_sup(cs, t.oracles);
      if (!sup || *sup > bound) {
        exhausted = false;
        break;
      }
    }
    if (!exhausted) break;
  }
  r.exact = exhausted;
  r.detail = "constructed witnesses validate on " + std::to_string(checked) +
             " formulas at bound " + std::to_string(bound);
  return r;
}

PropertyResult check_sw(const TheoryDef& t, const std::vector<int>& S,
                        std::uint64_t bound) {
  PropertyResult r;
  const int ns = static_cast<int>(t.sig.sorts.size());
  const std::set<int> sset(S.begin(), S.end());

  // A requested sort no finite model ever interprets sinks the property
  // outright: witnesses are finite.
  for (const int s : S) {
    std::optional<std::uint64_t> least;
    bool prefix_short = false;
    for (const Piece& p : t.spectrum.pieces) {
      try {
        const auto q = cardset_min_geq(p.set_for(s), ExtNat(1), t.oracles);
        if (q && q->is_finite()) {
          least = least ? std::min(*least, q->finite()) : q->finite();
        }
      } catch (const OracleExhausted&) {
        prefix_short = true;
      }
    }
    if (!least && prefix_short) {
      r.verdict = Verdict::Unknown;
      r.detail = "the least finite size at sort " +
                 t.sig.sorts[static_cast<std::size_t>(s)] +
                 " lies beyond a stored sequence prefix";
      return r;
    }
    if (!least) {
      r.verdict = Verdict::Refuted;
      r.exact = true;
      r.detail = "no finite model interprets sort " +
                 t.sig.sorts[static_cast<std::size_t>(s)] +
                 ", so no arrangement is ever fully named there";
      return r;
    }
  }

  // The property asks for one padding level c: every variable arrangement,
  // padded to at least c distinct values per requested sort, must keep a
  // model of exactly its class counts.  That holds iff some c satisfies
  //   (A) every hostable count tuple k >= c is exactly realized, and
  //   (B) padding a hostable tuple up to c never leaves the spectrum.
  // Candidates range over [1..G], count tuples over [1..K]; K overshoots G so
  // gaps just past a candidate stay visible.
  std::vector<std::uint64_t> G(S.size()), K(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    G[i] = std::max<std::uint64_t>(bound, sort_landmark(t, S[i]) + 2);
    K[i] = G[i] + 2;
  }

  enum class Tri { No, Maybe, Yes };
  const auto bump = [](Tri& state) {
    if (state == Tri::Yes) state = Tri::Maybe;
  };

  // Some model has at least k[i] distinct elements at each requested sort.
  std::map<std::vector<std::uint64_t>, Tri> host_cache;
  const auto host_at = [&](const std::vector<std::uint64_t>& k) {
    const auto it = host_cache.find(k);
    if (it != host_cache.end()) return it->second;
    Tri best = Tri::No;
    for (const Piece& p : t.spectrum.pieces) {
      Tri mine = Tri::Yes;
      for (std::size_t i = 0; i < S.size() && mine != Tri::No; ++i) {
        const CardSet& cs = p.set_for(S[i]);
        if (S[i] == 0 && p.tag.kind != TagKind::None) {
          try {
            if (!least_feasible_size(cs, p.tag, ChainFootprint{},
                                     ExtNat(k[i]), t.oracles)
                     .has_value()) {
              mine = Tri::No;
            }
          } catch (const OracleExhausted&) {
            // Members keep coming beyond an unbounded tail; only a parity
            // constraint could keep them all infeasible.
            if (!feasible_cofinite(p.tag)) bump(mine);
          }
        } else {
          try {
            if (!cardset_min_geq(cs, ExtNat(k[i]), t.oracles).has_value()) {
              mine = Tri::No;
            }
          } catch (const OracleExhausted&) {
            // Unbounded unknown tail: large members exist.
          }
        }
      }
      for (int s = 0; s < ns && mine != Tri::No; ++s) {
        if (sset.count(s)) continue;
        if (p.sort_is_tied(s) &&
            std::any_of(p.diagonal_sorts.begin(), p.diagonal_sorts.end(),
                        [&](int ds) { return sset.count(ds) > 0; })) {
          continue;  // tied to a requested sort, handled there
        }
        if (!exists_geq(p.set_for(s), ExtNat(1), t.oracles)) mine = Tri::No;
      }
      if (mine == Tri::Yes) {
        best = Tri::Yes;
        break;
      }
      if (mine == Tri::Maybe) best = Tri::Maybe;
    }
    host_cache[k] = best;
    return best;
  };

  // Some model has exactly k[i] elements at each requested sort.
  std::map<std::vector<std::uint64_t>, Tri> exact_cache;
  const auto exact_at = [&](const std::vector<std::uint64_t>& k) {
    const auto it = exact_cache.find(k);
    if (it != exact_cache.end()) return it->second;
    Tri best = Tri::No;
    for (const Piece& p : t.spectrum.pieces) {
      if (p.trivial_model &&
          std::all_of(k.begin(), k.end(),
                      [](std::uint64_t v) { return v == 1; })) {
        best = Tri::Yes;
        break;
      }
      Tri mine = Tri::Yes;
      if (p.is_diagonal()) {
        std::optional<std::uint64_t> tied_value;
        for (std::size_t i = 0; i < S.size(); ++i) {
          if (!p.sort_is_tied(S[i])) continue;
          if (tied_value && *tied_value != k[i]) {
            mine = Tri::No;
            break;
          }
          tied_value = k[i];
        }
      }
      for (std::size_t i = 0; i < S.size() && mine != Tri::No; ++i) {
        try {
          if (!cardset_contains(p.set_for(S[i]), ExtNat(k[i]), t.oracles)) {
            mine = Tri::No;
          }
        } catch (const OracleExhausted&) {
          bump(mine);
        }
      }
      if (mine != Tri::No && p.tag.kind != TagKind::None) {
        if (sset.count(0)) {
          const std::size_t i0 = static_cast<std::size_t>(
              std::find(S.begin(), S.end(), 0) - S.begin());
          if (!feasible_extension(p.tag, ChainFootprint{}, ExtNat(k[i0]))) {
            mine = Tri::No;
          }
        } else {
          try {
            if (!least_feasible_size(p.set_for(0), p.tag, ChainFootprint{},
                                     ExtNat(1), t.oracles)
                     .has_value()) {
              mine = Tri::No;
            }
          } catch (const OracleExhausted&) {
            bump(mine);
          }
        }
      }
      for (int s = 0; s < ns && mine != Tri::No; ++s) {
        if (sset.count(s)) continue;
        if (p.sort_is_tied(s) &&
            std::any_of(p.diagonal_sorts.begin(), p.diagonal_sorts.end(),
                        [&](int ds) { return sset.count(ds) > 0; })) {
          continue;
        }
        if (!exists_geq(p.set_for(s), ExtNat(1), t.oracles)) mine = Tri::No;
      }
      if (mine == Tri::Yes) {
        best = Tri::Yes;
        break;
      }
      if (mine == Tri::Maybe) best = Tri::Maybe;
    }
    exact_cache[k] = best;
    return best;
  };

  // Odometer over [lo..hi] per coordinate, ascending lexicographically.
  const auto for_each_tuple = [&](const std::vector<std::uint64_t>& lo,
                                  const std::vector<std::uint64_t>& hi,
                                  const auto& fn) {
    std::vector<std::uint64_t> k = lo;
    for (;;) {
      if (!fn(k)) return;
      std::size_t i = k.size();
      bool adv = false;
      while (i > 0) {
        --i;
        if (k[i] < hi[i]) {
          ++k[i];
          for (std::size_t j = i + 1; j < k.size(); ++j) k[j] = lo[j];
          adv = true;
          break;
        }
      }
      if (!adv) return;
    }
  };
  const std::vector<std::uint64_t> ones(S.size(), 1);

  // Whole-grid sweep: the first certain gap and any opacity.
  std::optional<std::vector<std::uint64_t>> first_gap;
  bool any_opacity = false;
  for_each_tuple(ones, K, [&](const std::vector<std::uint64_t>& k) {
    const Tri h = host_at(k);
    const Tri e = exact_at(k);
    if (h == Tri::Maybe || e == Tri::Maybe) any_opacity = true;
    if (h == Tri::Yes && e == Tri::No && !first_gap) first_gap = k;
    return true;
  });

  // Candidate sweep.
  enum class Cand { Clean, Soft, Bad };
  std::optional<std::vector<std::uint64_t>> clean_c;
  bool all_bad = true;
  std::vector<std::uint64_t> last_bad_witness;
  bool last_bad_is_drop = false;  // a (B) violation rather than an (A) gap
  std::vector<std::uint64_t> last_bad_from;
  for_each_tuple(ones, G, [&](const std::vector<std::uint64_t>& c) {
    Cand state = Cand::Clean;
    for_each_tuple(c, K, [&](const std::vector<std::uint64_t>& k) {
      const Tri h = host_at(k);
      const Tri e = exact_at(k);
      if (h == Tri::Yes && e == Tri::No) {
        state = Cand::Bad;
        last_bad_witness = k;
        last_bad_is_drop = false;
        return false;
      }
      if ((h == Tri::Yes && e == Tri::Maybe) ||
          (h == Tri::Maybe && e != Tri::Yes)) {
        state = Cand::Soft;
      }
      return true;
    });
    if (state != Cand::Bad) {
      for_each_tuple(ones, K, [&](const std::vector<std::uint64_t>& p) {
        const Tri hp = host_at(p);
        if (hp == Tri::No) return true;
        std::vector<std::uint64_t> up(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
          up[i] = std::max(p[i], c[i]);
        }
        const Tri hq = host_at(up);
        if (hp == Tri::Yes && hq == Tri::No) {
          state = Cand::Bad;
          last_bad_witness = up;
          last_bad_is_drop = true;
          last_bad_from = p;
          return false;
        }
        if (hq == Tri::Maybe || hp == Tri::Maybe) state = Cand::Soft;
        return true;
      });
    }
    if (state != Cand::Bad) all_bad = false;
    if (state == Cand::Clean && !clean_c) {
      clean_c = c;
      return false;
    }
    return true;
  });

  const auto tuple_str = [](const std::vector<std::uint64_t>& k) {
    CardTuple tu;
    tu.reserve(k.size());
    for (const std::uint64_t v : k) tu.push_back(ExtNat(v));
    return to_string(tu);
  };

  if (clean_c) {
    if (!t.sig.has_unary_fn) {
      r.verdict = Verdict::Proved;
      r.exact = true;
      r.detail = "padding every arrangement to class counts " +
                 tuple_str(*clean_c) +
                 " lands on exactly realized sizes, and padding never leaves "
                 "the spectrum";
      return r;
    }
    r.verdict = Verdict::Unknown;
    r.detail = "class counts align from " + tuple_str(*clean_c) +
               " up, but arrangements constrained by the function symbol are "
               "not covered by the count analysis";
    return r;
  }
  if (all_bad) {
    r.verdict = Verdict::Refuted;
    r.exact = !any_opacity;
    r.detail = "every padding level through " + tuple_str(G) + " leaves a gap";
    if (last_bad_is_drop) {
      r.detail += ": padding class counts " + tuple_str(last_bad_from) +
                  " up to " + tuple_str(last_bad_witness) +
                  " leaves the spectrum";
    } else {
      r.detail += ": class counts " + tuple_str(last_bad_witness) +
                  " admit larger models but never exactly that size";
    }
    if (any_opacity) {
      r.detail += "; levels beyond depend on sequence values outside the "
                  "stored prefix";
    }
    return r;
  }
  if (first_gap) {
    r.verdict = Verdict::Refuted;
    r.exact = false;
    r.detail = "within the stored prefix every certifiable padding level "
               "leaves a gap (class counts " +
               tuple_str(*first_gap) +
               " admit larger models but never exactly that size); larger "
               "levels depend on unknown sequence values";
    return r;
  }
  r.verdict = Verdict::Unknown;
  r.detail = "exact realization beyond the stored prefix is undecided, and "
             "no certain gap appears at any padding level";
  return r;
}

}  // namespace

PropertyResult check_property(const TheoryDef& theory, const std::string& prop,
                              const std::vector<int>& S_in,
                              std::uint64_t bound) {
  validate_theory(theory);
  std::vector<int> S = S_in;
  if (S.empty()) S = all_sorts_of(theory);
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  for (const int s : S) {
    if (s < 0 || s >= static_cast<int>(theory.sig.sorts.size())) {
      throw CatalogError("sort index " + std::to_string(s) +
                         " out of range for " + theory.name);
    }
  }
  std::string p;
  for (const char c : prop) p.push_back(static_cast<char>(std::toupper(c)));
  if (p == "SI") return check_si(theory, S);
  if (p == "SM") return check_sm(theory, S, bound);
  if (p == "FW") return check_fw(theory, bound);
  if (p == "SW") return check_sw(theory, S, bound);
  if (p == "CV") return check_cv(theory, S, bound);
  if (p == "FM") return check_fm_sf(theory, S, false);
  if (p == "SF") return check_fm_sf(theory, S, true);
  if (p == "CF") return check_cf(theory);
  throw CatalogError("unknown property \"" + prop + "\"");
}

TheoryProfile property_profile(const TheoryDef& theory, std::uint64_t bound) {
  TheoryProfile profile;
  for (const std::string& name : property_names()) {
    profile.rows[name] = check_property(theory, name, {}, bound);
  }
  profile.violations = impossibility_violations(theory.sig, profile.rows);
  return profile;
}

std::vector<std::string> impossibility_violations(
    const Signature& sig, const std::map<std::string, PropertyResult>& rows) {
  const auto verdict = [&](const std::string& k) {
    const auto it = rows.find(k);
    return it == rows.end() ? Verdict::Unknown : it->second.verdict;
  };
  const auto proved = [&](const std::string& k) {
    return verdict(k) == Verdict::Proved;
  };
  const auto refuted = [&](const std::string& k) {
    return verdict(k) == Verdict::Refuted;
  };
  std::vector<std::string> out;
  const bool empty_sig = !sig.has_unary_fn;
  const std::size_t ns = sig.sorts.size();
  if (empty_sig && proved("SM") && refuted("CF")) {
    out.push_back(
        "SM holds but CF fails on an empty signature (SM forces computable "
        "minimal sizes there)");
  }
  if (empty_sig && ns == 1 && refuted("FM") && refuted("CF")) {
    out.push_back(
        "FM and CF both fail one-sorted function-free (one of them must "
        "hold)");
  }
  if (proved("CF") && proved("FM") && refuted("FW")) {
    out.push_back("CF and FM hold but FW fails (their combination yields "
                  "witnesses)");
  }
  if (empty_sig && ns == 2 && proved("CV") && refuted("SI") && refuted("FM") &&
      refuted("CF")) {
    out.push_back(
        "CV holds with SI, FM, and CF all failing two-sorted function-free "
        "(impossible combination)");
  }
  return out;
}

}  // namespace tcw
