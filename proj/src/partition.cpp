// tcw — theory-combination workbench

#include "tcw/partition.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tcw {

int Partition::num_blocks() const {
  int n = 0;
  for (int b : block_of) n = std::max(n, b + 1);
  return n;
}

std::vector<std::vector<std::size_t>> Partition::blocks() const {
  std::vector<std::vector<std::size_t>> out(num_blocks());
  for (std::size_t i = 0; i < block_of.size(); ++i) {
    out[block_of[i]].push_back(i);
  }
  return out;
}

std::vector<std::uint64_t> Partition::per_sort_block_counts(std::size_t num_sorts) const {
  std::vector<std::uint64_t> counts(num_sorts, 0);
  std::vector<bool> seen(num_blocks(), false);
  for (std::size_t i = 0; i < block_of.size(); ++i) {
    if (!seen[block_of[i]]) {
      seen[block_of[i]] = true;
      if (universe[i].sort >= 0 && universe[i].sort < static_cast<int>(num_sorts)) {
        ++counts[universe[i].sort];
      }
    }
  }
  return counts;
}

std::string to_string(const Partition& e) {
  std::ostringstream os;
  os << '{';
  auto bs = e.blocks();
  for (std::size_t b = 0; b < bs.size(); ++b) {
    if (b > 0) os << ',';
    os << '{';
    for (std::size_t i = 0; i < bs[b].size(); ++i) {
      if (i > 0) os << ',';
      os << e.universe[bs[b][i]].name;
    }
    os << '}';
  }
  os << '}';
  return os.str();
}

// ------------------------------------------------------------- enumeration

namespace {

void enumerate_rec(const std::vector<Var>& universe, std::size_t idx,
                   std::vector<int>& block_of, std::vector<int>& block_sort,
                   std::vector<Partition>& out) {
  if (idx == universe.size()) {
    out.push_back(Partition{universe, block_of});
    return;
  }
  const int sort = universe[idx].sort;
  for (int b = 0; b < static_cast<int>(block_sort.size()); ++b) {
    if (block_sort[b] != sort) continue;
    block_of[idx] = b;
    enumerate_rec(universe, idx + 1, block_of, block_sort, out);
  }
  block_of[idx] = static_cast<int>(block_sort.size());
  block_sort.push_back(sort);
  enumerate_rec(universe, idx + 1, block_of, block_sort, out);
  block_sort.pop_back();
  block_of[idx] = -1;
}

}  // namespace

std::vector<Partition> enumerate_partitions(const std::vector<Var>& universe) {
  std::vector<Partition> out;
  std::vector<int> block_of(universe.size(), -1);
  std::vector<int> block_sort;
  enumerate_rec(universe, 0, block_of, block_sort, out);
  return out;
}

Formula arrangement_formula(const Partition& e) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < e.universe.size(); ++i) {
    for (std::size_t j = i + 1; j < e.universe.size(); ++j) {
      if (e.universe[i].sort != e.universe[j].sort) continue;
      Term a{e.universe[i], 0};
      Term b{e.universe[j], 0};
      lits.push_back(e.same_block(i, j) ? Formula::eq(a, b) : Formula::neq(a, b));
    }
  }
  return Formula::conj(std::move(lits));
}

// ------------------------------------------------------ formula evaluation

namespace {

enum class Tri { False, True, Unknown };

Tri eval_partial(const Formula& f, const std::vector<int>& block_of,
                 const std::map<std::string, std::size_t>& index_of) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Neq: {
      auto li = index_of.find(f.lhs().var.name);
      auto ri = index_of.find(f.rhs().var.name);
      if (li == index_of.end() || ri == index_of.end()) {
        throw std::invalid_argument("formula variable outside the partition universe");
      }
      int lb = block_of[li->second];
      int rb = block_of[ri->second];
      if (lb < 0 || rb < 0) return Tri::Unknown;
      bool eq = lb == rb;
      return (eq == (f.kind() == FormulaKind::Eq)) ? Tri::True : Tri::False;
    }
    case FormulaKind::And: {
      Tri acc = Tri::True;
      for (const auto& c : f.children()) {
        Tri t = eval_partial(c, block_of, index_of);
        if (t == Tri::False) return Tri::False;
        if (t == Tri::Unknown) acc = Tri::Unknown;
      }
      return acc;
    }
    case FormulaKind::Or: {
      Tri acc = Tri::False;
      for (const auto& c : f.children()) {
        Tri t = eval_partial(c, block_of, index_of);
        if (t == Tri::True) return Tri::True;
        if (t == Tri::Unknown) acc = Tri::Unknown;
      }
      return acc;
    }
    case FormulaKind::Not: {
      Tri t = eval_partial(f.children().front(), block_of, index_of);
      if (t == Tri::True) return Tri::False;
      if (t == Tri::False) return Tri::True;
      return Tri::Unknown;
    }
  }
  return Tri::Unknown;
}

std::map<std::string, std::size_t> build_index(const std::vector<Var>& universe) {
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < universe.size(); ++i) index_of[universe[i].name] = i;
  return index_of;
}

}  // namespace

bool partition_satisfies(const Formula& flat, const Partition& e) {
  auto index_of = build_index(e.universe);
  return eval_partial(flat, e.block_of, index_of) == Tri::True;
}

Partition induced_partition(const Interpretation& a, const std::vector<Var>& vars) {
  Partition e;
  e.universe = vars;
  e.block_of.assign(vars.size(), -1);
  std::map<std::pair<int, std::uint64_t>, int> block_of_value;
  int next = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::uint64_t v = a.eval_term(Term{vars[i], 0});
    auto key = std::make_pair(vars[i].sort, v);
    auto [it, fresh] = block_of_value.emplace(key, next);
    if (fresh) ++next;
    e.block_of[i] = it->second;
  }
  return e;
}

Partition project_partition(const Partition& e, const std::vector<Var>& subset) {
  auto index_of = build_index(e.universe);
  Partition out;
  out.universe = subset;
  out.block_of.assign(subset.size(), -1);
  std::map<int, int> renumber;
  int next = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    auto it = index_of.find(subset[i].name);
    if (it == index_of.end()) {
      throw std::invalid_argument("projection variable outside the partition universe");
    }
    int b = e.block_of[it->second];
    auto [rit, fresh] = renumber.emplace(b, next);
    if (fresh) ++next;
    out.block_of[i] = rit->second;
  }
  return out;
}

// --------------------------------------- constrained (admissible) partitions

namespace {

class AdmissibleEnumerator {
 public:
  AdmissibleEnumerator(const Formula& flat, const ShapeTag& tag,
                       const FlattenResult* origin)
      : d_flat(flat), d_tag(tag), d_origin(origin) {
    if (origin) {
      d_universe = origin->universe;
    } else {
      d_universe = collect_vars(flat);
    }
    d_index_of = build_index(d_universe);
    d_chain.assign(d_universe.size(), -1);
    d_pos.assign(d_universe.size(), -1);
    if (origin) {
      for (std::size_t i = 0; i < d_universe.size(); ++i) {
        auto it = origin->origin_of.find(d_universe[i].name);
        if (it != origin->origin_of.end()) {
          d_chain[i] = it->second.first;
          d_pos[i] = it->second.second;
        }
      }
      std::size_t base = 0;
      for (const auto& ch : origin->chains) {
        d_chain_start.push_back(base);
        base += ch.vars.size();
      }
    }
    d_block_of.assign(d_universe.size(), -1);
  }

  std::vector<AdmittedPartition> run(bool admit_trivial) {
    recurse(0);
    if (admit_trivial && tag_needs_nofixpoint(d_tag) && d_origin &&
        d_origin->has_chains()) {
      trivial_pass();
    }
    return std::move(d_results);
  }

 private:
  const Formula& d_flat;
  ShapeTag d_tag;
  const FlattenResult* d_origin;
  std::vector<Var> d_universe;
  std::map<std::string, std::size_t> d_index_of;
  std::vector<int> d_chain, d_pos;
  std::vector<std::size_t> d_chain_start;
  std::vector<int> d_block_of;
  std::vector<int> d_block_sort;
  std::vector<int> d_block_succ;  // block -> successor block, -1 unknown
  std::vector<AdmittedPartition> d_results;

  int chain_block(int chain, int pos) const {
    // Chain variables are laid out chain-major at the front of the universe
    // in position order.
    return d_block_of[d_chain_start[static_cast<std::size_t>(chain)] +
                      static_cast<std::size_t>(pos)];
  }

  // The tag-permitted blocks for chain position (c, j): nullopt = no
  // restriction; otherwise an explicit candidate list (possibly empty).
  // forbidden collects blocks the tag rules out (fixpoint freedom).
  void tag_constraints(int c, int j, std::vector<int>& must_be_one_of,
                       bool& restricted, std::vector<int>& forbidden) const {
    restricted = false;
    auto add_required = [&](int blk) {
      if (!restricted) {
        restricted = true;
        must_be_one_of.push_back(blk);
      } else {
        must_be_one_of.push_back(blk);
      }
    };
    switch (d_tag.kind) {
      case TagKind::None:
        break;
      case TagKind::Identity:
        if (j >= 1) {
          add_required(chain_block(c, j - 1));
        }
        break;
      case TagKind::NoFixpoint:
        if (j >= 1) forbidden.push_back(chain_block(c, j - 1));
        break;
      case TagKind::CycleEq:
        if (j >= d_tag.k) add_required(chain_block(c, j - d_tag.k));
        break;
      case TagKind::CycleOr:
        if (j >= 2 * d_tag.k) {
          add_required(chain_block(c, j - d_tag.k));
          must_be_one_of.push_back(chain_block(c, j - 2 * d_tag.k));
        }
        break;
      case TagKind::NoFixpointCycleEq:
        if (j >= 1) forbidden.push_back(chain_block(c, j - 1));
        if (j >= d_tag.k) add_required(chain_block(c, j - d_tag.k));
        break;
      case TagKind::NoFixpointCycleOr:
        if (j >= 1) forbidden.push_back(chain_block(c, j - 1));
        if (j >= 2 * d_tag.k) {
          add_required(chain_block(c, j - d_tag.k));
          must_be_one_of.push_back(chain_block(c, j - 2 * d_tag.k));
        }
        break;
    }
  }

  void try_assign(std::size_t idx, int blk, bool is_new) {
    const int sort = d_universe[idx].sort;
    if (is_new) {
      d_block_sort.push_back(sort);
      d_block_succ.push_back(-1);
    }
    d_block_of[idx] = blk;

    // Record the forced functional edge from the predecessor's block.
    int undo_succ_of = -1;
    if (d_chain[idx] >= 0 && d_pos[idx] >= 1) {
      int pb = chain_block(d_chain[idx], d_pos[idx] - 1);
      if (d_block_succ[pb] == -1) {
        d_block_succ[pb] = blk;
        undo_succ_of = pb;
      }
    }

    if (eval_partial(d_flat, d_block_of, d_index_of) != Tri::False) {
      recurse(idx + 1);
    }

    if (undo_succ_of >= 0) d_block_succ[undo_succ_of] = -1;
    d_block_of[idx] = -1;
    if (is_new) {
      d_block_sort.pop_back();
      d_block_succ.pop_back();
    }
  }

  void recurse(std::size_t idx) {
    if (idx == d_universe.size()) {
      emit(false);
      return;
    }
    const int sort = d_universe[idx].sort;
    const int c = d_chain[idx];
    const int j = d_pos[idx];

    // Functional forcing: the predecessor's block may already have a successor.
    int forced = -1;
    if (c >= 0 && j >= 1) {
      int pb = chain_block(c, j - 1);
      forced = d_block_succ[pb];
    }

    std::vector<int> required;
    std::vector<int> forbidden;
    bool restricted = false;
    if (c >= 0) tag_constraints(c, j, required, restricted, forbidden);

    auto allowed = [&](int blk) {
      if (restricted &&
          std::find(required.begin(), required.end(), blk) == required.end()) {
        return false;
      }
      return std::find(forbidden.begin(), forbidden.end(), blk) == forbidden.end();
    };

    if (forced >= 0) {
      if (allowed(forced)) try_assign(idx, forced, false);
      return;
    }
    for (int b = 0; b < static_cast<int>(d_block_sort.size()); ++b) {
      if (d_block_sort[b] != sort) continue;
      if (!allowed(b)) continue;
      try_assign(idx, b, false);
    }
    // A fresh block is never an option when the tag pins the position to
    // specific existing blocks.
    if (!restricted) {
      try_assign(idx, static_cast<int>(d_block_sort.size()), true);
    }
  }

  void trivial_pass() {
    // All chain variables into one block; other sorts enumerate freely.
    std::size_t n_chain = 0;
    for (const auto& ch : d_origin->chains) n_chain += ch.vars.size();
    if (n_chain == 0) return;
    for (std::size_t i = 0; i < n_chain; ++i) d_block_of[i] = 0;
    d_block_sort.push_back(0);
    d_block_succ.push_back(0);  // the merged block maps to itself
    if (eval_partial(d_flat, d_block_of, d_index_of) != Tri::False) {
      trivial_recurse(n_chain);
    }
    d_block_sort.pop_back();
    d_block_succ.pop_back();
    for (std::size_t i = 0; i < n_chain; ++i) d_block_of[i] = -1;
  }

  void trivial_recurse(std::size_t idx) {
    if (idx == d_universe.size()) {
      emit(true);
      return;
    }
    const int sort = d_universe[idx].sort;
    for (int b = 0; b < static_cast<int>(d_block_sort.size()); ++b) {
      if (d_block_sort[b] != sort) continue;
      d_block_of[idx] = b;
      if (eval_partial(d_flat, d_block_of, d_index_of) != Tri::False) {
        trivial_recurse(idx + 1);
      }
      d_block_of[idx] = -1;
    }
    d_block_of[idx] = static_cast<int>(d_block_sort.size());
    d_block_sort.push_back(sort);
    d_block_succ.push_back(-1);
    if (eval_partial(d_flat, d_block_of, d_index_of) != Tri::False) {
      trivial_recurse(idx + 1);
    }
    d_block_sort.pop_back();
    d_block_succ.pop_back();
    d_block_of[idx] = -1;
  }

  void emit(bool trivial) {
    AdmittedPartition out;
    out.partition.universe = d_universe;
    out.partition.block_of = d_block_of;
    out.footprint = footprint(trivial);
    d_results.push_back(std::move(out));
  }

  ChainFootprint footprint(bool trivial) const {
    ChainFootprint fp;
    fp.trivial_all_merged = trivial;
    const int nblocks = static_cast<int>(d_block_sort.size());
    for (int b = 0; b < nblocks; ++b) {
      if (d_block_sort[b] == 0) ++fp.blocks;
    }
    if (trivial) return fp;

    // Pair analysis on the successor graph over sort-0 blocks: close the
    // forced involution edges, then classify.
    std::vector<int> succ(d_block_succ.begin(), d_block_succ.end());
    std::vector<std::vector<int>> preds(nblocks);
    for (int b = 0; b < nblocks; ++b) {
      if (succ[b] >= 0) preds[succ[b]].push_back(b);
    }
    // Forced closure for involution-style tags: a block with a predecessor
    // but no successor must map back; two distinct predecessors clash.
    std::vector<int> eq_succ = succ;
    bool eq_bad = false;
    for (int b = 0; b < nblocks && !eq_bad; ++b) {
      if (d_block_sort[b] != 0) continue;
      if (preds[b].size() >= 2) {
        // Distinct predecessors force conflicting values of s on b under
        // s^2 = id.
        std::vector<int> uniq = preds[b];
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        if (uniq.size() >= 2) eq_bad = true;
      }
      if (eq_succ[b] == -1 && !preds[b].empty()) eq_succ[b] = preds[b].front();
    }
    std::uint64_t paired = 0;
    bool id_bad = false;
    for (int b = 0; b < nblocks; ++b) {
      if (d_block_sort[b] != 0) continue;
      if (succ[b] >= 0 && succ[b] != b) id_bad = true;
      if (eq_bad) continue;
      int t = eq_succ[b];
      if (t >= 0 && t != b) {
        if (eq_succ[t] == b) {
          ++paired;  // member of a two-cycle (counted once per member)
        } else if (eq_succ[t] != -1) {
          eq_bad = true;  // s^2 lands somewhere else: no involution extends
        } else {
          eq_bad = true;  // successor chain runs off with no return edge
        }
      }
    }
    fp.paired = eq_bad ? 0 : paired;
    fp.eq_irregular = eq_bad;
    fp.id_irregular = id_bad;
    return fp;
  }
};

}  // namespace

std::vector<AdmittedPartition> satisfying_partitions(const Formula& flat,
                                                     const ShapeTag& tag,
                                                     const FlattenResult* origin,
                                                     bool admit_trivial) {
  if (tag.requires_origin() && origin == nullptr) {
    throw std::invalid_argument("shape tag '" + to_string(tag) +
                                "' needs chain origin information");
  }
  AdmissibleEnumerator e(flat, tag, origin);
  return e.run(admit_trivial);
}

}  // namespace tcw
