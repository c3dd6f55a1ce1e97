// tcw — theory-combination workbench

#include "tcw/corpus.hpp"

#include <array>
#include <string>

namespace tcw {

namespace {

// Three variable names per sort; letters for the first few sorts, indexed
// fallbacks beyond.
std::vector<std::string> var_pool(int sort) {
  static const std::array<std::array<const char*, 3>, 3> kLetters{
      {{"x", "y", "z"}, {"u", "v", "w"}, {"p", "q", "r"}}};
  if (sort < static_cast<int>(kLetters.size())) {
    const auto& row = kLetters[static_cast<std::size_t>(sort)];
    return {row[0], row[1], row[2]};
  }
  const std::string base = "m" + std::to_string(sort + 1) + "_";
  return {base + "1", base + "2", base + "3"};
}

// All unordered term pairs as equalities then disequalities, pairs in lex
// order of (first index, second index).
std::vector<Formula> atom_pool(const std::vector<Term>& terms) {
  std::vector<Formula> eqs, neqs;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      eqs.push_back(Formula::eq(terms[i], terms[j]));
      neqs.push_back(Formula::neq(terms[i], terms[j]));
    }
  }
  eqs.insert(eqs.end(), neqs.begin(), neqs.end());
  return eqs;
}

// All k-subsets of atoms combined by `conj` (true) or `disj` (false).
void emit_combinations(const std::vector<Formula>& atoms, std::size_t k,
                       bool conj, std::vector<Formula>& out) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > atoms.size()) return;
  for (;;) {
    std::vector<Formula> chosen;
    chosen.reserve(k);
    for (const std::size_t i : idx) chosen.push_back(atoms[i]);
    out.push_back(conj ? Formula::conj(std::move(chosen))
                       : Formula::disj(std::move(chosen)));
    // Next combination in lex order.
    std::size_t p = k;
    while (p > 0) {
      --p;
      if (idx[p] + (k - p) < atoms.size()) {
        ++idx[p];
        for (std::size_t q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
        break;
      }
      if (p == 0) return;
    }
  }
}

Formula pairwise_neq(const std::vector<Term>& terms) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      parts.push_back(Formula::neq(terms[i], terms[j]));
    }
  }
  return Formula::conj(std::move(parts));
}

std::vector<Formula> corpus_function_free(const Signature& sig) {
  const int ns = static_cast<int>(sig.sorts.size());
  std::vector<std::vector<Term>> per_sort(static_cast<std::size_t>(ns));
  for (int s = 0; s < ns; ++s) {
    for (const std::string& name : var_pool(s)) {
      per_sort[static_cast<std::size_t>(s)].push_back(Term{Var{name, s}, 0});
    }
  }
  // Atoms pair same-sort terms only.
  std::vector<Formula> atoms;
  for (int s = 0; s < ns; ++s) {
    auto part = atom_pool(per_sort[static_cast<std::size_t>(s)]);
    // Interleave by polarity later; keep per-sort equalities-then-disequalities.
    atoms.insert(atoms.end(), part.begin(), part.end());
  }

  std::vector<Formula> out;
  out.push_back(Formula::truth());
  const std::size_t max_cube = ns == 1 ? 4 : 2;
  for (std::size_t k = 1; k <= max_cube; ++k) {
    emit_combinations(atoms, k, true, out);
  }
  for (int s = 0; s < ns; ++s) {
    out.push_back(pairwise_neq(per_sort[static_cast<std::size_t>(s)]));
  }
  if (ns > 1) {
    std::vector<Formula> parts;
    for (int s = 0; s < ns; ++s) {
      parts.push_back(pairwise_neq(per_sort[static_cast<std::size_t>(s)]));
    }
    out.push_back(Formula::conj(std::move(parts)));
  }
  const std::size_t max_clause = ns == 1 ? 3 : 2;
  std::vector<Formula> clauses;
  for (std::size_t k = 2; k <= max_clause; ++k) {
    emit_combinations(atoms, k, false, clauses);
  }
  out.insert(out.end(), clauses.begin(), clauses.end());
  // Conjunctions of two binary clauses, over a front slice when many.
  std::vector<Formula> binary;
  emit_combinations(atoms, 2, false, binary);
  const std::size_t slice = ns == 1 ? binary.size() : 12;
  for (std::size_t i = 0; i < slice && i < binary.size(); ++i) {
    for (std::size_t j = i + 1; j < slice && j < binary.size(); ++j) {
      out.push_back(Formula::conj({binary[i], binary[j]}));
    }
  }
  return out;
}

std::vector<Formula> corpus_with_fn(const Signature& sig) {
  (void)sig;
  const Term x{Var{"x", 0}, 0}, y{Var{"y", 0}, 0};
  const Term sx{Var{"x", 0}, 1}, sy{Var{"y", 0}, 1};
  const Term ssx{Var{"x", 0}, 2}, ssy{Var{"y", 0}, 2};
  const std::vector<Term> terms{x, y, sx, sy};
  const auto atoms = atom_pool(terms);

  std::vector<Formula> out;
  out.push_back(Formula::truth());
  for (std::size_t k = 1; k <= 2; ++k) emit_combinations(atoms, k, true, out);
  emit_combinations(atoms, 2, false, out);
  // Depth-2 probes: cycle collapses and swaps.
  out.push_back(Formula::eq(ssx, x));
  out.push_back(Formula::eq(ssx, sx));
  out.push_back(Formula::neq(ssx, x));
  out.push_back(Formula::conj({Formula::neq(ssx, x), Formula::neq(ssx, sx)}));
  out.push_back(Formula::conj({Formula::eq(ssx, x), Formula::neq(sx, x)}));
  out.push_back(Formula::conj({Formula::eq(ssx, sx), Formula::neq(sx, x)}));
  out.push_back(Formula::conj({Formula::eq(sx, y), Formula::eq(sy, x)}));
  out.push_back(Formula::conj(
      {Formula::eq(sx, y), Formula::eq(sy, x), Formula::neq(x, y)}));
  out.push_back(Formula::conj({Formula::eq(sx, y), Formula::neq(sy, x)}));
  out.push_back(Formula::conj({Formula::eq(ssx, y), Formula::eq(ssy, x),
                               Formula::neq(sx, y)}));
  return out;
}

}  // namespace

std::vector<Formula> corpus_formulas(const Signature& sig) {
  return sig.has_unary_fn ? corpus_with_fn(sig) : corpus_function_free(sig);
}

Formula distinct_vars(int sort, std::uint64_t count) {
  std::vector<Term> terms;
  terms.reserve(count);
  const std::string stem = "d" + std::to_string(sort + 1) + "_";
  for (std::uint64_t i = 1; i <= count; ++i) {
    terms.push_back(Term{Var{stem + std::to_string(i), sort}, 0});
  }
  return pairwise_neq(terms);
}

}  // namespace tcw
