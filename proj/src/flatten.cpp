// tcw — theory-combination workbench

#include "tcw/flatten.hpp"

#include <algorithm>

#include "tcw/errors.hpp"

namespace tcw {

FlattenResult flatten_unary(const Formula& phi, const Signature& sig, int extra_depth) {
  FlattenResult out;
  std::vector<Var> vars = collect_vars(phi);

  if (!sig.has_unary_fn) {
    out.flat = phi;
    out.universe = std::move(vars);
    return out;
  }
  if (extra_depth < 0) throw ParseError("extra_depth must be non-negative");

  std::map<std::string, int> depths = max_depth_per_var(phi);
  std::map<std::string, int> chain_of;

  // Chains in sorted base-variable order (collect_vars is sorted, sort 0 first).
  for (const Var& v : vars) {
    if (v.sort != 0) continue;
    int idx = static_cast<int>(out.chains.size());
    chain_of[v.name] = idx;
    FlattenResult::Chain chain;
    chain.base = v.name;
    int len = depths.at(v.name) + extra_depth;
    for (int j = 0; j <= len; ++j) {
      Var y{"__y_" + v.name + "_" + std::to_string(j), 0};
      out.origin_of[y.name] = {idx, j};
      chain.vars.push_back(y);
      out.universe.push_back(y);
    }
    out.chains.push_back(std::move(chain));
  }
  for (const Var& v : vars) {
    if (v.sort != 0) out.universe.push_back(v);
  }

  out.flat = map_atoms(phi, [&](const Formula& atom) {
    auto rewrite = [&](const Term& t) -> Term {
      if (t.var.sort != 0) return t;
      const auto& chain = out.chains[chain_of.at(t.var.name)];
      return Term{chain.vars.at(t.depth), 0};
    };
    Term l = rewrite(atom.lhs());
    Term r = rewrite(atom.rhs());
    return atom.kind() == FormulaKind::Eq ? Formula::eq(l, r) : Formula::neq(l, r);
  });
  return out;
}

}  // namespace tcw
