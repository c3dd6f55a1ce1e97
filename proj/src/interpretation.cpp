// tcw — theory-combination workbench

#include "tcw/interpretation.hpp"

#include <sstream>
#include <stdexcept>

#include "tcw/errors.hpp"

namespace tcw {

std::uint64_t Interpretation::eval_term(const Term& t) const {
  auto it = valuation.find(t.var.name);
  if (it == valuation.end()) {
    throw std::out_of_range("variable '" + t.var.name + "' is not valued");
  }
  std::uint64_t v = it->second;
  if (t.depth > 0 && fn_table.empty()) {
    throw ParseError("formula uses s but the interpretation has no function table");
  }
  for (int i = 0; i < t.depth; ++i) v = fn_table.at(v);
  return v;
}

bool Interpretation::satisfies(const Formula& f) const {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return eval_term(f.lhs()) == eval_term(f.rhs());
    case FormulaKind::Neq:
      return eval_term(f.lhs()) != eval_term(f.rhs());
    case FormulaKind::And:
      for (const auto& c : f.children()) {
        if (!satisfies(c)) return false;
      }
      return true;
    case FormulaKind::Or:
      for (const auto& c : f.children()) {
        if (satisfies(c)) return true;
      }
      return false;
    case FormulaKind::Not:
      return !satisfies(f.children().front());
  }
  return false;
}

std::string to_string(const Interpretation& a) {
  std::ostringstream os;
  os << "domains(";
  for (std::size_t i = 0; i < a.domain_sizes.size(); ++i) {
    if (i > 0) os << ',';
    os << a.domain_sizes[i];
  }
  os << ')';
  if (!a.fn_table.empty()) {
    os << " s=[";
    for (std::size_t i = 0; i < a.fn_table.size(); ++i) {
      if (i > 0) os << ',';
      os << a.fn_table[i];
    }
    os << ']';
  }
  if (!a.valuation.empty()) {
    os << ' ';
    bool first = true;
    for (const auto& [name, v] : a.valuation) {
      if (!first) os << ' ';
      first = false;
      os << name << "->" << v;
    }
  }
  return os.str();
}

}  // namespace tcw
