// tcw — theory-combination workbench
// Signatures, terms, and quantifier-free equality formulas, with parser and
// canonical printer.  Terms are (variable, depth) pairs: depth counts nested
// applications of the single unary symbol s.

#pragma once

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tcw {

// A many-sorted signature: named sorts plus at most one unary function
// symbol s mapping sort 0 to sort 0.
struct Signature {
  std::vector<std::string> sorts;
  bool has_unary_fn = false;

  static Signature empty(std::vector<std::string> sorts);
  static Signature with_unary(std::vector<std::string> sorts);

  // Index of the named sort, -1 when absent.
  int sort_index(const std::string& name) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Var {
  std::string name;
  int sort = 0;

  friend auto operator<=>(const Var& a, const Var& b) {
    if (auto c = a.sort <=> b.sort; c != 0) return c;
    return a.name <=> b.name;
  }
  friend bool operator==(const Var&, const Var&) = default;
};

// s^depth(var); depth 0 is the bare variable.  depth > 0 requires the
// signature's unary symbol and a sort-0 variable.
struct Term {
  Var var;
  int depth = 0;

  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class FormulaKind { Eq, Neq, And, Or, Not };

class Formula {
 public:
  Formula() : d_kind(FormulaKind::And) {}  // empty conjunction = truth

  static Formula eq(Term lhs, Term rhs);
  static Formula neq(Term lhs, Term rhs);
  static Formula conj(std::vector<Formula> children);  // 0 -> truth, 1 -> child
  static Formula disj(std::vector<Formula> children);  // 0 -> falsity, 1 -> child
  static Formula negate(Formula f);  // atoms flip Eq/Neq, compounds get a Not node
  static Formula truth() { return conj({}); }
  static Formula falsity() { return disj({}); }

  FormulaKind kind() const { return d_kind; }
  bool is_atom() const { return d_kind == FormulaKind::Eq || d_kind == FormulaKind::Neq; }
  const Term& lhs() const { return d_lhs; }
  const Term& rhs() const { return d_rhs; }
  const std::vector<Formula>& children() const { return d_children; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  FormulaKind d_kind;
  Term d_lhs, d_rhs;
  std::vector<Formula> d_children;
};

// Parses the ASCII grammar
//   formula := disj ; disj := conj ('|' conj)* ; conj := lit ('&' lit)*
//   lit := '!'? atom | '(' formula ')' ; atom := term ('=' | '!=') term
//   term := var | 's(' term ')' | 's^' NAT '(' var ')' ; var := IDENT ':' IDENT
// against sig: unknown sorts, s without the unary symbol, cross-sort atoms and
// conflicting sort annotations raise ParseError.
Formula parse_formula(const std::string& text, const Signature& sig);

// Canonical form: atoms with no spaces ("x:s1=y:s1", "s^2(x:s1)!=y:s1"),
// " & " / " | " separators, parentheses only around a disjunction nested in a
// conjunction.  parse(print(f, sig)) == f for parser-produced formulas.  The
// signature supplies the printed sort names; the signature-free overload
// falls back to "s<index+1>".
std::string to_string(const Formula& f, const Signature& sig);
std::string to_string(const Formula& f);
std::string to_string(const Term& t, const Signature& sig);

// All variables of f, sorted by (sort, name), deduplicated.
std::vector<Var> collect_vars(const Formula& f);

// Maximum s-depth each sort-0 variable occurs under (variables of other sorts
// are absent from the map; plain sort-0 occurrences record depth 0).
std::map<std::string, int> max_depth_per_var(const Formula& f);

// Structural checks of f against sig (sorts in range, s usage legal, atom
// sorts agree, consistent per-name sorts); throws ParseError on violation.
void validate_formula(const Formula& f, const Signature& sig);

// Rebuilds f with every atom replaced by fn(atom); connectives are preserved.
Formula map_atoms(const Formula& f, const std::function<Formula(const Formula&)>& fn);

}  // namespace tcw
