// tcw — theory-combination workbench

#include "tcw/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tcw/errors.hpp"

namespace tcw {

Signature Signature::empty(std::vector<std::string> sorts) {
  Signature sig;
  sig.sorts = std::move(sorts);
  sig.has_unary_fn = false;
  return sig;
}

Signature Signature::with_unary(std::vector<std::string> sorts) {
  Signature sig;
  sig.sorts = std::move(sorts);
  sig.has_unary_fn = true;
  return sig;
}

int Signature::sort_index(const std::string& name) const {
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    if (sorts[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Formula Formula::eq(Term lhs, Term rhs) {
  Formula f;
  f.d_kind = FormulaKind::Eq;
  f.d_lhs = std::move(lhs);
  f.d_rhs = std::move(rhs);
  return f;
}

Formula Formula::neq(Term lhs, Term rhs) {
  Formula f = eq(std::move(lhs), std::move(rhs));
  f.d_kind = FormulaKind::Neq;
  return f;
}

Formula Formula::conj(std::vector<Formula> children) {
  if (children.size() == 1) return children.front();
  Formula f;
  f.d_kind = FormulaKind::And;
  f.d_children = std::move(children);
  return f;
}

Formula Formula::disj(std::vector<Formula> children) {
  if (children.size() == 1) return children.front();
  Formula f;
  f.d_kind = FormulaKind::Or;
  f.d_children = std::move(children);
  return f;
}

Formula Formula::negate(Formula f) {
  switch (f.d_kind) {
    case FormulaKind::Eq:
      f.d_kind = FormulaKind::Neq;
      return f;
    case FormulaKind::Neq:
      f.d_kind = FormulaKind::Eq;
      return f;
    case FormulaKind::Not:
      return f.d_children.front();
    default: {
      Formula g;
      g.d_kind = FormulaKind::Not;
      g.d_children.push_back(std::move(f));
      return g;
    }
  }
}

// ------------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig) : d_text(text), d_sig(sig) {}

  Formula run() {
    Formula f = parse_disj();
    skip_ws();
    if (d_pos != d_text.size()) fail("trailing input");
    return f;
  }

 private:
  const std::string& d_text;
  const Signature& d_sig;
  std::size_t d_pos = 0;
  std::map<std::string, int> d_sort_of;  // consistency of per-name annotations

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, d_pos); }

  void skip_ws() {
    while (d_pos < d_text.size() && std::isspace(static_cast<unsigned char>(d_text[d_pos]))) {
      ++d_pos;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (d_pos < d_text.size() && d_text[d_pos] == c) {
      ++d_pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return d_pos < d_text.size() ? d_text[d_pos] : '\0';
  }

  std::string ident() {
    skip_ws();
    std::size_t start = d_pos;
    while (d_pos < d_text.size() &&
           (std::isalnum(static_cast<unsigned char>(d_text[d_pos])) || d_text[d_pos] == '_')) {
      ++d_pos;
    }
    if (d_pos == start) fail("expected identifier");
    return d_text.substr(start, d_pos - start);
  }

  int natural() {
    skip_ws();
    std::size_t start = d_pos;
    while (d_pos < d_text.size() && std::isdigit(static_cast<unsigned char>(d_text[d_pos]))) {
      ++d_pos;
    }
    if (d_pos == start) fail("expected number");
    return std::stoi(d_text.substr(start, d_pos - start));
  }

  Formula parse_disj() {
    std::vector<Formula> parts;
    parts.push_back(parse_conj());
    while (eat('|')) parts.push_back(parse_conj());
    return Formula::disj(std::move(parts));
  }

  Formula parse_conj() {
    std::vector<Formula> parts;
    parts.push_back(parse_lit());
    while (eat('&')) parts.push_back(parse_lit());
    return Formula::conj(std::move(parts));
  }

  Formula parse_lit() {
    if (peek() == '(') {
      eat('(');
      Formula f = parse_disj();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    bool negated = eat('!');
    Formula a = parse_atom();
    return negated ? Formula::negate(std::move(a)) : a;
  }

  Formula parse_atom() {
    Term lhs = parse_term();
    skip_ws();
    bool neg = false;
    if (d_pos + 1 < d_text.size() && d_text[d_pos] == '!' && d_text[d_pos + 1] == '=') {
      d_pos += 2;
      neg = true;
    } else if (!eat('=')) {
      fail("expected '=' or '!='");
    }
    Term rhs = parse_term();
    if (lhs.var.sort != rhs.var.sort) fail("atom relates terms of different sorts");
    return neg ? Formula::neq(lhs, rhs) : Formula::eq(lhs, rhs);
  }

  Term parse_term() {
    skip_ws();
    // 's' begins a function application only when followed by '(' or '^';
    // otherwise it is an ordinary variable name.
    if (d_pos < d_text.size() && d_text[d_pos] == 's' && d_pos + 1 < d_text.size() &&
        (d_text[d_pos + 1] == '(' || d_text[d_pos + 1] == '^')) {
      if (!d_sig.has_unary_fn) fail("s not in signature");
      ++d_pos;  // 's'
      int extra = 1;
      if (d_text[d_pos] == '^') {
        ++d_pos;
        extra = natural();
      }
      if (!eat('(')) fail("expected '(' after s");
      Term inner = parse_term();
      if (!eat(')')) fail("expected ')'");
      if (inner.var.sort != 0) fail("s applies to the function sort only");
      inner.depth += extra;
      return inner;
    }
    return Term{parse_var(), 0};
  }

  Var parse_var() {
    std::string name = ident();
    if (!eat(':')) fail("expected ':' sort annotation after '" + name + "'");
    std::string sort_name = ident();
    int sort = d_sig.sort_index(sort_name);
    if (sort < 0) fail("unknown sort '" + sort_name + "'");
    auto [it, fresh] = d_sort_of.emplace(name, sort);
    if (!fresh && it->second != sort) {
      fail("variable '" + name + "' annotated with two different sorts");
    }
    return Var{std::move(name), sort};
  }
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  Formula f = p.run();
  validate_formula(f, sig);
  return f;
}

// ------------------------------------------------------------------ printing

namespace {

std::string sort_name_or_default(int sort, const Signature* sig) {
  if (sig && sort >= 0 && sort < static_cast<int>(sig->sorts.size())) {
    return sig->sorts[sort];
  }
  return "s" + std::to_string(sort + 1);
}

std::string term_str(const Term& t, const Signature* sig) {
  std::string var = t.var.name + ":" + sort_name_or_default(t.var.sort, sig);
  if (t.depth == 0) return var;
  if (t.depth == 1) return "s(" + var + ")";
  return "s^" + std::to_string(t.depth) + "(" + var + ")";
}

void print_rec(std::ostringstream& os, const Formula& f, const Signature* sig,
               bool parenthesize_or);

void print_join(std::ostringstream& os, const std::vector<Formula>& parts,
                const Signature* sig, const char* sep, bool parenthesize_or) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) os << sep;
    print_rec(os, parts[i], sig, parenthesize_or);
  }
}

void print_rec(std::ostringstream& os, const Formula& f, const Signature* sig,
               bool parenthesize_or) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      os << term_str(f.lhs(), sig) << '=' << term_str(f.rhs(), sig);
      break;
    case FormulaKind::Neq:
      os << term_str(f.lhs(), sig) << "!=" << term_str(f.rhs(), sig);
      break;
    case FormulaKind::And:
      if (f.children().empty()) {
        os << "true";
      } else {
        print_join(os, f.children(), sig, " & ", true);
      }
      break;
    case FormulaKind::Or:
      if (f.children().empty()) {
        os << "false";
      } else if (parenthesize_or) {
        os << '(';
        print_join(os, f.children(), sig, " | ", false);
        os << ')';
      } else {
        print_join(os, f.children(), sig, " | ", false);
      }
      break;
    case FormulaKind::Not:
      os << "!(";
      print_rec(os, f.children().front(), sig, false);
      os << ')';
      break;
  }
}

}  // namespace

std::string to_string(const Formula& f, const Signature& sig) {
  std::ostringstream os;
  print_rec(os, f, &sig, false);
  return os.str();
}

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print_rec(os, f, nullptr, false);
  return os.str();
}

std::string to_string(const Term& t, const Signature& sig) { return term_str(t, &sig); }

std::vector<Var> collect_vars(const Formula& f) {
  std::vector<Var> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atom()) {
      out.push_back(g.lhs().var);
      out.push_back(g.rhs().var);
      return;
    }
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<std::string, int> max_depth_per_var(const Formula& f) {
  std::map<std::string, int> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atom()) {
      for (const Term* t : {&g.lhs(), &g.rhs()}) {
        if (t->var.sort == 0) {
          auto [it, fresh] = out.emplace(t->var.name, t->depth);
          if (!fresh) it->second = std::max(it->second, t->depth);
        }
      }
      return;
    }
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return out;
}

void validate_formula(const Formula& f, const Signature& sig) {
  std::map<std::string, int> sort_of;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atom()) {
      for (const Term* t : {&g.lhs(), &g.rhs()}) {
        if (t->var.sort < 0 || t->var.sort >= static_cast<int>(sig.sorts.size())) {
          throw ParseError("variable '" + t->var.name + "' has out-of-range sort");
        }
        if (t->depth > 0) {
          if (!sig.has_unary_fn) throw ParseError("s not in signature");
          if (t->var.sort != 0) throw ParseError("s applies to the function sort only");
        }
        auto [it, fresh] = sort_of.emplace(t->var.name, t->var.sort);
        if (!fresh && it->second != t->var.sort) {
          throw ParseError("variable '" + t->var.name + "' used at two different sorts");
        }
      }
      if (g.lhs().var.sort != g.rhs().var.sort) {
        throw ParseError("atom relates terms of different sorts");
      }
      return;
    }
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
}

Formula map_atoms(const Formula& f, const std::function<Formula(const Formula&)>& fn) {
  if (f.is_atom()) return fn(f);
  std::vector<Formula> mapped;
  mapped.reserve(f.children().size());
  for (const auto& c : f.children()) mapped.push_back(map_atoms(c, fn));
  switch (f.kind()) {
    case FormulaKind::And:
      if (f.children().empty()) return Formula::truth();
      return Formula::conj(std::move(mapped));
    case FormulaKind::Or:
      if (f.children().empty()) return Formula::falsity();
      return Formula::disj(std::move(mapped));
    case FormulaKind::Not:
      return Formula::negate(std::move(mapped.front()));
    default:
      return f;
  }
}

}  // namespace tcw
