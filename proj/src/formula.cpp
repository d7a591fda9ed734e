#include "lstar/formula.hpp"

#include <sstream>
#include <stdexcept>

namespace lstar {

// ---------- construction ----------

static FormulaPtr mk(Formula&& f) { return std::make_shared<Formula>(std::move(f)); }

FormulaPtr Formula::eq(TermPtr l, TermPtr r) {
  return mk({Kind::Eq, std::move(l), std::move(r), "", {}, nullptr, nullptr, nullptr});
}

FormulaPtr Formula::le(TermPtr l, TermPtr r) {
  return mk({Kind::Le, std::move(l), std::move(r), "", {}, nullptr, nullptr, nullptr});
}

FormulaPtr Formula::atom(std::string name, std::vector<TermPtr> args) {
  return mk({Kind::CodedAtom, nullptr, nullptr, std::move(name), std::move(args), nullptr,
             nullptr, nullptr});
}

FormulaPtr Formula::lnot(FormulaPtr f) {
  return mk({Kind::Not, nullptr, nullptr, "", {}, std::move(f), nullptr, nullptr});
}

FormulaPtr Formula::land(FormulaPtr l, FormulaPtr r) {
  return mk({Kind::And, nullptr, nullptr, "", {}, std::move(l), std::move(r), nullptr});
}

FormulaPtr Formula::lor(FormulaPtr l, FormulaPtr r) {
  return mk({Kind::Or, nullptr, nullptr, "", {}, std::move(l), std::move(r), nullptr});
}

FormulaPtr Formula::implies(FormulaPtr l, FormulaPtr r) {
  return mk({Kind::Implies, nullptr, nullptr, "", {}, std::move(l), std::move(r), nullptr});
}

FormulaPtr Formula::iff(FormulaPtr l, FormulaPtr r) {
  return mk({Kind::Iff, nullptr, nullptr, "", {}, std::move(l), std::move(r), nullptr});
}

FormulaPtr Formula::forall(std::string v, FormulaPtr body) {
  return mk({Kind::Forall, nullptr, nullptr, std::move(v), {}, std::move(body), nullptr, nullptr});
}

FormulaPtr Formula::exists(std::string v, FormulaPtr body) {
  return mk({Kind::Exists, nullptr, nullptr, std::move(v), {}, std::move(body), nullptr, nullptr});
}

FormulaPtr Formula::bforall(std::string v, TermPtr bound, FormulaPtr body) {
  if (term_contains_var(bound, v))
    throw std::invalid_argument("quantifier bound mentions the bound variable " + v);
  return mk({Kind::BoundedForall, nullptr, nullptr, std::move(v), {}, std::move(body), nullptr,
             std::move(bound)});
}

FormulaPtr Formula::bexists(std::string v, TermPtr bound, FormulaPtr body) {
  if (term_contains_var(bound, v))
    throw std::invalid_argument("quantifier bound mentions the bound variable " + v);
  return mk({Kind::BoundedExists, nullptr, nullptr, std::move(v), {}, std::move(body), nullptr,
             std::move(bound)});
}

// ---------- structural operations ----------

static bool is_quantifier(Formula::Kind k) {
  return k == Formula::Kind::Forall || k == Formula::Kind::Exists ||
         k == Formula::Kind::BoundedForall || k == Formula::Kind::BoundedExists;
}

bool formula_equal(const FormulaPtr& f, const FormulaPtr& g) {
  if (f.get() == g.get()) return true;
  if (!f || !g) return false;
  if (f->kind != g->kind) return false;
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Le:
      return term_equal(f->lhs, g->lhs) && term_equal(f->rhs, g->rhs);
    case Formula::Kind::CodedAtom: {
      if (f->name != g->name || f->args.size() != g->args.size()) return false;
      for (std::size_t i = 0; i < f->args.size(); ++i)
        if (!term_equal(f->args[i], g->args[i])) return false;
      return true;
    }
    case Formula::Kind::Not:
      return formula_equal(f->a, g->a);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return formula_equal(f->a, g->a) && formula_equal(f->b, g->b);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return f->name == g->name && formula_equal(f->a, g->a);
    case Formula::Kind::BoundedForall:
    case Formula::Kind::BoundedExists:
      return f->name == g->name && term_equal(f->bound, g->bound) && formula_equal(f->a, g->a);
  }
  return false;
}

void free_vars(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Le:
      term_vars(f->lhs, out);
      term_vars(f->rhs, out);
      return;
    case Formula::Kind::CodedAtom:
      for (const auto& t : f->args) term_vars(t, out);
      return;
    case Formula::Kind::Not:
      free_vars(f->a, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      free_vars(f->a, out);
      free_vars(f->b, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::BoundedForall:
    case Formula::Kind::BoundedExists: {
      if (f->bound) term_vars(f->bound, out);
      std::set<std::string> inner;
      free_vars(f->a, inner);
      inner.erase(f->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  free_vars(f, out);
  return out;
}

static void term_names(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == Term::Kind::Var || t->kind == Term::Kind::CodedApply) out.insert(t->name);
  for (const auto& u : t->args) term_names(u, out);
}

void all_names(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->lhs) term_names(f->lhs, out);
  if (f->rhs) term_names(f->rhs, out);
  if (f->bound) term_names(f->bound, out);
  for (const auto& t : f->args) term_names(t, out);
  if (f->kind == Formula::Kind::CodedAtom) out.insert(f->name);
  if (is_quantifier(f->kind)) out.insert(f->name);
  if (f->a) all_names(f->a, out);
  if (f->b) all_names(f->b, out);
}

bool is_sentence(const FormulaPtr& f) { return free_vars(f).empty(); }

// Picks a name not present in `avoid` by priming the base name.
static std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string c = base;
  do {
    c += '\'';
  } while (avoid.count(c));
  return c;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& v, const TermPtr& repl) {
  switch (f->kind) {
    case Formula::Kind::Eq:
      return Formula::eq(term_substitute(f->lhs, v, repl), term_substitute(f->rhs, v, repl));
    case Formula::Kind::Le:
      return Formula::le(term_substitute(f->lhs, v, repl), term_substitute(f->rhs, v, repl));
    case Formula::Kind::CodedAtom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& t : f->args) args.push_back(term_substitute(t, v, repl));
      return Formula::atom(f->name, std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::lnot(substitute(f->a, v, repl));
    case Formula::Kind::And:
      return Formula::land(substitute(f->a, v, repl), substitute(f->b, v, repl));
    case Formula::Kind::Or:
      return Formula::lor(substitute(f->a, v, repl), substitute(f->b, v, repl));
    case Formula::Kind::Implies:
      return Formula::implies(substitute(f->a, v, repl), substitute(f->b, v, repl));
    case Formula::Kind::Iff:
      return Formula::iff(substitute(f->a, v, repl), substitute(f->b, v, repl));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::BoundedForall:
    case Formula::Kind::BoundedExists: {
      TermPtr bound = f->bound ? term_substitute(f->bound, v, repl) : nullptr;
      if (f->name == v) {
        // v is shadowed below; only the bound term (already handled) can
        // contain a free occurrence.
        if (bound.get() == f->bound.get()) return f;
        if (f->kind == Formula::Kind::BoundedForall) return Formula::bforall(f->name, bound, f->a);
        return Formula::bexists(f->name, bound, f->a);
      }
      std::string q = f->name;
      FormulaPtr body = f->a;
      if (term_contains_var(repl, q)) {
        // Capture: rename the binder before descending.
        std::set<std::string> avoid;
        term_vars(repl, avoid);
        free_vars(body, avoid);
        avoid.insert(v);
        q = fresh_name(q, avoid);
        body = substitute(body, f->name, Term::var(q));
      }
      body = substitute(body, v, repl);
      switch (f->kind) {
        case Formula::Kind::Forall: return Formula::forall(q, body);
        case Formula::Kind::Exists: return Formula::exists(q, body);
        case Formula::Kind::BoundedForall: return Formula::bforall(q, bound, body);
        default: return Formula::bexists(q, bound, body);
      }
    }
  }
  return f;
}

std::size_t formula_size(const FormulaPtr& f) {
  std::size_t n = 1;
  if (f->lhs) n += term_size(f->lhs);
  if (f->rhs) n += term_size(f->rhs);
  if (f->bound) n += term_size(f->bound);
  for (const auto& t : f->args) n += term_size(t);
  if (f->a) n += formula_size(f->a);
  if (f->b) n += formula_size(f->b);
  return n;
}

// ---------- rendering ----------

// Binary connectives are rendered fully parenthesized, matching the grammar's
// requirement that nested connectives carry explicit parentheses.
static void render_into(const FormulaPtr& f, std::ostringstream& os) {
  auto paren = [&](const FormulaPtr& g) {
    bool bare = g->kind == Formula::Kind::CodedAtom;
    if (!bare) os << '(';
    render_into(g, os);
    if (!bare) os << ')';
  };
  switch (f->kind) {
    case Formula::Kind::Eq:
      os << render_term(f->lhs) << " = " << render_term(f->rhs);
      return;
    case Formula::Kind::Le:
      os << render_term(f->lhs) << " <= " << render_term(f->rhs);
      return;
    case Formula::Kind::CodedAtom: {
      os << f->name << '(';
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) os << ',';
        os << render_term(f->args[i]);
      }
      os << ')';
      return;
    }
    case Formula::Kind::Not:
      os << '~';
      paren(f->a);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      const char* op = f->kind == Formula::Kind::And       ? "&"
                       : f->kind == Formula::Kind::Or      ? "|"
                       : f->kind == Formula::Kind::Implies ? "->"
                                                           : "<->";
      paren(f->a);
      os << ' ' << op << ' ';
      paren(f->b);
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      os << (f->kind == Formula::Kind::Forall ? "A " : "E ") << f->name << ". ";
      render_into(f->a, os);
      return;
    case Formula::Kind::BoundedForall:
    case Formula::Kind::BoundedExists:
      os << (f->kind == Formula::Kind::BoundedForall ? "A " : "E ") << f->name << " <= "
         << render_term(f->bound) << ". ";
      render_into(f->a, os);
      return;
  }
}

std::string render_formula(const FormulaPtr& f) {
  std::ostringstream os;
  render_into(f, os);
  return os.str();
}

// ---------- derived builders ----------

FormulaPtr lt(TermPtr a, TermPtr b) {
  return Formula::le(std::move(a), Term::apply(Fn::Sub, {std::move(b), Term::one()}));
}

FormulaPtr mult_relation(const std::string& x, const std::string& y, const std::string& z) {
  TermPtr vx = Term::var(x), vy = Term::var(y), vz = Term::var(z);
  TermPtr zero = Term::zero(), one = Term::one();
  FormulaPtr x0 = Formula::eq(vx, zero);
  FormulaPtr y0 = Formula::eq(vy, zero);
  FormulaPtr zero_case = Formula::implies(Formula::lor(x0, y0), Formula::eq(vz, zero));
  FormulaPtr quotient = Formula::eq(Term::apply(Fn::Div, {vz, vx}), vy);
  FormulaPtr remainder = lt(Term::apply(Fn::Div, {Term::apply(Fn::Sub, {vz, one}), vx}), vy);
  FormulaPtr pos_case = Formula::implies(
      Formula::land(Formula::lnot(x0), Formula::lnot(y0)),
      Formula::land(quotient, remainder));
  return Formula::land(zero_case, pos_case);
}

FormulaPtr add_relation(const std::string& x, const std::string& y, const std::string& z) {
  return Formula::eq(Term::apply(Fn::Add, {Term::var(x), Term::var(y)}), Term::var(z));
}

}  // namespace lstar
