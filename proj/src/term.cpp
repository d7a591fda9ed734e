#include "lstar/term.hpp"

#include <sstream>
#include <stdexcept>

namespace lstar {

// ---------- function symbol table ----------

unsigned fn_arity(Fn f) {
  switch (f) {
    case Fn::Log:
    case Fn::Double:
      return 1;
    default:
      return 2;
  }
}

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sub: return "sub";
    case Fn::Div: return "div";
    case Fn::Max: return "max";
    case Fn::Log: return "log";
    case Fn::Root: return "root";
    case Fn::Count: return "count";
    case Fn::Add: return "add";
    case Fn::Double: return "double";
  }
  return "?";
}

bool fn_from_name(const std::string& name, Fn& out) {
  static const std::pair<const char*, Fn> table[] = {
      {"sub", Fn::Sub},   {"div", Fn::Div},     {"max", Fn::Max},
      {"log", Fn::Log},   {"root", Fn::Root},   {"count", Fn::Count},
      {"add", Fn::Add},   {"double", Fn::Double},
  };
  for (const auto& [n, f] : table) {
    if (name == n) {
      out = f;
      return true;
    }
  }
  return false;
}

// ---------- construction ----------

TermPtr Term::zero() {
  static const TermPtr t = std::make_shared<Term>(Term{Kind::Zero, Fn::Sub, "", {}});
  return t;
}

TermPtr Term::one() {
  static const TermPtr t = std::make_shared<Term>(Term{Kind::One, Fn::Sub, "", {}});
  return t;
}

TermPtr Term::var(std::string name) {
  return std::make_shared<Term>(Term{Kind::Var, Fn::Sub, std::move(name), {}});
}

TermPtr Term::apply(Fn f, std::vector<TermPtr> args) {
  if (args.size() != fn_arity(f))
    throw std::invalid_argument(std::string("arity mismatch for ") + fn_name(f));
  return std::make_shared<Term>(Term{Kind::Apply, f, "", std::move(args)});
}

TermPtr Term::coded(std::string name, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{Kind::CodedApply, Fn::Sub, std::move(name), std::move(args)});
}

// ---------- structural operations ----------

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Zero:
    case Term::Kind::One:
      return true;
    case Term::Kind::Var:
      return a->name == b->name;
    case Term::Kind::Apply:
      if (a->fn != b->fn) return false;
      break;
    case Term::Kind::CodedApply:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      break;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

void term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == Term::Kind::Var) {
    out.insert(t->name);
    return;
  }
  for (const auto& u : t->args) term_vars(u, out);
}

bool term_ground(const TermPtr& t) {
  if (t->kind == Term::Kind::Var) return false;
  for (const auto& u : t->args)
    if (!term_ground(u)) return false;
  return true;
}

bool term_contains_var(const TermPtr& t, const std::string& v) {
  if (t->kind == Term::Kind::Var) return t->name == v;
  for (const auto& u : t->args)
    if (term_contains_var(u, v)) return true;
  return false;
}

TermPtr term_substitute(const TermPtr& t, const std::string& v, const TermPtr& repl) {
  switch (t->kind) {
    case Term::Kind::Zero:
    case Term::Kind::One:
      return t;
    case Term::Kind::Var:
      return t->name == v ? repl : t;
    case Term::Kind::Apply:
    case Term::Kind::CodedApply: {
      bool changed = false;
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& u : t->args) {
        TermPtr s = term_substitute(u, v, repl);
        changed |= s.get() != u.get();
        args.push_back(std::move(s));
      }
      if (!changed) return t;
      return t->kind == Term::Kind::Apply ? Term::apply(t->fn, std::move(args))
                                          : Term::coded(t->name, std::move(args));
    }
  }
  return t;
}

std::size_t term_size(const TermPtr& t) {
  std::size_t n = 1;
  for (const auto& u : t->args) n += term_size(u);
  return n;
}

// ---------- numerals ----------

// Binary expansion: n = 2k yields double(<k>), n = 2k+1 yields
// add(double(<k>), 1). Linear in the bit length of n.
TermPtr numeral(const Nat& n) {
  if (n == 0) return Term::zero();
  if (n == 1) return Term::one();
  Nat half = n >> 1;
  TermPtr h = Term::apply(Fn::Double, {numeral(half)});
  if (mpz_odd_p(n.get_mpz_t())) return Term::apply(Fn::Add, {h, Term::one()});
  return h;
}

// ---------- rendering ----------

// Recognizes exactly the shapes numeral() produces (half must be nonzero, so
// double(0) stays structural); such terms render as decimal literals and the
// parser expands the literal back to the identical term.
static bool numeral_value(const TermPtr& t, Nat& out) {
  switch (t->kind) {
    case Term::Kind::Zero:
      out = 0;
      return true;
    case Term::Kind::One:
      out = 1;
      return true;
    case Term::Kind::Apply:
      break;
    default:
      return false;
  }
  Nat k;
  if (t->fn == Fn::Double) {
    if (!numeral_value(t->args[0], k) || k == 0) return false;
    out = k + k;
    return true;
  }
  if (t->fn == Fn::Add) {
    const TermPtr& d = t->args[0];
    if (d->kind != Term::Kind::Apply || d->fn != Fn::Double) return false;
    if (t->args[1]->kind != Term::Kind::One) return false;
    if (!numeral_value(d->args[0], k) || k == 0) return false;
    out = k + k + 1;
    return true;
  }
  return false;
}

static void render_term_into(const TermPtr& t, std::ostringstream& os) {
  if (t->kind == Term::Kind::Apply) {
    Nat n;
    if (numeral_value(t, n)) {
      os << nat_str(n);
      return;
    }
  }
  switch (t->kind) {
    case Term::Kind::Zero:
      os << '0';
      return;
    case Term::Kind::One:
      os << '1';
      return;
    case Term::Kind::Var:
      os << t->name;
      return;
    case Term::Kind::Apply:
      os << fn_name(t->fn);
      break;
    case Term::Kind::CodedApply:
      os << t->name;
      break;
  }
  os << '(';
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    if (i) os << ',';
    render_term_into(t->args[i], os);
  }
  os << ')';
}

std::string render_term(const TermPtr& t) {
  std::ostringstream os;
  render_term_into(t, os);
  return os.str();
}

}  // namespace lstar
