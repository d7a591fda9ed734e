#include "lstar/codec.hpp"

namespace lstar {

// ---------- pairing ----------

Nat pairing(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> unpair(const Nat& n) {
  // Largest w with w(w+1)/2 <= n, via integer sqrt of 8n+1.
  Nat r;
  Nat t = 8 * n + 1;
  mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
  Nat w = (r - 1) / 2;
  Nat tri = w * (w + 1) / 2;
  Nat b = n - tri;
  Nat a = w - b;
  return {a, b};
}

// ---------- bit streams ----------

namespace {

// Tag values are load-bearing: they are the on-the-wire encoding. Do not
// renumber.
enum Tag : unsigned {
  T_ZERO = 0, T_ONE = 1, T_VAR = 2,
  T_SUB = 3, T_DIV = 4, T_MAX = 5, T_LOG = 6, T_ROOT = 7, T_COUNT = 8,
  T_ADD = 9, T_DOUBLE = 10, T_CODED_APPLY = 11,
  T_EQ = 12, T_LE = 13, T_CODED_ATOM = 14,
  T_NOT = 15, T_AND = 16, T_OR = 17, T_IMPLIES = 18, T_IFF = 19,
  T_FORALL = 20, T_EXISTS = 21, T_BFORALL = 22, T_BEXISTS = 23,
  T_HILBERT = 24, T_LINE_AXIOM = 25, T_LINE_SCHEMA = 26, T_LINE_MP = 27, T_LINE_GEN = 28,
  T_TABLEAUX = 29,
  T_J_NEGATED_GOAL = 30, T_J_AXIOM = 31, T_J_ALPHA = 32, T_J_BETA = 33,
  T_J_GAMMA = 34, T_J_DELTA = 35, T_J_BGAMMA = 36, T_J_BDELTA = 37, T_J_CLOSED = 38,
  T_TABK = 39,
};
constexpr unsigned kTagBits = 6;

struct BitWriter {
  std::vector<bool> bits;

  void put_bit(bool b) { bits.push_back(b); }

  void put_fixed(unsigned v, unsigned width) {
    for (unsigned k = width; k-- > 0;) put_bit((v >> k) & 1u);
  }

  void put_tag(Tag t) { put_fixed(t, kTagBits); }

  // Elias gamma of n +/- the shift to cover zero: encodes m = n+1.
  void put_nat(const Nat& n) {
    Nat m = n + 1;
    std::size_t len = bitlen(m);
    for (std::size_t k = 0; k + 1 < len; ++k) put_bit(false);
    for (std::size_t k = len; k-- > 0;) put_bit(mpz_tstbit(m.get_mpz_t(), k) != 0);
  }

  void put_size(std::size_t n) { put_nat(Nat(static_cast<unsigned long>(n))); }

  void put_name(const std::string& s) {
    put_size(s.size());
    for (char c : s) put_fixed(static_cast<unsigned char>(c) & 0x7f, 7);
  }

  Nat finish() const {
    Nat acc = 1;  // marker bit keeps leading zeros of the stream
    for (bool b : bits) acc = acc * 2 + (b ? 1 : 0);
    return acc;
  }
};

struct BitReader {
  std::vector<bool> bits;
  std::size_t pos = 0;

  explicit BitReader(const Nat& code) {
    if (code <= 0) throw DecodeError("code must be positive", 0);
    std::size_t len = bitlen(code);
    // Strip the marker bit.
    bits.reserve(len - 1);
    for (std::size_t k = len - 1; k-- > 0;) bits.push_back(mpz_tstbit(code.get_mpz_t(), k) != 0);
  }

  [[noreturn]] void fail(const std::string& msg) const { throw DecodeError(msg, pos); }

  bool get_bit() {
    if (pos >= bits.size()) fail("unexpected end of code");
    return bits[pos++];
  }

  unsigned get_fixed(unsigned width) {
    unsigned v = 0;
    for (unsigned k = 0; k < width; ++k) v = (v << 1) | (get_bit() ? 1u : 0u);
    return v;
  }

  unsigned get_tag() { return get_fixed(kTagBits); }

  Nat get_nat() {
    std::size_t zeros = 0;
    while (!get_bit()) {
      if (++zeros > bits.size()) fail("runaway gamma length");
    }
    Nat m = 1;
    for (std::size_t k = 0; k < zeros; ++k) m = m * 2 + (get_bit() ? 1 : 0);
    return m - 1;
  }

  std::size_t get_size(std::size_t limit) {
    Nat n = get_nat();
    if (n > Nat(static_cast<unsigned long>(limit))) fail("size field out of range");
    return static_cast<std::size_t>(n.get_ui());
  }

  std::string get_name() {
    std::size_t len = get_size(1u << 20);
    if (len == 0) fail("empty identifier");
    std::string s;
    s.reserve(len);
    for (std::size_t k = 0; k < len; ++k) {
      unsigned c = get_fixed(7);
      if (c < 0x21) fail("identifier contains control character");
      s.push_back(static_cast<char>(c));
    }
    return s;
  }

  void done() const {
    if (pos != bits.size()) throw DecodeError("trailing bits after object", pos);
  }
};

// ---------- term and formula streams ----------

Tag fn_tag(Fn f) {
  switch (f) {
    case Fn::Sub: return T_SUB;
    case Fn::Div: return T_DIV;
    case Fn::Max: return T_MAX;
    case Fn::Log: return T_LOG;
    case Fn::Root: return T_ROOT;
    case Fn::Count: return T_COUNT;
    case Fn::Add: return T_ADD;
    case Fn::Double: return T_DOUBLE;
  }
  return T_SUB;
}

void write_term(BitWriter& w, const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Zero: w.put_tag(T_ZERO); return;
    case Term::Kind::One: w.put_tag(T_ONE); return;
    case Term::Kind::Var:
      w.put_tag(T_VAR);
      w.put_name(t->name);
      return;
    case Term::Kind::Apply:
      w.put_tag(fn_tag(t->fn));
      for (const auto& u : t->args) write_term(w, u);
      return;
    case Term::Kind::CodedApply:
      w.put_tag(T_CODED_APPLY);
      w.put_name(t->name);
      w.put_size(t->args.size());
      for (const auto& u : t->args) write_term(w, u);
      return;
  }
}

TermPtr read_term(BitReader& r) {
  unsigned tag = r.get_tag();
  switch (tag) {
    case T_ZERO: return Term::zero();
    case T_ONE: return Term::one();
    case T_VAR: return Term::var(r.get_name());
    case T_SUB: case T_DIV: case T_MAX: case T_LOG:
    case T_ROOT: case T_COUNT: case T_ADD: case T_DOUBLE: {
      Fn f = tag == T_SUB   ? Fn::Sub
           : tag == T_DIV   ? Fn::Div
           : tag == T_MAX   ? Fn::Max
           : tag == T_LOG   ? Fn::Log
           : tag == T_ROOT  ? Fn::Root
           : tag == T_COUNT ? Fn::Count
           : tag == T_ADD   ? Fn::Add
                            : Fn::Double;
      std::vector<TermPtr> args;
      for (unsigned k = 0; k < fn_arity(f); ++k) args.push_back(read_term(r));
      return Term::apply(f, std::move(args));
    }
    case T_CODED_APPLY: {
      std::string name = r.get_name();
      std::size_t n = r.get_size(1u << 16);
      std::vector<TermPtr> args;
      for (std::size_t k = 0; k < n; ++k) args.push_back(read_term(r));
      return Term::coded(std::move(name), std::move(args));
    }
    default:
      r.fail("tag is not a term");
  }
}

void write_formula(BitWriter& w, const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Le:
      w.put_tag(f->kind == Formula::Kind::Eq ? T_EQ : T_LE);
      write_term(w, f->lhs);
      write_term(w, f->rhs);
      return;
    case Formula::Kind::CodedAtom:
      w.put_tag(T_CODED_ATOM);
      w.put_name(f->name);
      w.put_size(f->args.size());
      for (const auto& t : f->args) write_term(w, t);
      return;
    case Formula::Kind::Not:
      w.put_tag(T_NOT);
      write_formula(w, f->a);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      Tag t = f->kind == Formula::Kind::And       ? T_AND
            : f->kind == Formula::Kind::Or        ? T_OR
            : f->kind == Formula::Kind::Implies   ? T_IMPLIES
                                                  : T_IFF;
      w.put_tag(t);
      write_formula(w, f->a);
      write_formula(w, f->b);
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      w.put_tag(f->kind == Formula::Kind::Forall ? T_FORALL : T_EXISTS);
      w.put_name(f->name);
      write_formula(w, f->a);
      return;
    case Formula::Kind::BoundedForall:
    case Formula::Kind::BoundedExists:
      w.put_tag(f->kind == Formula::Kind::BoundedForall ? T_BFORALL : T_BEXISTS);
      w.put_name(f->name);
      write_term(w, f->bound);
      write_formula(w, f->a);
      return;
  }
}

FormulaPtr read_formula(BitReader& r) {
  unsigned tag = r.get_tag();
  switch (tag) {
    case T_EQ:
    case T_LE: {
      TermPtr l = read_term(r);
      TermPtr rhs = read_term(r);
      return tag == T_EQ ? Formula::eq(l, rhs) : Formula::le(l, rhs);
    }
    case T_CODED_ATOM: {
      std::string name = r.get_name();
      std::size_t n = r.get_size(1u << 16);
      std::vector<TermPtr> args;
      for (std::size_t k = 0; k < n; ++k) args.push_back(read_term(r));
      return Formula::atom(std::move(name), std::move(args));
    }
    case T_NOT: return Formula::lnot(read_formula(r));
    case T_AND: case T_OR: case T_IMPLIES: case T_IFF: {
      FormulaPtr a = read_formula(r);
      FormulaPtr b = read_formula(r);
      switch (tag) {
        case T_AND: return Formula::land(a, b);
        case T_OR: return Formula::lor(a, b);
        case T_IMPLIES: return Formula::implies(a, b);
        default: return Formula::iff(a, b);
      }
    }
    case T_FORALL: case T_EXISTS: {
      std::string v = r.get_name();
      FormulaPtr body = read_formula(r);
      return tag == T_FORALL ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    case T_BFORALL: case T_BEXISTS: {
      std::string v = r.get_name();
      TermPtr bound = read_term(r);
      FormulaPtr body = read_formula(r);
      try {
        return tag == T_BFORALL ? Formula::bforall(v, bound, body)
                                : Formula::bexists(v, bound, body);
      } catch (const std::invalid_argument& e) {
        r.fail(e.what());
      }
    }
    default:
      r.fail("tag is not a formula");
  }
}

// ---------- proof streams ----------

void write_hilbert(BitWriter& w, const HilbertProof& p) {
  w.put_tag(T_HILBERT);
  w.put_size(p.lines.size());
  for (const auto& line : p.lines) {
    switch (line.kind) {
      case HilbertLine::Kind::Axiom:
        w.put_tag(T_LINE_AXIOM);
        write_formula(w, line.formula);
        break;
      case HilbertLine::Kind::LogicalAxiom:
        w.put_tag(T_LINE_SCHEMA);
        w.put_fixed(static_cast<unsigned>(line.schema), 3);
        write_formula(w, line.formula);
        break;
      case HilbertLine::Kind::ModusPonens:
        w.put_tag(T_LINE_MP);
        w.put_size(line.i);
        w.put_size(line.j);
        break;
      case HilbertLine::Kind::Gen:
        w.put_tag(T_LINE_GEN);
        w.put_size(line.i);
        w.put_name(line.var);
        break;
    }
  }
}

HilbertProof read_hilbert(BitReader& r) {
  if (r.get_tag() != T_HILBERT) r.fail("not a hilbert proof code");
  std::size_t n = r.get_size(1u << 20);
  HilbertProof p;
  p.lines.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    unsigned tag = r.get_tag();
    HilbertLine line;
    switch (tag) {
      case T_LINE_AXIOM:
        line.kind = HilbertLine::Kind::Axiom;
        line.formula = read_formula(r);
        break;
      case T_LINE_SCHEMA: {
        line.kind = HilbertLine::Kind::LogicalAxiom;
        unsigned s = r.get_fixed(3);
        if (s > 6) r.fail("schema id out of range");
        line.schema = static_cast<Schema>(s);
        line.formula = read_formula(r);
        break;
      }
      case T_LINE_MP:
        line.kind = HilbertLine::Kind::ModusPonens;
        line.i = r.get_size(1u << 20);
        line.j = r.get_size(1u << 20);
        break;
      case T_LINE_GEN:
        line.kind = HilbertLine::Kind::Gen;
        line.i = r.get_size(1u << 20);
        line.var = r.get_name();
        break;
      default:
        r.fail("tag is not a proof line");
    }
    p.lines.push_back(std::move(line));
  }
  return p;
}

void write_justification(BitWriter& w, const Justification& j) {
  switch (j.kind) {
    case Justification::Kind::NegatedGoal:
      w.put_tag(T_J_NEGATED_GOAL);
      return;
    case Justification::Kind::AxiomIntro:
      w.put_tag(T_J_AXIOM);
      return;
    case Justification::Kind::Alpha:
      w.put_tag(T_J_ALPHA);
      w.put_size(j.principal);
      w.put_fixed(j.which & 1u, 1);
      return;
    case Justification::Kind::Beta:
      w.put_tag(T_J_BETA);
      w.put_size(j.principal);
      w.put_fixed(j.right ? 1 : 0, 1);
      return;
    case Justification::Kind::Gamma:
    case Justification::Kind::BoundedGamma:
      w.put_tag(j.kind == Justification::Kind::Gamma ? T_J_GAMMA : T_J_BGAMMA);
      w.put_size(j.principal);
      write_term(w, j.term);
      return;
    case Justification::Kind::Delta:
      w.put_tag(T_J_DELTA);
      w.put_size(j.principal);
      w.put_name(j.param);
      return;
    case Justification::Kind::BoundedDelta:
      w.put_tag(T_J_BDELTA);
      w.put_size(j.principal);
      w.put_name(j.param);
      w.put_fixed(j.which & 1u, 1);
      return;
    case Justification::Kind::Closed:
      w.put_tag(T_J_CLOSED);
      w.put_fixed(static_cast<unsigned>(j.close), 2);
      w.put_size(j.i);
      w.put_size(j.j);
      return;
  }
}

Justification read_justification(BitReader& r) {
  Justification j;
  unsigned tag = r.get_tag();
  switch (tag) {
    case T_J_NEGATED_GOAL:
      j.kind = Justification::Kind::NegatedGoal;
      return j;
    case T_J_AXIOM:
      j.kind = Justification::Kind::AxiomIntro;
      return j;
    case T_J_ALPHA:
      j.kind = Justification::Kind::Alpha;
      j.principal = r.get_size(1u << 24);
      j.which = r.get_fixed(1);
      return j;
    case T_J_BETA:
      j.kind = Justification::Kind::Beta;
      j.principal = r.get_size(1u << 24);
      j.right = r.get_fixed(1) != 0;
      return j;
    case T_J_GAMMA:
    case T_J_BGAMMA:
      j.kind = tag == T_J_GAMMA ? Justification::Kind::Gamma : Justification::Kind::BoundedGamma;
      j.principal = r.get_size(1u << 24);
      j.term = read_term(r);
      return j;
    case T_J_DELTA:
      j.kind = Justification::Kind::Delta;
      j.principal = r.get_size(1u << 24);
      j.param = r.get_name();
      return j;
    case T_J_BDELTA:
      j.kind = Justification::Kind::BoundedDelta;
      j.principal = r.get_size(1u << 24);
      j.param = r.get_name();
      j.which = r.get_fixed(1);
      return j;
    case T_J_CLOSED: {
      j.kind = Justification::Kind::Closed;
      unsigned c = r.get_fixed(2);
      if (c > 2) r.fail("closure kind out of range");
      j.close = static_cast<Justification::CloseKind>(c);
      j.i = r.get_size(1u << 24);
      j.j = r.get_size(1u << 24);
      return j;
    }
    default:
      r.fail("tag is not a justification");
  }
}

void write_tableaux(BitWriter& w, const TableauxProof& p) {
  w.put_tag(T_TABLEAUX);
  w.put_size(p.nodes.size());
  for (const auto& node : p.nodes) {
    w.put_size(node.parent);
    write_justification(w, node.just);
    if (node.just.kind != Justification::Kind::Closed) write_formula(w, node.formula);
  }
}

TableauxProof read_tableaux(BitReader& r) {
  if (r.get_tag() != T_TABLEAUX) r.fail("not a tableau proof code");
  std::size_t n = r.get_size(1u << 24);
  TableauxProof p;
  p.nodes.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    TabNode node;
    node.parent = r.get_size(1u << 24);
    if (k == 0 ? node.parent != 0 : node.parent >= k) r.fail("node parent out of order");
    node.just = read_justification(r);
    if (node.just.kind != Justification::Kind::Closed) node.formula = read_formula(r);
    p.nodes.push_back(std::move(node));
  }
  return p;
}

void write_tabk(BitWriter& w, const TabKProof& p) {
  w.put_tag(T_TABK);
  w.put_nat(Nat(p.level));
  w.put_size(p.steps.size());
  for (const auto& s : p.steps) {
    write_formula(w, s.theorem);
    write_tableaux(w, s.proof);
  }
}

TabKProof read_tabk(BitReader& r) {
  if (r.get_tag() != T_TABK) r.fail("not a staged proof code");
  TabKProof p;
  Nat level = r.get_nat();
  if (level > 64) r.fail("level out of range");
  p.level = static_cast<unsigned>(level.get_ui());
  std::size_t n = r.get_size(1u << 16);
  for (std::size_t k = 0; k < n; ++k) {
    TabKStep s;
    s.theorem = read_formula(r);
    s.proof = read_tableaux(r);
    p.steps.push_back(std::move(s));
  }
  return p;
}

}  // namespace

// ---------- public entry points ----------

Nat encode_term(const TermPtr& t) {
  BitWriter w;
  write_term(w, t);
  return w.finish();
}

Nat encode(const FormulaPtr& f) {
  BitWriter w;
  write_formula(w, f);
  return w.finish();
}

Nat encode_hilbert(const HilbertProof& p) {
  BitWriter w;
  write_hilbert(w, p);
  return w.finish();
}

Nat encode_tableaux(const TableauxProof& p) {
  BitWriter w;
  write_tableaux(w, p);
  return w.finish();
}

Nat encode_tabk(const TabKProof& p) {
  BitWriter w;
  write_tabk(w, p);
  return w.finish();
}

TermPtr decode_term(const Nat& code) {
  BitReader r(code);
  TermPtr t = read_term(r);
  r.done();
  return t;
}

FormulaPtr decode(const Nat& code) {
  BitReader r(code);
  FormulaPtr f = read_formula(r);
  r.done();
  return f;
}

HilbertProof decode_hilbert(const Nat& code) {
  BitReader r(code);
  HilbertProof p = read_hilbert(r);
  r.done();
  return p;
}

TableauxProof decode_tableaux(const Nat& code) {
  BitReader r(code);
  TableauxProof p = read_tableaux(r);
  r.done();
  return p;
}

TabKProof decode_tabk(const Nat& code) {
  BitReader r(code);
  TabKProof p = read_tabk(r);
  r.done();
  return p;
}

bool try_decode(const Nat& code, FormulaPtr& out) {
  try {
    out = decode(code);
    return true;
  } catch (const DecodeError&) {
    return false;
  }
}

bool try_decode_tabk(const Nat& code, TabKProof& out) {
  try {
    out = decode_tabk(code);
    return true;
  } catch (const DecodeError&) {
    return false;
  }
}

// ---------- substitution on codes and diagonalization ----------

Nat sub_code(const Nat& code, const Nat& n) {
  FormulaPtr f = decode(code);
  std::set<std::string> fv = free_vars(f);
  if (fv.size() != 1 || *fv.begin() != "v0")
    throw std::invalid_argument("sub_code requires exactly v0 free");
  return encode(substitute(f, "v0", numeral(n)));
}

void register_subfn(Registry& reg) {
  reg.register_fn("subfn", 2, [](const std::vector<Nat>& args) -> Nat {
    try {
      return sub_code(args[0], args[1]);
    } catch (const DecodeError&) {
      return 0;
    } catch (const std::invalid_argument&) {
      return 0;
    }
  });
}

FormulaPtr diagonalize(const FormulaPtr& theta) {
  std::set<std::string> fv = free_vars(theta);
  if (fv.size() != 1 || *fv.begin() != "v0")
    throw std::invalid_argument("diagonalize requires exactly v0 free");
  TermPtr self_applied = Term::coded("subfn", {Term::var("v0"), Term::var("v0")});
  Nat d = encode(substitute(theta, "v0", self_applied));
  TermPtr quine = Term::coded("subfn", {numeral(d), numeral(d)});
  return substitute(theta, "v0", quine);
}

}  // namespace lstar
