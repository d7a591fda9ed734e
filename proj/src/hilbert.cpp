#include "lstar/hilbert.hpp"

#include <sstream>

#include "lstar/parser.hpp"

namespace lstar {

const char* schema_name(Schema s) {
  switch (s) {
    case Schema::K: return "K";
    case Schema::S: return "S";
    case Schema::N: return "N";
    case Schema::Q1: return "Q1";
    case Schema::Q2: return "Q2";
    case Schema::E1: return "E1";
    case Schema::E2: return "E2";
  }
  return "?";
}

bool schema_from_name(const std::string& name, Schema& out) {
  static const std::pair<const char*, Schema> table[] = {
      {"K", Schema::K}, {"S", Schema::S}, {"N", Schema::N}, {"Q1", Schema::Q1},
      {"Q2", Schema::Q2}, {"E1", Schema::E1}, {"E2", Schema::E2},
  };
  for (const auto& [n, s] : table) {
    if (name == n) {
      out = s;
      return true;
    }
  }
  return false;
}

// ---------- schema matching ----------

namespace {

bool is_implies(const FormulaPtr& f) { return f && f->kind == Formula::Kind::Implies; }

// K:  p -> (q -> p)
bool match_k(const FormulaPtr& f) {
  return is_implies(f) && is_implies(f->b) && formula_equal(f->a, f->b->b);
}

// S:  (p -> (q -> r)) -> ((p -> q) -> (p -> r))
bool match_s(const FormulaPtr& f) {
  if (!is_implies(f) || !is_implies(f->a) || !is_implies(f->a->b)) return false;
  const FormulaPtr& p = f->a->a;
  const FormulaPtr& q = f->a->b->a;
  const FormulaPtr& r = f->a->b->b;
  if (!is_implies(f->b) || !is_implies(f->b->a) || !is_implies(f->b->b)) return false;
  return formula_equal(f->b->a->a, p) && formula_equal(f->b->a->b, q) &&
         formula_equal(f->b->b->a, p) && formula_equal(f->b->b->b, r);
}

// N:  (~p -> ~q) -> (q -> p)
bool match_n(const FormulaPtr& f) {
  if (!is_implies(f) || !is_implies(f->a) || !is_implies(f->b)) return false;
  const FormulaPtr& l1 = f->a->a;
  const FormulaPtr& l2 = f->a->b;
  if (l1->kind != Formula::Kind::Not || l2->kind != Formula::Kind::Not) return false;
  return formula_equal(l1->a, f->b->b) && formula_equal(l2->a, f->b->a);
}

// Proposes instantiation candidates for Q1 by walking body and instance in
// parallel; any position where the body has the bound variable and the
// instance differs contributes a candidate. Verification by substitution is
// authoritative afterwards.
void propose_terms(const TermPtr& body, const TermPtr& inst, const std::string& x,
                   std::vector<TermPtr>& out) {
  if (body->kind == Term::Kind::Var && body->name == x) {
    out.push_back(inst);
    return;
  }
  if (body->kind != inst->kind || body->args.size() != inst->args.size()) return;
  for (std::size_t k = 0; k < body->args.size(); ++k)
    propose_terms(body->args[k], inst->args[k], x, out);
}

void propose_terms(const FormulaPtr& body, const FormulaPtr& inst, const std::string& x,
                   std::vector<TermPtr>& out) {
  if (body->kind != inst->kind) return;
  if (body->lhs && inst->lhs) propose_terms(body->lhs, inst->lhs, x, out);
  if (body->rhs && inst->rhs) propose_terms(body->rhs, inst->rhs, x, out);
  if (body->bound && inst->bound) propose_terms(body->bound, inst->bound, x, out);
  for (std::size_t k = 0; k < body->args.size() && k < inst->args.size(); ++k)
    propose_terms(body->args[k], inst->args[k], x, out);
  if (body->a && inst->a) propose_terms(body->a, inst->a, x, out);
  if (body->b && inst->b) propose_terms(body->b, inst->b, x, out);
}

// Q1:  (A x. p) -> p[t/x]
bool match_q1(const FormulaPtr& f) {
  if (!is_implies(f) || f->a->kind != Formula::Kind::Forall) return false;
  const std::string& x = f->a->name;
  const FormulaPtr& body = f->a->a;
  const FormulaPtr& inst = f->b;
  if (formula_equal(substitute(body, x, Term::var(x)), inst)) return true;
  std::vector<TermPtr> cands;
  propose_terms(body, inst, x, cands);
  for (const auto& t : cands)
    if (formula_equal(substitute(body, x, t), inst)) return true;
  return false;
}

// Q2:  (A x. (p -> q)) -> (p -> A x. q), x not free in p
bool match_q2(const FormulaPtr& f) {
  if (!is_implies(f) || f->a->kind != Formula::Kind::Forall || !is_implies(f->a->a)) return false;
  const std::string& x = f->a->name;
  const FormulaPtr& p = f->a->a->a;
  const FormulaPtr& q = f->a->a->b;
  if (!is_implies(f->b) || f->b->b->kind != Formula::Kind::Forall) return false;
  if (f->b->b->name != x) return false;
  if (!formula_equal(f->b->a, p) || !formula_equal(f->b->b->a, q)) return false;
  return free_vars(p).count(x) == 0;
}

// E1:  t = t
bool match_e1(const FormulaPtr& f) {
  return f->kind == Formula::Kind::Eq && term_equal(f->lhs, f->rhs);
}

// Flattens a left-nested conjunction of equations into pairs; false when any
// conjunct is not an equation.
bool equation_chain(const FormulaPtr& f, std::vector<std::pair<TermPtr, TermPtr>>& out) {
  if (f->kind == Formula::Kind::And) {
    if (!equation_chain(f->a, out)) return false;
    if (f->b->kind != Formula::Kind::Eq) return false;
    out.emplace_back(f->b->lhs, f->b->rhs);
    return true;
  }
  if (f->kind != Formula::Kind::Eq) return false;
  out.emplace_back(f->lhs, f->rhs);
  return true;
}

bool args_match(const std::vector<std::pair<TermPtr, TermPtr>>& eqs,
                const std::vector<TermPtr>& ts, const std::vector<TermPtr>& us) {
  if (eqs.size() != ts.size() || ts.size() != us.size()) return false;
  for (std::size_t k = 0; k < eqs.size(); ++k)
    if (!term_equal(eqs[k].first, ts[k]) || !term_equal(eqs[k].second, us[k])) return false;
  return true;
}

// E2 congruence, in one of two shapes over an antecedent t1=u1 & ... & tk=uk:
//   function:   ante -> F(t...) = F(u...)
//   predicate:  ante -> (P(t...) -> P(u...))
bool match_e2(const FormulaPtr& f) {
  if (!is_implies(f)) return false;
  std::vector<std::pair<TermPtr, TermPtr>> eqs;
  if (!equation_chain(f->a, eqs) || eqs.empty()) return false;
  const FormulaPtr& cons = f->b;
  if (cons->kind == Formula::Kind::Eq) {
    const TermPtr& l = cons->lhs;
    const TermPtr& r = cons->rhs;
    if (l->kind != r->kind) return false;
    if (l->kind == Term::Kind::Apply) {
      if (l->fn != r->fn) return false;
      return args_match(eqs, l->args, r->args);
    }
    if (l->kind == Term::Kind::CodedApply) {
      if (l->name != r->name) return false;
      return args_match(eqs, l->args, r->args);
    }
    return false;
  }
  if (cons->kind == Formula::Kind::Implies) {
    const FormulaPtr& p = cons->a;
    const FormulaPtr& q = cons->b;
    if (p->kind != q->kind) return false;
    switch (p->kind) {
      case Formula::Kind::Eq:
      case Formula::Kind::Le:
        return args_match(eqs, {p->lhs, p->rhs}, {q->lhs, q->rhs});
      case Formula::Kind::CodedAtom:
        if (p->name != q->name) return false;
        return args_match(eqs, p->args, q->args);
      default:
        return false;
    }
  }
  return false;
}

bool match_schema(Schema s, const FormulaPtr& f) {
  switch (s) {
    case Schema::K: return match_k(f);
    case Schema::S: return match_s(f);
    case Schema::N: return match_n(f);
    case Schema::Q1: return match_q1(f);
    case Schema::Q2: return match_q2(f);
    case Schema::E1: return match_e1(f);
    case Schema::E2: return match_e2(f);
  }
  return false;
}

}  // namespace

// ---------- checking ----------

std::vector<FormulaPtr> hilbert_line_formulas(const HilbertProof& proof) {
  std::vector<FormulaPtr> out(proof.lines.size());
  for (std::size_t k = 0; k < proof.lines.size(); ++k) {
    const HilbertLine& line = proof.lines[k];
    switch (line.kind) {
      case HilbertLine::Kind::Axiom:
      case HilbertLine::Kind::LogicalAxiom:
        out[k] = line.formula;
        break;
      case HilbertLine::Kind::ModusPonens:
        if (line.i < k && line.j < k && out[line.j] && is_implies(out[line.j]))
          out[k] = out[line.j]->b;
        break;
      case HilbertLine::Kind::Gen:
        if (line.i < k && out[line.i]) out[k] = Formula::forall(line.var, out[line.i]);
        break;
    }
  }
  return out;
}

Verdict check_hilbert(const std::vector<FormulaPtr>& axioms, const HilbertProof& proof,
                      const FormulaPtr& goal) {
  for (std::size_t k = 0; k < axioms.size(); ++k)
    if (!is_sentence(axioms[k]))
      return Verdict::reject("axiom " + std::to_string(k) + " is not a sentence");
  if (proof.lines.empty()) return Verdict::reject("empty proof");

  std::vector<FormulaPtr> have(proof.lines.size());
  for (std::size_t k = 0; k < proof.lines.size(); ++k) {
    const HilbertLine& line = proof.lines[k];
    std::string at = "line " + std::to_string(k) + ": ";
    switch (line.kind) {
      case HilbertLine::Kind::Axiom: {
        if (!line.formula) return Verdict::reject(at + "axiom line without formula");
        bool member = false;
        for (const auto& a : axioms)
          if (formula_equal(a, line.formula)) { member = true; break; }
        if (!member) return Verdict::reject(at + "cited formula is not an axiom");
        have[k] = line.formula;
        break;
      }
      case HilbertLine::Kind::LogicalAxiom:
        if (!line.formula) return Verdict::reject(at + "schema line without formula");
        if (!match_schema(line.schema, line.formula))
          return Verdict::reject(at + "formula does not match schema " +
                                 schema_name(line.schema));
        have[k] = line.formula;
        break;
      case HilbertLine::Kind::ModusPonens: {
        if (line.i >= k || line.j >= k)
          return Verdict::reject(at + "modus ponens cites a line not strictly earlier");
        const FormulaPtr& minor = have[line.i];
        const FormulaPtr& major = have[line.j];
        if (!is_implies(major))
          return Verdict::reject(at + "line " + std::to_string(line.j) +
                                 " is not an implication");
        if (!formula_equal(major->a, minor))
          return Verdict::reject(at + "antecedent mismatch in modus ponens");
        have[k] = major->b;
        break;
      }
      case HilbertLine::Kind::Gen:
        if (line.i >= k) return Verdict::reject(at + "gen cites a line not strictly earlier");
        have[k] = Formula::forall(line.var, have[line.i]);
        break;
    }
  }
  if (!formula_equal(have.back(), goal))
    return Verdict::reject("final line does not match the goal");
  return Verdict::accept();
}

// ---------- text format ----------

HilbertProof parse_hilbert_proof(const std::string& text, const std::vector<FormulaPtr>& axioms) {
  HilbertProof proof;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = raw;
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    s = s.substr(b);
    if (s[0] == '#') continue;
    std::istringstream ls(s);
    std::string kw;
    ls >> kw;
    auto fail = [&](const std::string& m) -> ParseError {
      return ParseError("proof line " + std::to_string(lineno) + ": " + m, 0);
    };
    HilbertLine line;
    if (kw == "axiom") {
      std::size_t idx;
      if (!(ls >> idx)) throw fail("expected axiom index");
      if (idx >= axioms.size()) throw fail("axiom index out of range");
      line.kind = HilbertLine::Kind::Axiom;
      line.formula = axioms[idx];
    } else if (kw == "schema") {
      std::string id;
      if (!(ls >> id)) throw fail("expected schema id");
      if (!schema_from_name(id, line.schema)) throw fail("unknown schema " + id);
      std::string rest;
      std::getline(ls, rest);
      std::size_t bar = rest.find('|');
      if (bar == std::string::npos) throw fail("expected '|' before the instance formula");
      line.kind = HilbertLine::Kind::LogicalAxiom;
      line.formula = parse_formula(rest.substr(bar + 1));
    } else if (kw == "mp") {
      if (!(ls >> line.i >> line.j)) throw fail("expected two line numbers");
      line.kind = HilbertLine::Kind::ModusPonens;
    } else if (kw == "gen") {
      if (!(ls >> line.i >> line.var)) throw fail("expected line number and variable");
      line.kind = HilbertLine::Kind::Gen;
    } else {
      throw fail("unknown step keyword " + kw);
    }
    proof.lines.push_back(std::move(line));
  }
  return proof;
}

std::string render_hilbert_proof(const HilbertProof& proof,
                                 const std::vector<FormulaPtr>& axioms) {
  std::ostringstream os;
  for (const auto& line : proof.lines) {
    switch (line.kind) {
      case HilbertLine::Kind::Axiom: {
        std::size_t idx = axioms.size();
        for (std::size_t k = 0; k < axioms.size(); ++k)
          if (formula_equal(axioms[k], line.formula)) { idx = k; break; }
        if (idx == axioms.size())
          throw std::invalid_argument("axiom line cites a formula outside the axiom list");
        os << "axiom " << idx << '\n';
        break;
      }
      case HilbertLine::Kind::LogicalAxiom:
        os << "schema " << schema_name(line.schema) << " | " << render_formula(line.formula)
           << '\n';
        break;
      case HilbertLine::Kind::ModusPonens:
        os << "mp " << line.i << ' ' << line.j << '\n';
        break;
      case HilbertLine::Kind::Gen:
        os << "gen " << line.i << ' ' << line.var << '\n';
        break;
    }
  }
  return os.str();
}

}  // namespace lstar
