#include "lstar/tableaux.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lstar/parser.hpp"

namespace lstar {

// ===== axiom interface =====

AxiomInterface AxiomInterface::from_list(std::vector<FormulaPtr> members) {
  auto shared = std::make_shared<std::vector<FormulaPtr>>(std::move(members));
  AxiomInterface ai;
  ai.contains = [shared](const FormulaPtr& f) {
    for (const auto& m : *shared)
      if (formula_equal(m, f)) return true;
    return false;
  };
  ai.first = [shared](std::size_t n) {
    std::vector<FormulaPtr> out;
    for (std::size_t k = 0; k < shared->size() && k < n; ++k) out.push_back((*shared)[k]);
    return out;
  };
  return ai;
}

// ===== rule tables =====

namespace {

// Conjunctive decompositions: every component may be added to the branch.
std::vector<FormulaPtr> alpha_components(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::And:
      return {f->a, f->b};
    case Formula::Kind::Iff:
      return {Formula::implies(f->a, f->b), Formula::implies(f->b, f->a)};
    case Formula::Kind::Not: {
      const FormulaPtr& g = f->a;
      switch (g->kind) {
        case Formula::Kind::Or:
          return {Formula::lnot(g->a), Formula::lnot(g->b)};
        case Formula::Kind::Implies:
          return {g->a, Formula::lnot(g->b)};
        case Formula::Kind::Not:
          return {g->a};
        default:
          return {};
      }
    }
    default:
      return {};
  }
}

// Disjunctive decompositions: the branch splits and both sides must appear.
std::vector<FormulaPtr> beta_components(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Or:
      return {f->a, f->b};
    case Formula::Kind::Implies:
      return {Formula::lnot(f->a), f->b};
    case Formula::Kind::Not: {
      const FormulaPtr& g = f->a;
      switch (g->kind) {
        case Formula::Kind::And:
          return {Formula::lnot(g->a), Formula::lnot(g->b)};
        case Formula::Kind::Iff:
          return {Formula::lnot(Formula::implies(g->a, g->b)),
                  Formula::lnot(Formula::implies(g->b, g->a))};
        default:
          return {};
      }
    }
    default:
      return {};
  }
}

// Unbounded gamma: A x. p  /  ~E x. p, instantiated at t.
bool gamma_instance(const FormulaPtr& f, const TermPtr& t, FormulaPtr& out) {
  if (f->kind == Formula::Kind::Forall) {
    out = substitute(f->a, f->name, t);
    return true;
  }
  if (f->kind == Formula::Kind::Not && f->a->kind == Formula::Kind::Exists) {
    out = Formula::lnot(substitute(f->a->a, f->a->name, t));
    return true;
  }
  return false;
}

// Bounded gamma yields a guarded instance: (t <= bound) -> body[t].
bool bounded_gamma_instance(const FormulaPtr& f, const TermPtr& t, FormulaPtr& out) {
  if (f->kind == Formula::Kind::BoundedForall) {
    out = Formula::implies(Formula::le(t, f->bound), substitute(f->a, f->name, t));
    return true;
  }
  if (f->kind == Formula::Kind::Not && f->a->kind == Formula::Kind::BoundedExists) {
    const FormulaPtr& g = f->a;
    out = Formula::implies(Formula::le(t, g->bound),
                           Formula::lnot(substitute(g->a, g->name, t)));
    return true;
  }
  return false;
}

// Unbounded delta: E x. p  /  ~A x. p, witnessed by a fresh parameter.
bool delta_instance(const FormulaPtr& f, const std::string& param, FormulaPtr& out) {
  if (f->kind == Formula::Kind::Exists) {
    out = substitute(f->a, f->name, Term::var(param));
    return true;
  }
  if (f->kind == Formula::Kind::Not && f->a->kind == Formula::Kind::Forall) {
    out = Formula::lnot(substitute(f->a->a, f->a->name, Term::var(param)));
    return true;
  }
  return false;
}

// Bounded delta yields two components: the side literal param <= bound and the
// instantiated body.
bool bounded_delta_instance(const FormulaPtr& f, const std::string& param, unsigned which,
                            FormulaPtr& out) {
  const Formula* g = nullptr;
  bool negated = false;
  if (f->kind == Formula::Kind::BoundedExists) {
    g = f.get();
  } else if (f->kind == Formula::Kind::Not && f->a->kind == Formula::Kind::BoundedForall) {
    g = f->a.get();
    negated = true;
  } else {
    return false;
  }
  if (which == 0) {
    out = Formula::le(Term::var(param), g->bound);
    return true;
  }
  FormulaPtr inst = substitute(g->a, g->name, Term::var(param));
  out = negated ? Formula::lnot(inst) : inst;
  return true;
}

bool is_atom(const FormulaPtr& f) {
  return f->kind == Formula::Kind::Eq || f->kind == Formula::Kind::Le ||
         f->kind == Formula::Kind::CodedAtom;
}

bool formula_ground(const FormulaPtr& f) { return free_vars(f).empty(); }

// Evaluation that treats any failure (unregistered symbol) as "no closure".
bool eval_ground_atom(const FormulaPtr& f, const Registry& reg, bool& value) {
  try {
    value = eval_formula(f, reg, {});
    return true;
  } catch (const EvalError&) {
    return false;
  }
}

// Complementarity of phi against psi where Not(phi) is on the branch. Exact
// structural equality, or coded atoms with pairwise matching arguments where
// ground argument pairs may match by value instead of shape.
bool complementary_match(const FormulaPtr& phi, const FormulaPtr& psi, const Registry& reg) {
  if (formula_equal(phi, psi)) return true;
  if (phi->kind != Formula::Kind::CodedAtom || psi->kind != Formula::Kind::CodedAtom)
    return false;
  if (phi->name != psi->name || phi->args.size() != psi->args.size()) return false;
  for (std::size_t k = 0; k < phi->args.size(); ++k) {
    const TermPtr& a = phi->args[k];
    const TermPtr& b = psi->args[k];
    if (term_equal(a, b)) continue;
    if (!term_ground(a) || !term_ground(b)) return false;
    try {
      if (eval_term(a, reg, {}) != eval_term(b, reg, {})) return false;
    } catch (const EvalError&) {
      return false;
    }
  }
  return true;
}

bool complementary_pair(const FormulaPtr& f, const FormulaPtr& g, const Registry& reg) {
  if (f->kind == Formula::Kind::Not && complementary_match(f->a, g, reg)) return true;
  if (g->kind == Formula::Kind::Not && complementary_match(g->a, f, reg)) return true;
  return false;
}

// Normal form under which two coded atoms carry the same key exactly when
// complementary_match accepts them: ground arguments collapse to their value,
// everything else keeps its shape (an argument whose evaluation fails can
// only match its own shape).
std::string coded_value_key(const FormulaPtr& atom, const Registry& reg) {
  std::string key = atom->name;
  for (const auto& t : atom->args) {
    key += '/';
    if (term_ground(t)) {
      try {
        key += 'v' + nat_str(eval_term(t, reg, {}));
        continue;
      } catch (const EvalError&) {
        key += 'e';
      }
    } else {
      key += 't';
    }
    key += render_term(t);
  }
  return key;
}

}  // namespace

// ===== checker =====

Verdict check_tableaux(const AxiomInterface& axioms, const FormulaPtr& goal,
                       const TableauxProof& proof, const Registry& reg) {
  const auto& nodes = proof.nodes;
  if (nodes.empty()) return Verdict::reject("empty tableau");
  if (!is_sentence(goal)) return Verdict::reject("goal is not a sentence");

  auto at = [](std::size_t k) { return "node " + std::to_string(k) + ": "; };

  // Tree shape: parents precede children, so ancestor chains terminate.
  std::vector<std::vector<std::size_t>> children(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k == 0) {
      if (nodes[0].parent != 0) return Verdict::reject("root must be its own parent");
      continue;
    }
    if (nodes[k].parent >= k) return Verdict::reject(at(k) + "parent does not precede node");
    children[nodes[k].parent].push_back(k);
  }

  auto is_ancestor = [&](std::size_t anc, std::size_t n) {
    while (n != 0) {
      n = nodes[n].parent;
      if (n == anc) return true;
    }
    return anc == 0;
  };

  // Identifiers seen in nodes 0..k-1, for delta freshness.
  std::set<std::string> seen;
  all_names(Formula::lnot(goal), seen);

  // Parameters introduced by delta ancestors of a node.
  auto branch_params = [&](std::size_t n) {
    std::set<std::string> ps;
    for (std::size_t cur = n;; cur = nodes[cur].parent) {
      const Justification& j = nodes[cur].just;
      if (j.kind == Justification::Kind::Delta || j.kind == Justification::Kind::BoundedDelta)
        ps.insert(j.param);
      if (cur == 0) break;
    }
    return ps;
  };

  if (nodes[0].just.kind != Justification::Kind::NegatedGoal)
    return Verdict::reject("root must be justified as the negated goal");
  if (!nodes[0].formula || !formula_equal(nodes[0].formula, Formula::lnot(goal)))
    return Verdict::reject("root formula is not the negation of the goal");

  for (std::size_t k = 1; k < nodes.size(); ++k) {
    const TabNode& node = nodes[k];
    const Justification& j = node.just;
    if (j.kind != Justification::Kind::Closed && !node.formula)
      return Verdict::reject(at(k) + "missing formula");

    switch (j.kind) {
      case Justification::Kind::NegatedGoal:
        return Verdict::reject(at(k) + "negated goal may only appear at the root");

      case Justification::Kind::AxiomIntro:
        if (!is_sentence(node.formula))
          return Verdict::reject(at(k) + "introduced axiom is not a sentence");
        if (!axioms.contains(node.formula))
          return Verdict::reject(at(k) + "introduced formula is not an axiom");
        break;

      case Justification::Kind::Alpha: {
        if (!is_ancestor(j.principal, k) || j.principal == k)
          return Verdict::reject(at(k) + "principal is not on this branch");
        auto comps = alpha_components(nodes[j.principal].formula);
        if (comps.empty()) return Verdict::reject(at(k) + "principal is not an alpha formula");
        if (j.which >= comps.size()) return Verdict::reject(at(k) + "alpha component out of range");
        if (!formula_equal(node.formula, comps[j.which]))
          return Verdict::reject(at(k) + "formula is not the cited alpha component");
        break;
      }

      case Justification::Kind::Beta: {
        if (!is_ancestor(j.principal, k))
          return Verdict::reject(at(k) + "principal is not on this branch");
        auto comps = beta_components(nodes[j.principal].formula);
        if (comps.empty()) return Verdict::reject(at(k) + "principal is not a beta formula");
        if (!formula_equal(node.formula, comps[j.right ? 1 : 0]))
          return Verdict::reject(at(k) + "formula is not the cited beta side");
        // Both sides of the split must be present as sibling pairs.
        const auto& sibs = children[node.parent];
        if (sibs.size() != 2)
          return Verdict::reject(at(k) + "beta split must have exactly two children");
        const TabNode& l = nodes[sibs[0]];
        const TabNode& r = nodes[sibs[1]];
        if (l.just.kind != Justification::Kind::Beta || r.just.kind != Justification::Kind::Beta ||
            l.just.principal != j.principal || r.just.principal != j.principal ||
            l.just.right || !r.just.right)
          return Verdict::reject(at(k) + "beta siblings must cover both sides of one principal");
        break;
      }

      case Justification::Kind::Gamma:
      case Justification::Kind::BoundedGamma: {
        if (!is_ancestor(j.principal, k) || j.principal == k)
          return Verdict::reject(at(k) + "principal is not on this branch");
        if (!j.term) return Verdict::reject(at(k) + "gamma without instantiation term");
        std::set<std::string> tv;
        term_vars(j.term, tv);
        std::set<std::string> ps = branch_params(k);
        for (const auto& v : tv)
          if (!ps.count(v))
            return Verdict::reject(at(k) + "instantiation term mentions non-parameter " + v);
        FormulaPtr expect;
        bool okshape = j.kind == Justification::Kind::Gamma
                           ? gamma_instance(nodes[j.principal].formula, j.term, expect)
                           : bounded_gamma_instance(nodes[j.principal].formula, j.term, expect);
        if (!okshape) return Verdict::reject(at(k) + "principal is not a gamma formula");
        if (!formula_equal(node.formula, expect))
          return Verdict::reject(at(k) + "formula is not the instantiation of the principal");
        break;
      }

      case Justification::Kind::Delta: {
        if (!is_ancestor(j.principal, k) || j.principal == k)
          return Verdict::reject(at(k) + "principal is not on this branch");
        if (seen.count(j.param))
          return Verdict::reject(at(k) + "delta parameter " + j.param + " is not fresh");
        FormulaPtr expect;
        if (!delta_instance(nodes[j.principal].formula, j.param, expect))
          return Verdict::reject(at(k) + "principal is not a delta formula");
        if (!formula_equal(node.formula, expect))
          return Verdict::reject(at(k) + "formula is not the witnessed instance");
        break;
      }

      case Justification::Kind::BoundedDelta: {
        if (!is_ancestor(j.principal, k) || j.principal == k)
          return Verdict::reject(at(k) + "principal is not on this branch");
        // The side literal and the body share one parameter; freshness is
        // established by the first of the pair on the branch.
        bool established = false;
        for (std::size_t cur = nodes[k].parent;; cur = nodes[cur].parent) {
          const Justification& a = nodes[cur].just;
          if (a.kind == Justification::Kind::BoundedDelta && a.principal == j.principal &&
              a.param == j.param) {
            established = true;
          }
          if (cur == 0) break;
        }
        if (!established && seen.count(j.param))
          return Verdict::reject(at(k) + "delta parameter " + j.param + " is not fresh");
        FormulaPtr expect;
        if (!bounded_delta_instance(nodes[j.principal].formula, j.param, j.which, expect))
          return Verdict::reject(at(k) + "principal is not a bounded delta formula");
        if (!formula_equal(node.formula, expect))
          return Verdict::reject(at(k) + "formula is not the cited bounded delta component");
        break;
      }

      case Justification::Kind::Closed: {
        switch (j.close) {
          case Justification::CloseKind::ComplementaryPair: {
            if (!is_ancestor(j.i, k) || !is_ancestor(j.j, k))
              return Verdict::reject(at(k) + "closure cites nodes off this branch");
            const FormulaPtr& fi = nodes[j.i].formula;
            const FormulaPtr& fj = nodes[j.j].formula;
            if (!fi || !fj) return Verdict::reject(at(k) + "closure cites a closed node");
            if (!complementary_pair(fi, fj, reg))
              return Verdict::reject(at(k) + "cited formulas are not complementary");
            break;
          }
          case Justification::CloseKind::FalseGroundAtom: {
            if (!is_ancestor(j.i, k))
              return Verdict::reject(at(k) + "closure cites a node off this branch");
            const FormulaPtr& fi = nodes[j.i].formula;
            if (!fi || !is_atom(fi) || !formula_ground(fi))
              return Verdict::reject(at(k) + "cited formula is not a ground atom");
            bool value;
            if (!eval_ground_atom(fi, reg, value) || value)
              return Verdict::reject(at(k) + "cited atom does not evaluate to false");
            break;
          }
          case Justification::CloseKind::TrueGroundAtomNegated: {
            if (!is_ancestor(j.i, k))
              return Verdict::reject(at(k) + "closure cites a node off this branch");
            const FormulaPtr& fi = nodes[j.i].formula;
            if (!fi || fi->kind != Formula::Kind::Not || !is_atom(fi->a) ||
                !formula_ground(fi->a))
              return Verdict::reject(at(k) + "cited formula is not a negated ground atom");
            bool value;
            if (!eval_ground_atom(fi->a, reg, value) || !value)
              return Verdict::reject(at(k) + "cited atom does not evaluate to true");
            break;
          }
        }
        break;
      }
    }
    if (node.formula) all_names(node.formula, seen);
    if (j.term) {
      std::set<std::string> tv;
      term_vars(j.term, tv);
      seen.insert(tv.begin(), tv.end());
    }
    if (!j.param.empty()) seen.insert(j.param);
  }

  // Leaves must be closed; interior nodes have one child or a beta pair.
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    bool closed = nodes[k].just.kind == Justification::Kind::Closed;
    if (children[k].empty()) {
      if (!closed) return Verdict::reject(at(k) + "open leaf");
    } else {
      if (closed) return Verdict::reject(at(k) + "closed node has children");
      if (children[k].size() > 2)
        return Verdict::reject(at(k) + "more than two children");
      if (children[k].size() == 2 &&
          nodes[children[k][0]].just.kind != Justification::Kind::Beta)
        return Verdict::reject(at(k) + "two children require a beta split");
    }
  }
  return Verdict::accept();
}

// ===== search =====

namespace {

struct BranchState {
  std::vector<std::size_t> nodes;                       // with formulas, root -> leaf
  std::unordered_set<std::string> keys;                 // rendered branch formulas
  std::vector<std::string> params;                      // introduction order
  std::unordered_set<std::string> param_set;
  std::unordered_set<std::string> subterm_keys;
  // Gamma instantiation candidates in discovery order. Eligibility (every
  // variable of the term is a branch parameter) is decided once when the
  // term is first seen: parameters are always globally fresh names, so no
  // later event can make an ineligible term eligible.
  std::vector<TermPtr> candidates;
  std::vector<std::string> candidate_keys;              // aligned with candidates
  std::unordered_set<std::string> candidate_key_set;
  std::unordered_set<std::size_t> alpha_used, delta_used, beta_used;
  std::unordered_map<std::size_t, std::unordered_set<std::string>> gamma_used;
  std::unordered_map<std::size_t, std::size_t> gamma_cursor;  // per-principal scan position
  std::size_t checked = 0;                              // closure scan frontier
  std::size_t term_cap = 0;                             // SearchOptions::max_term_size
  // Closure lookup indices over the scanned prefix of the branch, keyed so
  // that a complementary partner of a new formula is a hash probe instead of
  // a pairwise walk. Values are the earliest node with the key.
  std::unordered_map<std::string, std::size_t> by_render;         // every formula
  std::unordered_map<std::string, std::size_t> not_inner;         // ~f, keyed by f
  std::unordered_map<std::string, std::size_t> coded_pos;         // coded atoms, value key
  std::unordered_map<std::string, std::size_t> coded_neg;         // negated coded atoms
  // Rule worklists in branch order, consumed through monotone heads; the
  // used-sets above remain the ground truth for "already expanded".
  std::vector<std::size_t> alpha_todo, delta_todo, beta_todo;
  std::size_t alpha_head = 0, delta_head = 0, beta_head = 0;
  // Gamma principals: min-heap on (instantiation count, node). An entry with
  // a stale count reheaps lazily; a principal whose candidate stream ran dry
  // parks with the stream size that re-admits it once the stream grows.
  std::priority_queue<std::pair<std::size_t, std::size_t>,
                      std::vector<std::pair<std::size_t, std::size_t>>,
                      std::greater<>>
      gamma_pq;
  std::vector<std::pair<std::size_t, std::size_t>> gamma_parked;  // (watermark, node)
  std::size_t parked_head = 0;
  std::size_t axiom_head = 0;  // axiom pool prefix already on the branch

  void offer_candidate(const TermPtr& t, std::string key) {
    if (!candidate_key_set.insert(key).second) return;
    candidates.push_back(t);
    candidate_keys.push_back(std::move(key));
  }
};

void collect_subterms(const TermPtr& t, BranchState& bs) {
  std::string key = render_term(t);
  if (bs.subterm_keys.insert(key).second) {
    bool eligible = bs.term_cap == 0 || term_size(t) <= bs.term_cap;
    if (eligible) {
      std::set<std::string> tv;
      term_vars(t, tv);
      for (const auto& v : tv)
        if (!bs.param_set.count(v)) { eligible = false; break; }
    }
    if (eligible) bs.offer_candidate(t, std::move(key));
  }
  for (const auto& u : t->args) collect_subterms(u, bs);
}

void collect_formula_terms(const FormulaPtr& f, BranchState& bs) {
  if (f->lhs) collect_subterms(f->lhs, bs);
  if (f->rhs) collect_subterms(f->rhs, bs);
  if (f->bound) collect_subterms(f->bound, bs);
  for (const auto& t : f->args) collect_subterms(t, bs);
  if (f->a) collect_formula_terms(f->a, bs);
  if (f->b) collect_formula_terms(f->b, bs);
}

bool is_gamma_formula(const FormulaPtr& f) {
  return f->kind == Formula::Kind::Forall ||
         (f->kind == Formula::Kind::Not && f->a->kind == Formula::Kind::Exists) ||
         f->kind == Formula::Kind::BoundedForall ||
         (f->kind == Formula::Kind::Not && f->a->kind == Formula::Kind::BoundedExists);
}

// Mirrors alpha_components without building the components.
bool is_alpha_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::And:
    case Formula::Kind::Iff:
      return true;
    case Formula::Kind::Not:
      return f->a->kind == Formula::Kind::Or || f->a->kind == Formula::Kind::Implies ||
             f->a->kind == Formula::Kind::Not;
    default:
      return false;
  }
}

// Mirrors beta_components without building the components.
bool is_beta_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return true;
    case Formula::Kind::Not:
      return f->a->kind == Formula::Kind::And || f->a->kind == Formula::Kind::Iff;
    default:
      return false;
  }
}

bool is_delta_formula(const FormulaPtr& f, bool& bounded) {
  if (f->kind == Formula::Kind::Exists ||
      (f->kind == Formula::Kind::Not && f->a->kind == Formula::Kind::Forall)) {
    bounded = false;
    return true;
  }
  if (f->kind == Formula::Kind::BoundedExists ||
      (f->kind == Formula::Kind::Not && f->a->kind == Formula::Kind::BoundedForall)) {
    bounded = true;
    return true;
  }
  return false;
}

}  // namespace

SearchOutcome search_tableaux(const AxiomInterface& axioms, const FormulaPtr& goal,
                              const SearchOptions& opt, const Registry& reg) {
  SearchOutcome out;
  if (!is_sentence(goal)) return out;

  TableauxProof proof;
  {
    TabNode root;
    root.formula = Formula::lnot(goal);
    root.just.kind = Justification::Kind::NegatedGoal;
    root.parent = 0;
    proof.nodes.push_back(std::move(root));
  }
  std::vector<FormulaPtr> axiom_pool =
      axioms.first ? axioms.first(opt.axiom_window) : std::vector<FormulaPtr>{};
  std::vector<std::string> pool_keys;
  pool_keys.reserve(axiom_pool.size());
  for (const auto& ax : axiom_pool) pool_keys.push_back(render_formula(ax));

  std::set<std::string> seen_names;   // global freshness for parameters
  all_names(proof.nodes[0].formula, seen_names);
  unsigned param_counter = 0;

  // Open leaves; the back is the active branch, so a split pushes the right
  // child under the left and work proceeds depth-first, leftmost-first.
  std::vector<std::size_t> open{0};

  // Fixed tail of the candidate stream: caller hints, then small numerals.
  std::vector<TermPtr> stock_candidates;
  for (const auto& h : opt.hints)
    if (term_ground(h)) stock_candidates.push_back(h);
  for (unsigned v = 0; v <= opt.max_numeral; ++v) stock_candidates.push_back(numeral(v));

  // Parameter registration must precede term collection: a delta node's
  // formula mentions its own parameter.
  auto absorb = [](BranchState& bs, const TabNode& node, std::size_t index) {
    const Justification& j = node.just;
    switch (j.kind) {
      case Justification::Kind::Alpha: bs.alpha_used.insert(j.principal); break;
      case Justification::Kind::Beta: bs.beta_used.insert(j.principal); break;
      case Justification::Kind::Delta:
      case Justification::Kind::BoundedDelta:
        bs.delta_used.insert(j.principal);
        if (bs.param_set.insert(j.param).second) {
          bs.params.push_back(j.param);
          bs.offer_candidate(Term::var(j.param), j.param);
        }
        break;
      case Justification::Kind::Gamma:
      case Justification::Kind::BoundedGamma:
        bs.gamma_used[j.principal].insert(render_term(j.term));
        break;
      default: break;
    }
    if (node.formula) {
      bs.nodes.push_back(index);
      bs.keys.insert(render_formula(node.formula));
      collect_formula_terms(node.formula, bs);
      const FormulaPtr& f = node.formula;
      bool bounded;
      if (is_alpha_formula(f)) {
        bs.alpha_todo.push_back(index);
      } else if (is_delta_formula(f, bounded)) {
        bs.delta_todo.push_back(index);
      } else if (is_beta_formula(f)) {
        bs.beta_todo.push_back(index);
      } else if (is_gamma_formula(f)) {
        // During a rebuild the instantiation marks for this principal arrive
        // after it; the zero count is then stale and reheaps at selection.
        auto it = bs.gamma_used.find(index);
        bs.gamma_pq.push({it == bs.gamma_used.end() ? 0 : it->second.size(), index});
      }
    }
  };

  auto rebuild = [&](std::size_t leaf) {
    BranchState bs;
    bs.term_cap = opt.max_term_size;
    std::vector<std::size_t> chain;
    for (std::size_t cur = leaf;; cur = proof.nodes[cur].parent) {
      chain.push_back(cur);
      if (cur == 0) break;
    }
    std::reverse(chain.begin(), chain.end());
    for (std::size_t n : chain) absorb(bs, proof.nodes[n], n);
    for (const auto& t : stock_candidates) bs.offer_candidate(t, render_term(t));
    return bs;
  };

  auto append = [&](std::size_t parent, TabNode node) {
    node.parent = parent;
    proof.nodes.push_back(std::move(node));
    const TabNode& added = proof.nodes.back();
    if (added.formula) all_names(added.formula, seen_names);
    if (added.just.term) {
      std::set<std::string> tv;
      term_vars(added.just.term, tv);
      seen_names.insert(tv.begin(), tv.end());
    }
    if (!added.just.param.empty()) seen_names.insert(added.just.param);
    return proof.nodes.size() - 1;
  };

  while (!open.empty()) {
    if (proof.nodes.size() >= opt.max_nodes) {
      out.nodes = proof.nodes.size();
      return out;
    }
    std::size_t leaf = open.back();
    BranchState bs = rebuild(leaf);

    // The branch is worked until it closes, so the state survives across
    // iterations of this inner loop; `open` changes only on split or close.
    bool branch_done = false;
    while (!branch_done) {
      if (proof.nodes.size() >= opt.max_nodes ||
          (opt.max_depth != 0 && bs.nodes.size() >= opt.max_depth)) {
        out.nodes = proof.nodes.size();
        return out;
      }

      // 1. closure: probe each formula at and beyond the scan frontier
      // against the indices over the scanned prefix, confirm any hit with
      // the authoritative predicate, and try evaluation closures; surviving
      // formulas are then indexed themselves.
      bool closed = false;
      for (std::size_t a = bs.checked; a < bs.nodes.size() && !closed; ++a) {
        std::size_t na = bs.nodes[a];
        const FormulaPtr& fa = proof.nodes[na].formula;
        auto confirm_close = [&](std::size_t nb) {
          if (closed || !complementary_pair(fa, proof.nodes[nb].formula, reg)) return;
          TabNode cn;
          cn.just.kind = Justification::Kind::Closed;
          cn.just.close = Justification::CloseKind::ComplementaryPair;
          cn.just.i = na;
          cn.just.j = nb;
          append(leaf, std::move(cn));
          closed = true;
        };
        std::string own_key = render_formula(fa);
        std::string inner_key =
            fa->kind == Formula::Kind::Not ? render_formula(fa->a) : std::string();
        if (fa->kind == Formula::Kind::Not) {
          auto it = bs.by_render.find(inner_key);
          if (it != bs.by_render.end()) confirm_close(it->second);
        }
        if (!closed) {
          auto it = bs.not_inner.find(own_key);
          if (it != bs.not_inner.end()) confirm_close(it->second);
        }
        if (!closed && fa->kind == Formula::Kind::CodedAtom) {
          auto it = bs.coded_neg.find(coded_value_key(fa, reg));
          if (it != bs.coded_neg.end()) confirm_close(it->second);
        }
        if (!closed && fa->kind == Formula::Kind::Not &&
            fa->a->kind == Formula::Kind::CodedAtom) {
          auto it = bs.coded_pos.find(coded_value_key(fa->a, reg));
          if (it != bs.coded_pos.end()) confirm_close(it->second);
        }
        if (closed) break;

        if (opt.eval_closure) {
          bool value;
          if (is_atom(fa) && formula_ground(fa) && eval_ground_atom(fa, reg, value) && !value) {
            TabNode cn;
            cn.just.kind = Justification::Kind::Closed;
            cn.just.close = Justification::CloseKind::FalseGroundAtom;
            cn.just.i = na;
            append(leaf, std::move(cn));
            closed = true;
          } else if (fa->kind == Formula::Kind::Not && is_atom(fa->a) &&
                     formula_ground(fa->a) && eval_ground_atom(fa->a, reg, value) && value) {
            TabNode cn;
            cn.just.kind = Justification::Kind::Closed;
            cn.just.close = Justification::CloseKind::TrueGroundAtomNegated;
            cn.just.i = na;
            append(leaf, std::move(cn));
            closed = true;
          }
          if (closed) break;
        }

        bs.by_render.emplace(std::move(own_key), na);
        if (fa->kind == Formula::Kind::Not) {
          bs.not_inner.emplace(std::move(inner_key), na);
          if (fa->a->kind == Formula::Kind::CodedAtom)
            bs.coded_neg.emplace(coded_value_key(fa->a, reg), na);
        } else if (fa->kind == Formula::Kind::CodedAtom) {
          bs.coded_pos.emplace(coded_value_key(fa, reg), na);
        }
      }
      if (closed) {
        open.pop_back();
        branch_done = true;
        continue;
      }
      bs.checked = bs.nodes.size();

      auto push_formula_node = [&](TabNode&& node) {
        std::size_t id = append(leaf, std::move(node));
        absorb(bs, proof.nodes[id], id);
        leaf = id;
        open.back() = id;
      };

      // 2. alpha: add every component of the first unexpanded conjunctive
      // formula.
      bool advanced = false;
      while (bs.alpha_head < bs.alpha_todo.size() && !advanced) {
        std::size_t p = bs.alpha_todo[bs.alpha_head];
        ++bs.alpha_head;
        if (bs.alpha_used.count(p)) continue;
        bs.alpha_used.insert(p);
        auto comps = alpha_components(proof.nodes[p].formula);
        for (unsigned w = 0; w < comps.size(); ++w) {
          if (bs.keys.count(render_formula(comps[w]))) continue;
          TabNode n;
          n.formula = comps[w];
          n.just.kind = Justification::Kind::Alpha;
          n.just.principal = p;
          n.just.which = w;
          push_formula_node(std::move(n));
        }
        advanced = true;
      }
      if (advanced) continue;

      // 3. delta: witness the first unexpanded existential with a fresh
      // parameter.
      while (bs.delta_head < bs.delta_todo.size() && !advanced) {
        std::size_t p = bs.delta_todo[bs.delta_head];
        ++bs.delta_head;
        if (bs.delta_used.count(p)) continue;
        bool bounded = false;
        is_delta_formula(proof.nodes[p].formula, bounded);
        std::string param;
        do {
          param = "k" + std::to_string(++param_counter);
        } while (seen_names.count(param));
        if (!bounded) {
          FormulaPtr inst;
          delta_instance(proof.nodes[p].formula, param, inst);
          TabNode n;
          n.formula = inst;
          n.just.kind = Justification::Kind::Delta;
          n.just.principal = p;
          n.just.param = param;
          push_formula_node(std::move(n));
        } else {
          for (unsigned w = 0; w < 2; ++w) {
            FormulaPtr inst;
            bounded_delta_instance(proof.nodes[p].formula, param, w, inst);
            TabNode n;
            n.formula = inst;
            n.just.kind = Justification::Kind::BoundedDelta;
            n.just.principal = p;
            n.just.param = param;
            n.just.which = w;
            push_formula_node(std::move(n));
          }
        }
        advanced = true;
      }
      if (advanced) continue;

      // 4. beta: split on the first unexpanded disjunctive formula. The left
      // child becomes the new focus; the right child queues under it.
      while (bs.beta_head < bs.beta_todo.size() && !advanced) {
        std::size_t p = bs.beta_todo[bs.beta_head];
        ++bs.beta_head;
        if (bs.beta_used.count(p)) continue;
        auto comps = beta_components(proof.nodes[p].formula);
        TabNode l;
        l.formula = comps[0];
        l.just.kind = Justification::Kind::Beta;
        l.just.principal = p;
        l.just.right = false;
        std::size_t lid = append(leaf, std::move(l));
        TabNode r;
        r.formula = comps[1];
        r.just.kind = Justification::Kind::Beta;
        r.just.principal = p;
        r.just.right = true;
        std::size_t rid = append(leaf, std::move(r));
        open.back() = rid;
        open.push_back(lid);
        absorb(bs, proof.nodes[lid], lid);
        leaf = lid;
        advanced = true;
      }
      if (advanced) continue;

      // 5. axiom introduction: the first pool axiom missing from the branch.
      while (bs.axiom_head < axiom_pool.size() && bs.keys.count(pool_keys[bs.axiom_head]))
        ++bs.axiom_head;
      if (bs.axiom_head < axiom_pool.size()) {
        TabNode n;
        n.formula = axiom_pool[bs.axiom_head];
        n.just.kind = Justification::Kind::AxiomIntro;
        push_formula_node(std::move(n));
        advanced = true;
      }
      if (advanced) continue;

      // 6. gamma: the principal with the fewest instantiations (ties: branch
      // order) consumes its candidate stream through a cursor; a principal
      // that yields no new branch formula parks until the stream grows.
      while (bs.parked_head < bs.gamma_parked.size() &&
             bs.gamma_parked[bs.parked_head].first < bs.candidates.size()) {
        std::size_t p = bs.gamma_parked[bs.parked_head].second;
        ++bs.parked_head;
        auto it = bs.gamma_used.find(p);
        bs.gamma_pq.push({it == bs.gamma_used.end() ? 0 : it->second.size(), p});
      }
      while (!bs.gamma_pq.empty() && !advanced) {
        auto [cnt, p] = bs.gamma_pq.top();
        auto& used = bs.gamma_used[p];
        if (cnt != used.size()) {
          bs.gamma_pq.pop();
          bs.gamma_pq.push({used.size(), p});
          continue;
        }
        std::size_t& cur = bs.gamma_cursor[p];
        while (cur < bs.candidates.size() && !advanced) {
          const TermPtr t = bs.candidates[cur];
          const std::string key = bs.candidate_keys[cur];
          ++cur;
          if (used.count(key)) continue;
          FormulaPtr inst;
          bool bounded = !gamma_instance(proof.nodes[p].formula, t, inst);
          if (bounded && !bounded_gamma_instance(proof.nodes[p].formula, t, inst)) {
            cur = bs.candidates.size();
            break;
          }
          used.insert(key);
          if (bs.keys.count(render_formula(inst))) continue;
          TabNode n;
          n.formula = inst;
          n.just.kind = bounded ? Justification::Kind::BoundedGamma : Justification::Kind::Gamma;
          n.just.principal = p;
          n.just.term = t;
          push_formula_node(std::move(n));
          advanced = true;
        }
        bs.gamma_pq.pop();
        if (advanced) {
          bs.gamma_pq.push({used.size(), p});
        } else {
          bs.gamma_parked.push_back({bs.candidates.size(), p});
        }
      }
      if (advanced) continue;

      // Nothing applies on this branch: the whole search is stuck.
      out.nodes = proof.nodes.size();
      return out;
    }
  }

  out.found = true;
  out.nodes = proof.nodes.size();
  out.proof = std::move(proof);
  return out;
}

// ===== text format =====

namespace {

const char* close_name(Justification::CloseKind c) {
  switch (c) {
    case Justification::CloseKind::ComplementaryPair: return "pair";
    case Justification::CloseKind::FalseGroundAtom: return "false-atom";
    case Justification::CloseKind::TrueGroundAtomNegated: return "true-neg";
  }
  return "?";
}

void render_node_line(const TableauxProof& proof, std::size_t k,
                      const std::vector<std::size_t>& remap, std::ostringstream& os) {
  const TabNode& node = proof.nodes[k];
  const Justification& j = node.just;
  switch (j.kind) {
    case Justification::Kind::NegatedGoal:
      os << "negated-goal";
      break;
    case Justification::Kind::AxiomIntro:
      os << "axiom";
      break;
    case Justification::Kind::Alpha:
      os << "alpha " << remap[j.principal] << ' ' << j.which;
      break;
    case Justification::Kind::Beta:
      os << "beta " << remap[j.principal] << ' ' << (j.right ? "right" : "left");
      break;
    case Justification::Kind::Gamma:
      os << "gamma " << remap[j.principal] << ' ' << render_term(j.term);
      break;
    case Justification::Kind::Delta:
      os << "delta " << remap[j.principal] << ' ' << j.param;
      break;
    case Justification::Kind::BoundedGamma:
      os << "bgamma " << remap[j.principal] << ' ' << render_term(j.term);
      break;
    case Justification::Kind::BoundedDelta:
      os << "bdelta " << remap[j.principal] << ' ' << j.param << ' ' << j.which;
      break;
    case Justification::Kind::Closed:
      os << "closed " << close_name(j.close) << ' ' << remap[j.i];
      if (j.close == Justification::CloseKind::ComplementaryPair) os << ' ' << remap[j.j];
      break;
  }
  if (j.kind != Justification::Kind::Closed) os << " | " << render_formula(node.formula);
}

}  // namespace

std::string render_tableaux_proof(const TableauxProof& proof) {
  // Emit in depth-first order so indentation encodes the tree; justification
  // indices are remapped to emission order.
  std::vector<std::vector<std::size_t>> children(proof.nodes.size());
  for (std::size_t k = 1; k < proof.nodes.size(); ++k) children[proof.nodes[k].parent].push_back(k);
  std::vector<std::size_t> order;
  std::vector<std::size_t> depth(proof.nodes.size(), 0);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    order.push_back(n);
    const auto& cs = children[n];
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
      depth[*it] = depth[n] + 1;
      stack.push_back(*it);
    }
  }
  std::vector<std::size_t> remap(proof.nodes.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = i;

  std::ostringstream os;
  for (std::size_t n : order) {
    for (std::size_t d = 0; d < depth[n]; ++d) os << "  ";
    render_node_line(proof, n, remap, os);
    os << '\n';
  }
  return os.str();
}

TableauxProof parse_tableaux_proof(const std::string& text) {
  TableauxProof proof;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::vector<std::size_t> at_depth;  // node index currently open at each depth
  while (std::getline(in, raw)) {
    ++lineno;
    std::size_t b = raw.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    if (raw[b] == '#') continue;
    if (b % 2 != 0)
      throw ParseError("tableau line " + std::to_string(lineno) + ": odd indentation", 0);
    std::size_t depth = b / 2;
    std::string s = raw.substr(b);
    auto fail = [&](const std::string& m) -> ParseError {
      return ParseError("tableau line " + std::to_string(lineno) + ": " + m, 0);
    };
    if (depth > at_depth.size()) throw fail("indentation skips a level");

    std::string just_part = s;
    std::string formula_part;
    std::size_t bar = s.find('|');
    if (bar != std::string::npos) {
      just_part = s.substr(0, bar);
      formula_part = s.substr(bar + 1);
    }
    std::istringstream js(just_part);
    std::string kw;
    js >> kw;

    TabNode node;
    Justification& j = node.just;
    if (kw == "negated-goal") {
      j.kind = Justification::Kind::NegatedGoal;
    } else if (kw == "axiom") {
      j.kind = Justification::Kind::AxiomIntro;
    } else if (kw == "alpha") {
      j.kind = Justification::Kind::Alpha;
      if (!(js >> j.principal >> j.which)) throw fail("alpha expects principal and component");
    } else if (kw == "beta") {
      j.kind = Justification::Kind::Beta;
      std::string side;
      if (!(js >> j.principal >> side)) throw fail("beta expects principal and side");
      if (side != "left" && side != "right") throw fail("beta side must be left or right");
      j.right = side == "right";
    } else if (kw == "gamma" || kw == "bgamma") {
      j.kind = kw == "gamma" ? Justification::Kind::Gamma : Justification::Kind::BoundedGamma;
      std::string term_text;
      if (!(js >> j.principal >> term_text)) throw fail(kw + " expects principal and term");
      j.term = parse_term(term_text);
    } else if (kw == "delta") {
      j.kind = Justification::Kind::Delta;
      if (!(js >> j.principal >> j.param)) throw fail("delta expects principal and parameter");
    } else if (kw == "bdelta") {
      j.kind = Justification::Kind::BoundedDelta;
      if (!(js >> j.principal >> j.param >> j.which))
        throw fail("bdelta expects principal, parameter and component");
    } else if (kw == "closed") {
      j.kind = Justification::Kind::Closed;
      std::string ck;
      if (!(js >> ck)) throw fail("closed expects a closure kind");
      if (ck == "pair") {
        j.close = Justification::CloseKind::ComplementaryPair;
        if (!(js >> j.i >> j.j)) throw fail("closed pair expects two node indices");
      } else if (ck == "false-atom") {
        j.close = Justification::CloseKind::FalseGroundAtom;
        if (!(js >> j.i)) throw fail("closed false-atom expects a node index");
      } else if (ck == "true-neg") {
        j.close = Justification::CloseKind::TrueGroundAtomNegated;
        if (!(js >> j.i)) throw fail("closed true-neg expects a node index");
      } else {
        throw fail("unknown closure kind " + ck);
      }
    } else {
      throw fail("unknown justification " + kw);
    }

    if (j.kind != Justification::Kind::Closed) {
      if (formula_part.empty()) throw fail("missing formula");
      node.formula = parse_formula(formula_part);
    }

    std::size_t idx = proof.nodes.size();
    if (depth == 0) {
      if (idx != 0) throw fail("only the first line may sit at depth 0");
      node.parent = 0;
    } else {
      node.parent = at_depth[depth - 1];
    }
    at_depth.resize(depth);
    at_depth.push_back(idx);
    proof.nodes.push_back(std::move(node));
  }
  return proof;
}

}  // namespace lstar
