#include "lstar/model.hpp"

namespace lstar {

// ---------- registry ----------

void Registry::register_fn(const std::string& name, unsigned arity, CodedFn fn) {
  if (frozen_) throw EvalError("registry is frozen; cannot register " + name);
  if (fns_.count(name) || preds_.count(name))
    throw EvalError("coded symbol registered twice: " + name);
  fns_[name] = {arity, std::move(fn)};
}

void Registry::register_pred(const std::string& name, unsigned arity, CodedPred pred) {
  if (frozen_) throw EvalError("registry is frozen; cannot register " + name);
  if (fns_.count(name) || preds_.count(name))
    throw EvalError("coded symbol registered twice: " + name);
  preds_[name] = {arity, std::move(pred)};
}

Nat Registry::call_fn(const std::string& name, const std::vector<Nat>& args) const {
  if (!frozen_) throw EvalError("registry must be frozen before evaluation");
  auto it = fns_.find(name);
  if (it == fns_.end()) throw EvalError("unregistered coded function: " + name);
  if (args.size() != it->second.arity) throw EvalError("arity mismatch for " + name);
  return it->second.fn(args);
}

bool Registry::call_pred(const std::string& name, const std::vector<Nat>& args) const {
  if (!frozen_) throw EvalError("registry must be frozen before evaluation");
  auto it = preds_.find(name);
  if (it == preds_.end()) throw EvalError("unregistered coded predicate: " + name);
  if (args.size() != it->second.arity) throw EvalError("arity mismatch for " + name);
  return it->second.pred(args);
}

Registry Registry::extended() const {
  Registry r = *this;
  r.frozen_ = false;
  return r;
}

// ---------- term evaluation ----------

// ceil(x^(1/y)) for y >= 1: binary search for the least r with r^y >= x.
// Integer arithmetic only.
static Nat ceil_root(const Nat& x, const Nat& y) {
  if (x <= 1) return x;
  if (y == 1) return x;
  // For x >= 2 the answer is at least 2; it is exactly 2 whenever 2^y >= x.
  if (bitlen(y) > 64) return 2;
  unsigned long e = y.get_ui();
  if (e >= bitlen(x)) return 2;
  // Invariant: lo^e < x, hi^e >= x.
  Nat lo = 1;
  Nat hi = pow2((bitlen(x) + e - 1) / e);
  while (hi - lo > 1) {
    Nat mid = (lo + hi) >> 1;
    Nat p;
    mpz_pow_ui(p.get_mpz_t(), mid.get_mpz_t(), e);
    if (p >= x) hi = mid; else lo = mid;
  }
  return hi;
}

Nat eval_term(const TermPtr& t, const Registry& reg, const Env& env) {
  switch (t->kind) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::One: return 1;
    case Term::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw EvalError("free variable in evaluation: " + t->name);
      return it->second;
    }
    case Term::Kind::CodedApply: {
      std::vector<Nat> args;
      args.reserve(t->args.size());
      for (const auto& u : t->args) args.push_back(eval_term(u, reg, env));
      return reg.call_fn(t->name, args);
    }
    case Term::Kind::Apply: break;
  }
  Nat a = eval_term(t->args[0], reg, env);
  switch (t->fn) {
    case Fn::Log:
      return a <= 1 ? Nat(0) : floor_log2(a);
    case Fn::Double:
      return a + a;
    default: break;
  }
  Nat b = eval_term(t->args[1], reg, env);
  switch (t->fn) {
    case Fn::Add:
      return a + b;
    case Fn::Sub:
      return a <= b ? Nat(0) : Nat(a - b);
    case Fn::Div: {
      if (b == 0) return a;
      Nat q;
      mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      return q;
    }
    case Fn::Max:
      return a >= b ? a : b;
    case Fn::Root:
      return b == 0 ? a : ceil_root(a, b);
    case Fn::Count: {
      // Ones among the b lowest bits of a. Bits above bitlen(a) are zero, so
      // a huge b collapses to a full popcount.
      if (b >= Nat(static_cast<unsigned long>(bitlen(a))))
        return Nat(static_cast<unsigned long>(mpz_popcount(a.get_mpz_t())));
      Nat low;
      mpz_tdiv_r_2exp(low.get_mpz_t(), a.get_mpz_t(), b.get_ui());
      return Nat(static_cast<unsigned long>(mpz_popcount(low.get_mpz_t())));
    }
    default:
      throw EvalError("unreachable function symbol");
  }
}

// ---------- formula evaluation ----------

bool eval_formula(const FormulaPtr& f, const Registry& reg, const Env& env) {
  switch (f->kind) {
    case Formula::Kind::Eq:
      return eval_term(f->lhs, reg, env) == eval_term(f->rhs, reg, env);
    case Formula::Kind::Le:
      return eval_term(f->lhs, reg, env) <= eval_term(f->rhs, reg, env);
    case Formula::Kind::CodedAtom: {
      std::vector<Nat> args;
      args.reserve(f->args.size());
      for (const auto& t : f->args) args.push_back(eval_term(t, reg, env));
      return reg.call_pred(f->name, args);
    }
    case Formula::Kind::Not:
      return !eval_formula(f->a, reg, env);
    case Formula::Kind::And:
      return eval_formula(f->a, reg, env) && eval_formula(f->b, reg, env);
    case Formula::Kind::Or:
      return eval_formula(f->a, reg, env) || eval_formula(f->b, reg, env);
    case Formula::Kind::Implies:
      return !eval_formula(f->a, reg, env) || eval_formula(f->b, reg, env);
    case Formula::Kind::Iff:
      return eval_formula(f->a, reg, env) == eval_formula(f->b, reg, env);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      throw EvalError("unbounded quantifier in evaluation");
    case Formula::Kind::BoundedForall:
    case Formula::Kind::BoundedExists: {
      Nat b = eval_term(f->bound, reg, env);
      bool universal = f->kind == Formula::Kind::BoundedForall;
      Env inner = env;
      for (Nat i = 0; i <= b; ++i) {
        inner[f->name] = i;
        bool v = eval_formula(f->a, reg, inner);
        if (universal && !v) return false;
        if (!universal && v) return true;
      }
      return universal;
    }
  }
  throw EvalError("unreachable formula kind");
}

bool eval_sentence(const FormulaPtr& f, const Registry& reg) {
  if (!is_sentence(f)) throw std::invalid_argument("eval_sentence requires a sentence");
  return eval_formula(f, reg, {});
}

// ---------- bounded truth probe ----------

namespace {

// Enumerates tuples over 0..cap layer by layer: every tuple with maximum
// component m comes before any with maximum m+1 (lexicographic within a
// layer). Visit returns false to stop.
bool scan_layers(std::size_t k, const Nat& cap,
                 const std::function<bool(const std::vector<Nat>&)>& visit) {
  std::vector<Nat> tuple(k);
  for (Nat m = 0; m <= cap; ++m) {
    // Recursive walk over {0..m}^k keeping only tuples that attain m.
    std::function<bool(std::size_t, bool)> walk = [&](std::size_t i, bool hit) -> bool {
      if (i == k) return hit ? visit(tuple) : true;
      for (Nat v = 0; v <= m; ++v) {
        tuple[i] = v;
        if (!walk(i + 1, hit || v == m)) return false;
      }
      return true;
    };
    if (!walk(0, false)) return false;
  }
  return true;
}

}  // namespace

TruthProbeResult probe_truth(const FormulaPtr& f, const Nat& cap, const Registry& reg) {
  if (!is_sentence(f)) throw std::invalid_argument("probe_truth requires a sentence");
  ComplexityClass c = classify(f);
  if (c == ComplexityClass::delta0()) {
    bool v = eval_sentence(f, reg);
    if (v) return {TruthProbeResult::Kind::TrueUpTo, cap, {}, {}};
    return {TruthProbeResult::Kind::FalseWitness, cap, {}, {}};
  }
  if (c != ComplexityClass::pi(1) && c != ComplexityClass::sigma(1))
    throw std::invalid_argument("probe_truth requires Delta0*, Pi1* or Sigma1*");
  bool universal = c.tag == ComplexityClass::Tag::Pi;
  std::vector<std::string> vars;
  const Formula* cur = f.get();
  while (cur->kind == (universal ? Formula::Kind::Forall : Formula::Kind::Exists)) {
    vars.push_back(cur->name);
    cur = cur->a.get();
  }
  FormulaPtr matrix(f, cur);

  TruthProbeResult found{TruthProbeResult::Kind::TrueUpTo, cap, vars, {}};
  bool hit = false;
  scan_layers(vars.size(), cap, [&](const std::vector<Nat>& tuple) {
    Env env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = tuple[i];
    bool v = eval_formula(matrix, reg, env);
    if (universal ? !v : v) {
      found.tuple = tuple;
      hit = true;
      return false;
    }
    return true;
  });
  if (universal) {
    found.kind = hit ? TruthProbeResult::Kind::FalseWitness : TruthProbeResult::Kind::TrueUpTo;
  } else {
    found.kind = hit ? TruthProbeResult::Kind::Witness : TruthProbeResult::Kind::NoWitnessUpTo;
  }
  return found;
}

}  // namespace lstar
