#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lstar/classify.hpp"
#include "lstar/formula.hpp"
#include "lstar/nat.hpp"

namespace lstar {

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bindings for coded function and predicate symbols. A registry must be
/// frozen before any evaluation consults it; registration after freezing is an
/// error. Bound semantics must be total and deterministic; predicates signal
/// malformed inputs by returning false, never by throwing.
class Registry {
 public:
  using CodedFn = std::function<Nat(const std::vector<Nat>&)>;
  using CodedPred = std::function<bool(const std::vector<Nat>&)>;

  void register_fn(const std::string& name, unsigned arity, CodedFn fn);
  void register_pred(const std::string& name, unsigned arity, CodedPred pred);
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  bool has_fn(const std::string& name) const { return fns_.count(name) != 0; }
  bool has_pred(const std::string& name) const { return preds_.count(name) != 0; }

  Nat call_fn(const std::string& name, const std::vector<Nat>& args) const;
  bool call_pred(const std::string& name, const std::vector<Nat>& args) const;

  /// Unfrozen copy carrying all current bindings; used to extend a completed
  /// system's registry with further predicates.
  Registry extended() const;

 private:
  struct FnEntry { unsigned arity; CodedFn fn; };
  struct PredEntry { unsigned arity; CodedPred pred; };
  std::map<std::string, FnEntry> fns_;
  std::map<std::string, PredEntry> preds_;
  bool frozen_ = false;
};

/// Variable assignment used when evaluating open formulas.
using Env = std::map<std::string, Nat>;

/// Value of a term under `env`. Throws EvalError on a variable missing from
/// env or an unregistered coded symbol.
Nat eval_term(const TermPtr& t, const Registry& reg, const Env& env = {});

/// Truth value of a formula whose quantifiers are all bounded. A bounded
/// quantifier over bound b ranges over 0..b inclusive. Throws EvalError on an
/// unbounded quantifier.
bool eval_formula(const FormulaPtr& f, const Registry& reg, const Env& env = {});

/// eval_formula restricted to sentences; throws std::invalid_argument when f
/// has free variables.
bool eval_sentence(const FormulaPtr& f, const Registry& reg);

/// Outcome of a bounded truth scan. For a Pi1* sentence the scan looks for a
/// counterexample tuple with every component <= cap: TrueUpTo means none was
/// found, FalseWitness carries a refuting tuple (the matrix evaluates false on
/// it). For a Sigma1* sentence the scan is the mirror image: Witness carries a
/// tuple making the matrix true, NoWitnessUpTo means none exists below cap.
/// Delta0* sentences are evaluated outright and report TrueUpTo/FalseWitness
/// with an empty tuple.
struct TruthProbeResult {
  enum class Kind { TrueUpTo, FalseWitness, Witness, NoWitnessUpTo };
  Kind kind;
  Nat bound;
  std::vector<std::string> vars;
  std::vector<Nat> tuple;

  bool refuted() const { return kind == Kind::FalseWitness; }
  bool witnessed() const { return kind == Kind::Witness; }
};

/// Scans tuples in increasing max-norm order (all tuples of maximum m before
/// any of maximum m+1, lexicographic within a layer), so the reported tuple is
/// minimal in that order. Throws std::invalid_argument unless f is a sentence
/// classifying Delta0*, Pi1* or Sigma1*.
TruthProbeResult probe_truth(const FormulaPtr& f, const Nat& cap, const Registry& reg);

}  // namespace lstar
