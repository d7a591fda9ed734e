#include "lstar/classify.hpp"

#include <stdexcept>

namespace lstar {

std::string to_string(const ComplexityClass& c) {
  switch (c.tag) {
    case ComplexityClass::Tag::Delta0: return "Delta0*";
    case ComplexityClass::Tag::Pi: return "Pi" + std::to_string(c.n) + "*";
    case ComplexityClass::Tag::Sigma: return "Sigma" + std::to_string(c.n) + "*";
    case ComplexityClass::Tag::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

// True when no unbounded quantifier occurs anywhere below f.
static bool bounded_only(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Le:
    case Formula::Kind::CodedAtom:
      return true;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return false;
    case Formula::Kind::Not:
    case Formula::Kind::BoundedForall:
    case Formula::Kind::BoundedExists:
      return bounded_only(f->a);
    default:
      return bounded_only(f->a) && bounded_only(f->b);
  }
}

ComplexityClass classify(const FormulaPtr& f) {
  if (bounded_only(f)) return ComplexityClass::delta0();
  // Walk the unbounded prefix, merging adjacent same-kind quantifiers into
  // blocks and counting alternations.
  const Formula* cur = f.get();
  bool first_universal = cur->kind == Formula::Kind::Forall;
  if (cur->kind != Formula::Kind::Forall && cur->kind != Formula::Kind::Exists)
    return ComplexityClass::unclassified();
  unsigned blocks = 0;
  Formula::Kind block = cur->kind;
  while (cur->kind == Formula::Kind::Forall || cur->kind == Formula::Kind::Exists) {
    if (blocks == 0 || cur->kind != block) {
      ++blocks;
      block = cur->kind;
    }
    cur = cur->a.get();
  }
  // Everything under the prefix must be a Delta0 matrix. The aliasing
  // constructor keeps f's tree alive while we look at an interior node.
  FormulaPtr matrix(f, cur);
  if (!bounded_only(matrix)) return ComplexityClass::unclassified();
  return first_universal ? ComplexityClass::pi(blocks) : ComplexityClass::sigma(blocks);
}

bool complexity_at_most(const FormulaPtr& f, unsigned k) {
  ComplexityClass c = classify(f);
  switch (c.tag) {
    case ComplexityClass::Tag::Delta0: return true;
    case ComplexityClass::Tag::Pi:
    case ComplexityClass::Tag::Sigma: return c.n <= k;
    case ComplexityClass::Tag::Unclassified: return false;
  }
  return false;
}

FormulaPtr negate_to_sigma(const FormulaPtr& f) {
  if (classify(f) != ComplexityClass::pi(1))
    throw std::invalid_argument("negate_to_sigma expects a Pi1* formula");
  std::vector<std::string> prefix;
  const Formula* cur = f.get();
  while (cur->kind == Formula::Kind::Forall) {
    prefix.push_back(cur->name);
    cur = cur->a.get();
  }
  FormulaPtr matrix(f, cur);
  FormulaPtr negated = matrix->kind == Formula::Kind::Not ? matrix->a : Formula::lnot(matrix);
  FormulaPtr out = negated;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    out = Formula::exists(*it, out);
  return out;
}

}  // namespace lstar
