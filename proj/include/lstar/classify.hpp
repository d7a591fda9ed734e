#pragma once

#include <string>

#include "lstar/formula.hpp"

namespace lstar {

/// Position of a formula in the bounded-quantifier hierarchy. Delta0 means
/// every quantifier is bounded (coded atoms count as atomic). Pi(n) / Sigma(n)
/// mean n alternating unbounded blocks over a Delta0 matrix, outermost block
/// universal / existential. Anything that is not in generalized prenex shape
/// (all unbounded quantifiers forming an outermost prefix) is Unclassified.
struct ComplexityClass {
  enum class Tag { Delta0, Pi, Sigma, Unclassified };
  Tag tag = Tag::Unclassified;
  unsigned n = 0;

  static ComplexityClass delta0() { return {Tag::Delta0, 0}; }
  static ComplexityClass pi(unsigned n) { return {Tag::Pi, n}; }
  static ComplexityClass sigma(unsigned n) { return {Tag::Sigma, n}; }
  static ComplexityClass unclassified() { return {Tag::Unclassified, 0}; }

  bool operator==(const ComplexityClass&) const = default;
};

std::string to_string(const ComplexityClass& c);

ComplexityClass classify(const FormulaPtr& f);

/// True when classify(f) is Delta0, or Pi(j)/Sigma(j) with j <= k.
/// Unclassified formulas never qualify.
bool complexity_at_most(const FormulaPtr& f, unsigned k);

/// For a Pi(1) sentence A v1...A vk. M, returns E v1...E vk. M' where M' is
/// the negated matrix (an outer ~ is stripped instead of doubled, so applying
/// the negation twice gives back the original matrix). Throws
/// std::invalid_argument unless classify(f) is Pi(1).
FormulaPtr negate_to_sigma(const FormulaPtr& f);

}  // namespace lstar
