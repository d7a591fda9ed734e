#pragma once

#include <memory>
#include <string>

#include "lstar/axioms.hpp"

namespace lstar {

/// Bounds every unbounded universal quantifier of a prenex sentence by
/// root(x,2) under a fresh outer A x (rendered through the strict-bound
/// sugar, so each A u becomes A u <= sub(root(x,2),1)). Existential and
/// bounded quantifiers are untouched. A sentence whose prefix has no
/// unbounded universal quantifier is returned unchanged. Throws
/// std::invalid_argument when the input is not generalized prenex.
FormulaPtr oplus(const FormulaPtr& phi);

// ===== provability over a completed system =====

/// A completed system's registry extended with a binary provability
/// predicate: prf_name(x, p) holds iff p codes a proof of the sentence coded
/// x from the system's axioms under its own deduction method. The name is
/// prftab0 or prftab1 accordingly.
struct ReflectionContext {
  std::shared_ptr<Registry> reg;
  std::string prf_name;
};

ReflectionContext make_reflection_context(const AxiomSystem& sys);

/// A p (prf(numeral(encode(phi)), p) -> phi). Throws std::invalid_argument
/// unless phi classifies Delta0* or Sigma1*.
FormulaPtr reflection_sentence(const ReflectionContext& rc, const FormulaPtr& phi);

/// For phi = A u1 .. A un. theta with theta Sigma1* (phi classifies Pi2*):
/// A p (prf(numeral(encode(phi)), p) -> oplus(phi)). The consequent bounds
/// exactly the universal block, so it equals oplus(phi) by construction.
FormulaPtr root_diluted_sentence(const ReflectionContext& rc, const FormulaPtr& phi);

/// General builder over any classifiable sentence: Plain keeps phi as the
/// consequent, Diluted uses oplus(phi).
enum class ReflectMode { Plain, Diluted };
FormulaPtr brxefl_sentence(const ReflectionContext& rc, ReflectMode mode, const FormulaPtr& phi);

// ===== product halves =====

/// Splits a*b at k = max(bitlen(a), bitlen(b), 1) bits:
/// right_half = (a*b) mod 2^k, left_half = floor((a*b) / 2^k), so
/// left_half * 2^k + right_half = a*b and both halves fit in k bits.
Nat left_half(const Nat& a, const Nat& b);
Nat right_half(const Nat& a, const Nat& b);

}  // namespace lstar
