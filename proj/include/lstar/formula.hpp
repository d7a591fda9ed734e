#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lstar/term.hpp"

namespace lstar {

// ===== formulas =====

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula tree. Atoms are equality, the order relation, or a coded
/// atom (opaque predicate name, evaluated through a Registry). Quantifiers come
/// in unbounded and bounded flavours; a bounded quantifier carries a bound term
/// that must not mention the bound variable.
struct Formula {
  enum class Kind {
    Eq,             // lhs = rhs
    Le,             // lhs <= rhs
    CodedAtom,      // name(args...)
    Not,            // ~a
    And,            // a & b
    Or,             // a | b
    Implies,        // a -> b
    Iff,            // a <-> b
    Forall,         // A name. a
    Exists,         // E name. a
    BoundedForall,  // A name <= bound. a
    BoundedExists,  // E name <= bound. a
  };

  Kind kind;
  TermPtr lhs, rhs;            // Eq, Le
  std::string name;            // CodedAtom name, or quantified variable
  std::vector<TermPtr> args;   // CodedAtom
  FormulaPtr a, b;             // children; quantifier body lives in a
  TermPtr bound;               // bounded quantifiers

  static FormulaPtr eq(TermPtr l, TermPtr r);
  static FormulaPtr le(TermPtr l, TermPtr r);
  static FormulaPtr atom(std::string name, std::vector<TermPtr> args);
  static FormulaPtr lnot(FormulaPtr f);
  static FormulaPtr land(FormulaPtr l, FormulaPtr r);
  static FormulaPtr lor(FormulaPtr l, FormulaPtr r);
  static FormulaPtr implies(FormulaPtr l, FormulaPtr r);
  static FormulaPtr iff(FormulaPtr l, FormulaPtr r);
  static FormulaPtr forall(std::string v, FormulaPtr body);
  static FormulaPtr exists(std::string v, FormulaPtr body);
  /// Throws std::invalid_argument when `bound` contains v.
  static FormulaPtr bforall(std::string v, TermPtr bound, FormulaPtr body);
  static FormulaPtr bexists(std::string v, TermPtr bound, FormulaPtr body);
};

bool formula_equal(const FormulaPtr& f, const FormulaPtr& g);

void free_vars(const FormulaPtr& f, std::set<std::string>& out);
std::set<std::string> free_vars(const FormulaPtr& f);

/// Every identifier occurring anywhere in the formula: free variables, bound
/// variables and coded symbol names are all included. Used for freshness.
void all_names(const FormulaPtr& f, std::set<std::string>& out);

bool is_sentence(const FormulaPtr& f);

/// Capture-avoiding substitution of `repl` for free occurrences of v. Bound
/// variables are renamed (v', v'', ...) when they would capture a variable of
/// `repl`.
FormulaPtr substitute(const FormulaPtr& f, const std::string& v, const TermPtr& repl);

std::size_t formula_size(const FormulaPtr& f);

std::string render_formula(const FormulaPtr& f);

// ===== derived connectives and schematic builders =====

/// a < b is shorthand for a <= sub(b,1). Exact whenever b >= 1; at b = 0 it
/// degenerates to a <= 0.
FormulaPtr lt(TermPtr a, TermPtr b);

/// Three-place multiplication graph over {=, <=} and the non-growth symbols:
///   ((x = 0 | y = 0) -> z = 0)
/// & ((~(x = 0) & ~(y = 0)) -> (div(z,x) = y & div(sub(z,1),x) < y))
/// Open formula in the three given variable names. The strict comparison is
/// the `<` shorthand, exact here because y >= 1 under the antecedent.
FormulaPtr mult_relation(const std::string& x, const std::string& y, const std::string& z);

/// add(x,y) = z as an open formula, used by the addrel(x,y,z) surface macro.
FormulaPtr add_relation(const std::string& x, const std::string& y, const std::string& z);

}  // namespace lstar
