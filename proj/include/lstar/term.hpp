#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lstar/nat.hpp"

namespace lstar {

// ===== function symbols =====

/// The eight interpreted function symbols of the term language. The first six
/// never exceed the maximum of their arguments; Add and Double are the only
/// growth operations.
enum class Fn {
  Sub,     // truncated subtraction, arity 2
  Div,     // floored division, div(x,0) = x, arity 2
  Max,     // arity 2
  Log,     // floor(log2 x), log(0) = log(1) = 0, arity 1
  Root,    // ceil(x^(1/y)), root(x,0) = x, arity 2
  Count,   // ones among the y lowest bits of x, arity 2
  Add,     // arity 2
  Double,  // double(x) = x + x, arity 1
};

unsigned fn_arity(Fn f);
const char* fn_name(Fn f);
/// Returns false if `name` is not one of the eight symbols.
bool fn_from_name(const std::string& name, Fn& out);

// ===== terms =====

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable term tree. Leaves are the literals 0 and 1 or variables; interior
/// nodes apply either an interpreted function symbol or a registered coded
/// function symbol (an opaque name whose semantics live in a Registry).
struct Term {
  enum class Kind { Zero, One, Var, Apply, CodedApply };

  Kind kind;
  Fn fn{Fn::Sub};              // Apply only
  std::string name;            // Var and CodedApply
  std::vector<TermPtr> args;   // Apply and CodedApply

  static TermPtr zero();
  static TermPtr one();
  static TermPtr var(std::string name);
  static TermPtr apply(Fn f, std::vector<TermPtr> args);
  static TermPtr coded(std::string name, std::vector<TermPtr> args);
};

bool term_equal(const TermPtr& a, const TermPtr& b);

/// Collects free variable names into `out` (terms have no binders, so every
/// variable occurrence is free).
void term_vars(const TermPtr& t, std::set<std::string>& out);

/// True when the term contains no variables at all.
bool term_ground(const TermPtr& t);

bool term_contains_var(const TermPtr& t, const std::string& v);

/// Replaces every occurrence of variable v by `repl`.
TermPtr term_substitute(const TermPtr& t, const std::string& v, const TermPtr& repl);

/// Number of nodes in the term tree.
std::size_t term_size(const TermPtr& t);

/// Closed term denoting n, built from 0, 1, add and double by binary
/// expansion. For n >= 2 the symbol count stays below 3 * bitlen(n) + 2.
TermPtr numeral(const Nat& n);

/// Renders in the concrete syntax accepted by the parser.
std::string render_term(const TermPtr& t);

}  // namespace lstar
