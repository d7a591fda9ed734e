#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lstar/formula.hpp"
#include "lstar/model.hpp"
#include "lstar/verdict.hpp"

namespace lstar {

// ===== axiom sets =====

/// An axiom set as consumed by the proof engines: a decidable membership test
/// plus an enumerator returning the first n members (used by proof search;
/// enumeration order is fixed per system). Finite sets enumerate themselves
/// and then pad nothing.
struct AxiomInterface {
  std::function<bool(const FormulaPtr&)> contains;
  std::function<std::vector<FormulaPtr>(std::size_t)> first;

  static AxiomInterface from_list(std::vector<FormulaPtr> members);
};

// ===== tableau proofs =====

/// Justification attached to each node of a tableau. `principal` refers to the
/// node (by index) whose formula the rule decomposes; it must lie on the same
/// branch, strictly above. Closure kinds: ComplementaryPair cites two branch
/// formulas phi and ~phi (for coded atoms, complementary up to per-argument
/// value equality); FalseGroundAtom cites a ground atom evaluating false;
/// TrueGroundAtomNegated cites a negated ground atom whose atom evaluates
/// true.
struct Justification {
  enum class Kind {
    NegatedGoal, AxiomIntro, Alpha, Beta, Gamma, Delta,
    BoundedGamma, BoundedDelta, Closed,
  };
  enum class CloseKind { ComplementaryPair, FalseGroundAtom, TrueGroundAtomNegated };

  Kind kind;
  std::size_t principal = 0;
  unsigned which = 0;          // Alpha / BoundedDelta component selector
  bool right = false;          // Beta: which side of the split
  TermPtr term;                // Gamma / BoundedGamma instantiation
  std::string param;           // Delta / BoundedDelta fresh parameter
  CloseKind close{CloseKind::ComplementaryPair};
  std::size_t i = 0, j = 0;    // Closed citations
};

/// One tableau node. Nodes are stored in preorder; `parent` is the tree
/// parent (node 0 is the root and is its own parent). Closed nodes are leaves
/// and carry no formula.
struct TabNode {
  FormulaPtr formula;
  Justification just;
  std::size_t parent = 0;
};

struct TableauxProof {
  std::vector<TabNode> nodes;
  std::size_t size() const { return nodes.size(); }
};

/// Checks a closed tableau for `goal` over the axiom set. The root must be
/// ~goal with justification NegatedGoal; every expansion must be licensed by
/// its rule; delta parameters must be globally fresh; every leaf must be
/// Closed with a valid closure. The registry interprets coded symbols inside
/// ground-evaluation closures.
Verdict check_tableaux(const AxiomInterface& axioms, const FormulaPtr& goal,
                       const TableauxProof& proof, const Registry& reg);

// ===== proof search =====

struct SearchOptions {
  std::size_t max_nodes = 10000;
  /// Longest branch (formula count) the search may grow; 0 = unlimited.
  std::size_t max_depth = 0;
  /// Gamma instantiation candidates accumulate in discovery order: branch
  /// subterms and parameters as they appear, with caller hints and the
  /// numerals 0..max_numeral appended once when a branch starts.
  unsigned max_numeral = 8;
  /// Extra gamma candidates supplied by the caller.
  std::vector<TermPtr> hints;
  /// Subterms above this node count never become gamma candidates, which
  /// keeps instance sizes from feeding back into ever larger instances.
  /// Hints are exempt. 0 = no cap.
  std::size_t max_term_size = 48;
  /// When false, branches may only close by complementary pair, never by
  /// ground evaluation.
  bool eval_closure = true;
  /// How many axioms the enumerator is asked for.
  std::size_t axiom_window = 64;
};

struct SearchOutcome {
  bool found = false;
  TableauxProof proof;        // valid when found
  std::size_t nodes = 0;      // nodes expanded (proof size when found)
};

/// Deterministic bounded search: expands the leftmost open branch, preferring
/// closure, then non-branching rules, then splits, then axiom introduction,
/// then gamma instantiation with a fair per-formula candidate cursor.
/// Exhaustion (budget hit or no applicable rule) reports found = false with
/// the node count at stop.
SearchOutcome search_tableaux(const AxiomInterface& axioms, const FormulaPtr& goal,
                              const SearchOptions& opt, const Registry& reg);

// ----- text format -----
//
// One node per line; tree shape is given by two-space indentation. Each line
// is `<justification> | <formula>` (Closed lines omit the formula):
//   negated-goal | <formula>
//   axiom | <formula>
//   alpha <principal> <which> | <formula>
//   beta <principal> left|right | <formula>
//   gamma <principal> <term> | <formula>
//   delta <principal> <param> | <formula>
//   bgamma <principal> <term> | <formula>
//   bdelta <principal> <param> <which> | <formula>
//   closed pair <i> <j>  /  closed false-atom <i>  /  closed true-neg <i>
// Node indices are line order (preorder), 0-based.

TableauxProof parse_tableaux_proof(const std::string& text);
std::string render_tableaux_proof(const TableauxProof& proof);

}  // namespace lstar
