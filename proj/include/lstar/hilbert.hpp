#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lstar/formula.hpp"
#include "lstar/verdict.hpp"

namespace lstar {

// ===== Hilbert-style proofs =====

/// Logical axiom schemas. K, S, N are the propositional base; Q1/Q2 handle the
/// unbounded universal quantifier; E1/E2 are reflexivity and congruence of
/// equality. Instances are written out in full and pattern-checked, so a line
/// carries the instantiated formula rather than the substitution.
enum class Schema { K, S, N, Q1, Q2, E1, E2 };

const char* schema_name(Schema s);
bool schema_from_name(const std::string& name, Schema& out);

struct HilbertLine {
  enum class Kind { Axiom, LogicalAxiom, ModusPonens, Gen };
  Kind kind;
  FormulaPtr formula;       // Axiom: the cited member; LogicalAxiom: the instance
  Schema schema{Schema::K}; // LogicalAxiom only
  std::size_t i = 0;        // ModusPonens: line of the antecedent; Gen: premise line
  std::size_t j = 0;        // ModusPonens: line of the implication
  std::string var;          // Gen: generalized variable
};

struct HilbertProof {
  std::vector<HilbertLine> lines;
};

/// Verifies the proof line by line against the finite axiom list and the goal:
/// Axiom lines must cite (up to structural equality) a member of `axioms`;
/// LogicalAxiom lines must match their schema pattern; ModusPonens i j uses
/// line i as antecedent and line j as the implication; Gen universalizes an
/// earlier line. Cited lines must precede the citing line. The final line must
/// equal `goal`.
Verdict check_hilbert(const std::vector<FormulaPtr>& axioms, const HilbertProof& proof,
                      const FormulaPtr& goal);

/// Formula established by each line, in order (empty on malformed citations).
std::vector<FormulaPtr> hilbert_line_formulas(const HilbertProof& proof);

// ----- text format -----
//
// One line per proof step:
//   axiom <i>                 (0-based index into the axiom list)
//   schema <id> | <formula>   (id in {K,S,N,Q1,Q2,E1,E2})
//   mp <i> <j>                (0-based line numbers)
//   gen <i> <var>
// Blank lines and lines starting with '#' are ignored.

HilbertProof parse_hilbert_proof(const std::string& text, const std::vector<FormulaPtr>& axioms);
std::string render_hilbert_proof(const HilbertProof& proof, const std::vector<FormulaPtr>& axioms);

}  // namespace lstar
