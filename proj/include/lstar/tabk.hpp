#pragma once

#include "lstar/tableaux.hpp"

namespace lstar {

// ===== staged tableau proofs =====

/// One stage: a theorem together with a closed tableau deriving it from the
/// axioms extended by all earlier stage theorems.
struct TabKStep {
  FormulaPtr theorem;
  TableauxProof proof;
};

/// A level-k staged proof. Every theorem except the last must have complexity
/// at most Pi_k*/Sigma_k* (Delta0* qualifies at every level); the last
/// theorem is the goal and is unconstrained.
struct TabKProof {
  unsigned level = 1;
  std::vector<TabKStep> steps;

  std::size_t total_nodes() const {
    std::size_t n = 0;
    for (const auto& s : steps) n += s.proof.size();
    return n;
  }
};

/// Checks all stages in order at level k: intermediate theorems must satisfy
/// complexity_at_most(_, k); stage i's tableau is checked against
/// axioms ∪ {theorems of stages 0..i-1}; the final theorem must equal goal.
Verdict check_tabk(const AxiomInterface& axioms, unsigned k, const FormulaPtr& goal,
                   const TabKProof& proof, const Registry& reg);

// ----- text format -----
//
// Header line `level <k>`, then for each stage a line `step <i>: <theorem>`
// followed by that stage's tableau block (same syntax as the tableau format,
// indented by at least one extra level relative to the step line).

TabKProof parse_tabk_proof(const std::string& text);
std::string render_tabk_proof(const TabKProof& proof);

}  // namespace lstar
