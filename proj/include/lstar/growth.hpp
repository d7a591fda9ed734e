#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lstar/model.hpp"
#include "lstar/tabk.hpp"

namespace lstar {

/// The two reference growth sequences: seq_x(n) = 2^(n+1) doubles once per
/// step, seq_y(n) = 2^(2^n) squares once per step.
Nat seq_x(unsigned n);
Nat seq_y(unsigned n);

/// gr(i, v, w) holds iff w = 2^(2^i) * v. Decided without materializing
/// 2^(2^i): the quotient w/v must be an exact power of two whose exponent has
/// a single set bit in position i.
bool gr_holds(const Nat& i, const Nat& v, const Nat& w);
void register_gr(Registry& reg);

/// A v. gr(0, v, double(v)) — the pointwise scaling base.
FormulaPtr gr_base_axiom();
/// A i A v A u A w ((gr(i,v,u) & gr(i,u,w)) -> gr(add(i,1),v,w)) — two
/// applications of scale i compose into one application of scale i+1.
FormulaPtr gr_composition_axiom();
/// Both of the above; every member classifies Pi1*.
std::vector<FormulaPtr> growth_beta();

/// A v E w gr(numeral(i), v, w): scaling by 2^(2^i) is total. Classifies
/// Pi2*.
FormulaPtr upsilon(unsigned i);

/// Level-2 chain deriving upsilon(n): steps upsilon(0), ..., upsilon(n),
/// the base step from gr_base_axiom and each later step from its predecessor
/// plus the composition axiom. Every step has a fixed node count, so the
/// chain total is exactly affine in n. Requires n >= 1.
TabKProof tab2_upsilon_proof(unsigned n);

/// Scans w = 0..cap for gr(n, 1, w); at most one w qualifies.
std::optional<Nat> solve_gr_witness(unsigned n, const Nat& cap);

// ===== measurements =====

struct GrowthRow {
  unsigned n = 0;
  std::size_t tab2_nodes = 0;
  bool tab2_ok = false;
  bool tab1_found = false;
  std::size_t tab1_nodes = 0;
  bool witness_checked = false;  // witness solve runs for n <= 4 only
  bool witness_ok = false;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
};

/// One row per n in 1..nmax: the generated chain's node count and checker
/// verdict at level 2, the direct level-0 search outcome for upsilon(n)
/// under the node budget (tab1_budget = 0 skips the search entirely), and
/// for n <= 4 whether the solved scaling witness for v = 1 equals seq_y(n).
GrowthReport growth_report(unsigned nmax, std::size_t tab1_budget);

/// CSV: n,tab2_nodes,tab2_ok,tab1_nodes_or_exhausted,witness_ok. The tab1
/// column is the node count when search succeeded, else
/// `exhausted(<nodes expanded>)`; witness_ok is 1/0 for n <= 4 and blank
/// beyond.
std::string render_growth_csv(const GrowthReport& report);
std::string render_growth_table(const GrowthReport& report);

}  // namespace lstar
