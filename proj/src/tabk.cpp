#include "lstar/tabk.hpp"

#include <sstream>

#include "lstar/classify.hpp"
#include "lstar/parser.hpp"

namespace lstar {

Verdict check_tabk(const AxiomInterface& axioms, unsigned k, const FormulaPtr& goal,
                   const TabKProof& proof, const Registry& reg) {
  if (proof.level != k) return Verdict::reject("proof level does not match requested level");
  if (proof.steps.empty()) return Verdict::reject("no steps");

  // Theorems established by earlier steps join the axiom base of later ones.
  auto established = std::make_shared<std::vector<FormulaPtr>>();
  AxiomInterface stage;
  stage.contains = [&axioms, established](const FormulaPtr& f) {
    if (axioms.contains(f)) return true;
    for (const auto& t : *established)
      if (formula_equal(t, f)) return true;
    return false;
  };
  stage.first = [&axioms, established](std::size_t n) {
    std::vector<FormulaPtr> out = axioms.first(n);
    for (const auto& t : *established) {
      if (out.size() >= n) break;
      out.push_back(t);
    }
    return out;
  };

  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const TabKStep& step = proof.steps[i];
    bool last = i + 1 == proof.steps.size();
    std::string where = "step " + std::to_string(i) + ": ";
    if (last) {
      if (!formula_equal(step.theorem, goal))
        return Verdict::reject(where + "final theorem differs from the goal");
    } else if (!complexity_at_most(step.theorem, k)) {
      return Verdict::reject(where + "intermediate theorem exceeds level " + std::to_string(k) +
                             " (" + to_string(classify(step.theorem)) + ")");
    }
    Verdict v = check_tableaux(stage, step.theorem, step.proof, reg);
    if (!v) return Verdict::reject(where + v.reason);
    established->push_back(step.theorem);
  }
  return Verdict::accept();
}

// ===== text format =====

std::string render_tabk_proof(const TabKProof& proof) {
  std::ostringstream os;
  os << "level " << proof.level << '\n';
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    os << "step " << i << ": " << render_formula(proof.steps[i].theorem) << '\n';
    std::istringstream block(render_tableaux_proof(proof.steps[i].proof));
    std::string line;
    while (std::getline(block, line)) os << "  " << line << '\n';
  }
  return os.str();
}

TabKProof parse_tabk_proof(const std::string& text) {
  TabKProof proof;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_level = false;
  std::string pending_block;
  FormulaPtr pending_theorem;
  bool in_step = false;

  auto flush = [&]() {
    if (!in_step) return;
    TabKStep step;
    step.theorem = pending_theorem;
    step.proof = parse_tableaux_proof(pending_block);
    proof.steps.push_back(std::move(step));
    pending_block.clear();
    in_step = false;
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto fail = [&](const std::string& m) -> ParseError {
      return ParseError("line " + std::to_string(lineno) + ": " + m, 0);
    };
    std::size_t b = line.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    if (line[b] == '#' && b == 0) continue;
    if (b >= 2) {
      if (!in_step) throw fail("indented line outside a step");
      pending_block += line.substr(2);
      pending_block += '\n';
      continue;
    }
    if (b != 0) throw fail("unexpected indentation");
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "level") {
      if (have_level) throw fail("duplicate level line");
      if (!(ls >> proof.level)) throw fail("level expects a number");
      have_level = true;
    } else if (kw == "step") {
      if (!have_level) throw fail("step before level line");
      flush();
      std::string idx_text;
      ls >> idx_text;
      if (idx_text.empty() || idx_text.back() != ':') throw fail("step expects '<index>:'");
      std::size_t idx = std::stoul(idx_text.substr(0, idx_text.size() - 1));
      if (idx != proof.steps.size()) throw fail("step index out of order");
      std::string rest;
      std::getline(ls, rest);
      pending_theorem = parse_formula(rest);
      in_step = true;
    } else {
      throw fail("expected 'level' or 'step'");
    }
  }
  flush();
  if (!have_level) throw ParseError("missing level line", 0);
  return proof;
}

}  // namespace lstar
