#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "lstar/hilbert.hpp"
#include "lstar/model.hpp"
#include "lstar/parser.hpp"
#include "lstar/tabk.hpp"
#include "lstar/tableaux.hpp"

using namespace lstar;

namespace {

const Registry& reg() {
  static Registry r = [] {
    Registry s;
    s.freeze();
    return s;
  }();
  return r;
}

bool throws_parse_error_with(const std::function<void()>& body, const std::string& needle) {
  try {
    body();
  } catch (const ParseError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace

TEST_CASE("tableaux text survives a render/parse/render cycle") {
  auto axioms = AxiomInterface::from_list({parse_formula("A v. 0 <= v")});
  SearchOptions opts;
  auto outcome = search_tableaux(axioms, parse_formula("0 <= 7"), opts, reg());
  REQUIRE(outcome.found);

  std::string once = render_tableaux_proof(outcome.proof);
  TableauxProof reparsed = parse_tableaux_proof(once);
  CHECK(render_tableaux_proof(reparsed) == once);
  CHECK(check_tableaux(axioms, parse_formula("0 <= 7"), reparsed, reg()).ok);
}

TEST_CASE("tableaux text tolerates comments and blank lines anywhere") {
  std::string text =
      "# header comment\n"
      "negated-goal | ~(add(2,2) = 4)\n"
      "\n"
      "   # indented comment, odd offset is fine for comments\n"
      "  closed true-neg 0\n";
  TableauxProof proof = parse_tableaux_proof(text);
  REQUIRE(proof.nodes.size() == 2);
  auto axioms = AxiomInterface::from_list({});
  CHECK(check_tableaux(axioms, parse_formula("add(2,2) = 4"), proof, reg()).ok);
}

TEST_CASE("tableaux text rejects malformed layout") {
  CHECK(throws_parse_error_with(
      [] {
        parse_tableaux_proof(
            "negated-goal | ~(0 = 0)\n"
            "   closed true-neg 0\n");
      },
      "odd indentation"));
  CHECK(throws_parse_error_with(
      [] {
        parse_tableaux_proof(
            "negated-goal | ~(0 = 0)\n"
            "    closed true-neg 0\n");
      },
      "indentation skips a level"));
  CHECK(throws_parse_error_with(
      [] {
        parse_tableaux_proof(
            "negated-goal | ~(0 = 0)\n"
            "axiom | 0 = 0\n");
      },
      "only the first line may sit at depth 0"));
}

TEST_CASE("tableaux text rejects malformed justifications") {
  CHECK(throws_parse_error_with([] { parse_tableaux_proof("zeta 0 | 0 = 0\n"); },
                                "unknown justification"));
  CHECK(throws_parse_error_with(
      [] {
        parse_tableaux_proof(
            "negated-goal | ~((0 = 0) | (0 = 1))\n"
            "  beta 0 sideways | 0 = 0\n");
      },
      "beta side must be left or right"));
  CHECK(throws_parse_error_with(
      [] {
        parse_tableaux_proof(
            "negated-goal | ~(0 = 1)\n"
            "  closed pair 0\n");
      },
      "closed pair expects two node indices"));
  CHECK(throws_parse_error_with(
      [] {
        parse_tableaux_proof(
            "negated-goal | ~(0 = 1)\n"
            "  closed open-leaf 0\n");
      },
      "unknown closure kind"));
  CHECK(throws_parse_error_with(
      [] {
        parse_tableaux_proof(
            "negated-goal | ~((0 = 0) & (0 = 1))\n"
            "  alpha 0 0 |\n");
      },
      "missing formula"));
  CHECK(throws_parse_error_with([] { parse_tableaux_proof("alpha 0 | 0 = 0\n"); },
                                "alpha expects principal and component"));
}

TEST_CASE("hilbert text survives a render/parse/render cycle") {
  std::vector<FormulaPtr> axioms = {parse_formula("A x. 0 <= x")};
  std::string text =
      "# derive a ground instance\n"
      "axiom 0\n"
      "\n"
      "schema Q1 | (A x. 0 <= x) -> (0 <= 5)\n"
      "mp 0 1\n";
  HilbertProof proof = parse_hilbert_proof(text, axioms);
  auto verdict = check_hilbert(axioms, proof, parse_formula("0 <= 5"));
  REQUIRE(verdict.ok);

  std::string once = render_hilbert_proof(proof, axioms);
  HilbertProof reparsed = parse_hilbert_proof(once, axioms);
  CHECK(render_hilbert_proof(reparsed, axioms) == once);
  CHECK(check_hilbert(axioms, reparsed, parse_formula("0 <= 5")).ok);
}

TEST_CASE("hilbert render refuses an axiom line outside the axiom list") {
  HilbertProof proof;
  HilbertLine line;
  line.kind = HilbertLine::Kind::Axiom;
  line.formula = parse_formula("0 = 0");
  proof.lines.push_back(line);
  CHECK_THROWS_AS((void)render_hilbert_proof(proof, {parse_formula("0 = 1")}),
                  std::invalid_argument);
}

TEST_CASE("hilbert text rejects malformed lines") {
  std::vector<FormulaPtr> axioms = {parse_formula("0 = 0")};
  CHECK(throws_parse_error_with([&] { (void)parse_hilbert_proof("lemma 0\n", axioms); },
                                "unknown step keyword"));
  CHECK(throws_parse_error_with([&] { (void)parse_hilbert_proof("axiom 3\n", axioms); },
                                "axiom index out of range"));
  CHECK(throws_parse_error_with([&] { (void)parse_hilbert_proof("schema Z9 | 0 = 0\n", axioms); },
                                "unknown schema"));
  CHECK(throws_parse_error_with(
      [&] { (void)parse_hilbert_proof("schema K (0 = 0) -> ((0 = 1) -> (0 = 0))\n", axioms); },
      "expected '|' before the instance formula"));
  CHECK(throws_parse_error_with([&] { (void)parse_hilbert_proof("mp 0\n", axioms); },
                                "expected two line numbers"));
  CHECK(throws_parse_error_with([&] { (void)parse_hilbert_proof("gen 0\n", axioms); },
                                "expected line number and variable"));
}

TEST_CASE("tabk text survives a render/parse/render cycle") {
  std::string text =
      "level 1\n"
      "step 0: add(1,1) = 2\n"
      "  negated-goal | ~(add(1,1) = 2)\n"
      "    closed true-neg 0\n";
  TabKProof proof = parse_tabk_proof(text);
  REQUIRE(proof.level == 1);
  REQUIRE(proof.steps.size() == 1);

  std::string once = render_tabk_proof(proof);
  TabKProof reparsed = parse_tabk_proof(once);
  CHECK(render_tabk_proof(reparsed) == once);

  auto axioms = AxiomInterface::from_list({});
  CHECK(check_tabk(axioms, 1, parse_formula("add(1,1) = 2"), reparsed, reg()).ok);
}

TEST_CASE("tabk text rejects malformed structure") {
  CHECK(throws_parse_error_with([] { (void)parse_tabk_proof("step 0: 0 = 0\n"); },
                                "step before level"));
  CHECK(throws_parse_error_with(
      [] {
        (void)parse_tabk_proof(
            "level 1\n"
            "level 2\n");
      },
      "duplicate level line"));
  CHECK(throws_parse_error_with([] { (void)parse_tabk_proof("  negated-goal | ~(0 = 0)\n"); },
                                "indented line outside a step"));
  CHECK(throws_parse_error_with(
      [] {
        (void)parse_tabk_proof(
            "level 1\n"
            "step 1: 0 = 0\n");
      },
      "step index out of order"));
  CHECK(throws_parse_error_with(
      [] {
        (void)parse_tabk_proof(
            "level 1\n"
            "theorem 0 = 0\n");
      },
      "expected 'level' or 'step'"));
  CHECK(throws_parse_error_with([] { (void)parse_tabk_proof("# nothing here\n"); },
                                "missing level line"));
}
