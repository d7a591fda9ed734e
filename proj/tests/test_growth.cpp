#include <doctest.h>

#include <string>

#include "lstar/growth.hpp"
#include "lstar/parser.hpp"

using namespace lstar;

namespace {

Registry growth_registry() {
  Registry reg;
  register_gr(reg);
  reg.freeze();
  return reg;
}

}  // namespace

TEST_CASE("the reference sequences double and square") {
  CHECK(seq_x(0) == 2);
  CHECK(seq_x(1) == 4);
  CHECK(seq_x(5) == 64);
  CHECK(seq_y(0) == 2);
  CHECK(seq_y(1) == 4);
  CHECK(seq_y(2) == 16);
  CHECK(seq_y(3) == 256);
  CHECK(seq_y(4) == 65536);
  CHECK(seq_y(5) == Nat(65536) * 65536);
  CHECK_THROWS_AS(seq_y(70), std::invalid_argument);
}

TEST_CASE("the scaling relation holds exactly at powers of the tower") {
  CHECK(gr_holds(0, 3, 6));
  CHECK(gr_holds(1, 3, 12));
  CHECK(gr_holds(2, 1, 16));
  CHECK(gr_holds(3, 5, 5 * 256));
  CHECK(!gr_holds(1, 1, 5));
  CHECK(!gr_holds(0, 3, 7));
  CHECK(!gr_holds(2, 1, 8));
  CHECK(!gr_holds(1, 3, 3));
  CHECK(gr_holds(7, 0, 0));
  CHECK(!gr_holds(0, 3, 0));
  // exhaustive window against the direct definition for small scales
  for (unsigned long i = 0; i <= 2; ++i) {
    Nat factor = pow2(1UL << i);
    for (unsigned long v = 0; v <= 10; ++v) {
      for (unsigned long w = 0; w <= 170; ++w) {
        bool expect = Nat(w) == factor * v;
        if (v == 0) expect = w == 0;
        CHECK(gr_holds(i, v, w) == expect);
      }
    }
  }
}

TEST_CASE("the registered relation evaluates through formulas") {
  auto reg = growth_registry();
  CHECK(eval_sentence(parse_formula("gr(0, 3, 6)"), reg));
  CHECK(!eval_sentence(parse_formula("gr(1, 1, 5)"), reg));
}

TEST_CASE("the growth axioms are universal truths of the right class") {
  auto reg = growth_registry();
  auto base = gr_base_axiom();
  auto comp = gr_composition_axiom();
  CHECK(classify(base) == ComplexityClass::pi(1));
  CHECK(classify(comp) == ComplexityClass::pi(1));
  CHECK(!probe_truth(base, 40, reg).refuted());
  CHECK(!probe_truth(comp, 8, reg).refuted());
  auto beta = growth_beta();
  REQUIRE(beta.size() == 2);
  CHECK(formula_equal(beta[0], base));
  CHECK(formula_equal(beta[1], comp));
}

TEST_CASE("totality of each scale sits one level higher") {
  for (unsigned i : {0u, 1u, 4u}) {
    auto u = upsilon(i);
    CHECK(is_sentence(u));
    CHECK(classify(u) == ComplexityClass::pi(2));
    CHECK(render_formula(u).find("gr(") != std::string::npos);
  }
}

TEST_CASE("generated chains check at level 2 and have affine node counts") {
  auto reg = growth_registry();
  auto beta = AxiomInterface::from_list(growth_beta());
  for (unsigned n = 1; n <= 6; ++n) {
    TabKProof chain = tab2_upsilon_proof(n);
    CHECK(chain.level == 2);
    CHECK(chain.steps.size() == n + 1);
    CHECK(chain.total_nodes() == 6 + 20 * static_cast<std::size_t>(n));
    CHECK(formula_equal(chain.steps.back().theorem, upsilon(n)));
    auto v = check_tabk(beta, 2, upsilon(n), chain, reg);
    CHECK_MESSAGE(v.ok, "n=", n, ": ", v.reason);
  }
  CHECK_THROWS_AS(tab2_upsilon_proof(0), std::invalid_argument);
}

TEST_CASE("the intermediate totality steps overflow level 1") {
  auto reg = growth_registry();
  auto beta = AxiomInterface::from_list(growth_beta());
  TabKProof chain = tab2_upsilon_proof(3);
  chain.level = 1;
  auto v = check_tabk(beta, 1, upsilon(3), chain, reg);
  CHECK(!v.ok);
  CHECK(v.reason.find("exceeds level") != std::string::npos);
}

TEST_CASE("witness solving inverts the tower on small scales") {
  CHECK(solve_gr_witness(0, 100).value() == 2);
  CHECK(solve_gr_witness(1, 100).value() == 4);
  CHECK(solve_gr_witness(2, 100).value() == 16);
  CHECK(solve_gr_witness(3, 300).value() == 256);
  CHECK(solve_gr_witness(4, 70000).value() == 65536);
  CHECK(!solve_gr_witness(2, 10).has_value());
}

TEST_CASE("the report covers every scale with checked chains") {
  GrowthReport rep = growth_report(5, 0);
  REQUIRE(rep.rows.size() == 5);
  for (unsigned n = 1; n <= 5; ++n) {
    const GrowthRow& row = rep.rows[n - 1];
    CHECK(row.n == n);
    CHECK(row.tab2_ok);
    CHECK(row.tab2_nodes == 6 + 20 * static_cast<std::size_t>(n));
    CHECK(!row.tab1_found);
    CHECK(row.tab1_nodes == 0);
    CHECK(row.witness_checked == (n <= 4));
    if (n <= 4) CHECK(row.witness_ok);
  }
}

TEST_CASE("a small search budget reports honest exhaustion") {
  GrowthReport rep = growth_report(1, 200);
  REQUIRE(rep.rows.size() == 1);
  const GrowthRow& row = rep.rows[0];
  CHECK(row.tab2_ok);
  if (!row.tab1_found) {
    CHECK(row.tab1_nodes <= 200);
    CHECK(row.tab1_nodes > 0);
  }
}

TEST_CASE("the csv layout is stable") {
  GrowthReport rep = growth_report(2, 0);
  std::string csv = render_growth_csv(rep);
  CHECK(csv.find("n,tab2_nodes,tab2_ok,tab1_nodes_or_exhausted,witness_ok\n") == 0);
  CHECK(csv.find("1,26,1,exhausted(0),1\n") != std::string::npos);
  CHECK(csv.find("2,46,1,exhausted(0),1\n") != std::string::npos);
  std::string table = render_growth_table(rep);
  CHECK(table.find("26") != std::string::npos);
}
