#include <doctest.h>

#include <string>
#include <vector>

#include "lstar/hilbert.hpp"
#include "lstar/parser.hpp"

using namespace lstar;

namespace {

HilbertLine axiom_line(const FormulaPtr& f) {
  HilbertLine l;
  l.kind = HilbertLine::Kind::Axiom;
  l.formula = f;
  return l;
}

HilbertLine schema_line(Schema s, const FormulaPtr& f) {
  HilbertLine l;
  l.kind = HilbertLine::Kind::LogicalAxiom;
  l.schema = s;
  l.formula = f;
  return l;
}

HilbertLine mp_line(std::size_t antecedent, std::size_t implication) {
  HilbertLine l;
  l.kind = HilbertLine::Kind::ModusPonens;
  l.i = antecedent;
  l.j = implication;
  return l;
}

HilbertLine gen_line(std::size_t premise, std::string var) {
  HilbertLine l;
  l.kind = HilbertLine::Kind::Gen;
  l.i = premise;
  l.var = std::move(var);
  return l;
}

}  // namespace

TEST_CASE("schema names round-trip") {
  for (Schema s : {Schema::K, Schema::S, Schema::N, Schema::Q1, Schema::Q2,
                   Schema::E1, Schema::E2}) {
    Schema back;
    REQUIRE(schema_from_name(schema_name(s), back));
    CHECK(back == s);
  }
  Schema out;
  CHECK(!schema_from_name("Z9", out));
}

TEST_CASE("each schema accepts its instances") {
  struct Row {
    Schema s;
    const char* inst;
  };
  Row rows[] = {
      {Schema::K, "(x = 0 -> (y = 1 -> x = 0))"},
      {Schema::S,
       "((x = 0 -> (y = 0 -> z = 0)) -> ((x = 0 -> y = 0) -> (x = 0 -> z = 0)))"},
      {Schema::N, "((~(x = 0) -> ~(y = 0)) -> (y = 0 -> x = 0))"},
      {Schema::Q1, "(A v. 0 <= v) -> (0 <= 7)"},
      {Schema::Q1, "(A v. 0 <= v) -> (0 <= v)"},
      {Schema::Q2, "(A v. (x = 0) -> (v <= y)) -> ((x = 0) -> (A v. v <= y))"},
      {Schema::E1, "add(x, 1) = add(x, 1)"},
      {Schema::E2, "(x = y -> double(x) = double(y))"},
      {Schema::E2, "((x = u & y = w) -> max(x, y) = max(u, w))"},
      {Schema::E2, "((x = y & z = z) -> (x <= z -> y <= z))"},
  };
  for (const auto& row : rows) {
    HilbertProof p;
    auto f = parse_formula(row.inst);
    p.lines.push_back(schema_line(row.s, f));
    auto v = check_hilbert({}, p, f);
    CHECK_MESSAGE(v.ok, row.inst, " | ", v.reason);
  }
}

TEST_CASE("schemas reject near misses") {
  struct Row {
    Schema s;
    const char* inst;
  };
  Row rows[] = {
      {Schema::K, "(x = 0 -> (y = 1 -> y = 1))"},
      {Schema::N, "((~(x = 0) -> ~(y = 0)) -> (x = 0 -> y = 0))"},
      {Schema::Q1, "(A v. 0 <= v) -> (1 <= 7)"},
      // the quantified variable occurs free in the antecedent
      {Schema::Q2, "(A v. (v = 0) -> (v <= y)) -> ((v = 0) -> (A v. v <= y))"},
      {Schema::E1, "add(x, 1) = add(1, x)"},
      {Schema::E2, "(x = y -> double(x) = double(x))"},
      {Schema::K, "(x = 0 & (y = 1 -> x = 0))"},
  };
  for (const auto& row : rows) {
    HilbertProof p;
    auto f = parse_formula(row.inst);
    p.lines.push_back(schema_line(row.s, f));
    CHECK_MESSAGE(!check_hilbert({}, p, f).ok, row.inst);
  }
}

TEST_CASE("a universal axiom instantiates through Q1 and detachment") {
  auto ax = parse_formula("A v. (0 <= v)");
  auto goal = parse_formula("0 <= 7");
  HilbertProof p;
  p.lines.push_back(axiom_line(ax));
  p.lines.push_back(schema_line(Schema::Q1, Formula::implies(ax, goal)));
  p.lines.push_back(mp_line(0, 1));
  CHECK(check_hilbert({ax}, p, goal).ok);

  // antecedent and implication swapped
  HilbertProof bad = p;
  bad.lines[2] = mp_line(1, 0);
  CHECK(!check_hilbert({ax}, bad, goal).ok);
}

TEST_CASE("the identity derivation generalizes") {
  auto p0 = parse_formula("x = 0");
  auto imp = [](FormulaPtr a, FormulaPtr b) { return Formula::implies(a, b); };
  auto pp = imp(p0, p0);

  HilbertProof p;
  p.lines.push_back(schema_line(Schema::K, imp(p0, imp(pp, p0))));
  p.lines.push_back(
      schema_line(Schema::S, imp(imp(p0, imp(pp, p0)), imp(imp(p0, pp), imp(p0, p0)))));
  p.lines.push_back(mp_line(0, 1));
  p.lines.push_back(schema_line(Schema::K, imp(p0, imp(p0, p0))));
  p.lines.push_back(mp_line(3, 2));
  p.lines.push_back(gen_line(5 - 1, "x"));
  auto goal = Formula::forall("x", pp);
  auto v = check_hilbert({}, p, goal);
  CHECK_MESSAGE(v.ok, v.reason);

  auto lines = hilbert_line_formulas(p);
  REQUIRE(lines.size() == 6);
  CHECK(formula_equal(lines[4], pp));
  CHECK(formula_equal(lines[5], goal));
}

TEST_CASE("axiom lines must cite members of the list") {
  auto ax = parse_formula("A v. (0 <= v)");
  auto stranger = parse_formula("A v. (v <= v)");
  HilbertProof p;
  p.lines.push_back(axiom_line(stranger));
  CHECK(!check_hilbert({ax}, p, stranger).ok);
  CHECK(check_hilbert({ax, stranger}, p, stranger).ok);
}

TEST_CASE("citations must point backwards") {
  auto f = parse_formula("x = 0");
  HilbertProof p;
  p.lines.push_back(mp_line(1, 2));
  p.lines.push_back(schema_line(Schema::E1, parse_formula("x = x")));
  p.lines.push_back(schema_line(Schema::E1, parse_formula("y = y")));
  CHECK(!check_hilbert({}, p, f).ok);

  HilbertProof q;
  q.lines.push_back(schema_line(Schema::E1, parse_formula("x = x")));
  q.lines.push_back(gen_line(1, "x"));
  CHECK(!check_hilbert({}, q, Formula::forall("x", parse_formula("x = x"))).ok);
}

TEST_CASE("the final line must be the goal") {
  auto ax = parse_formula("A v. (0 <= v)");
  HilbertProof p;
  p.lines.push_back(axiom_line(ax));
  CHECK(check_hilbert({ax}, p, ax).ok);
  CHECK(!check_hilbert({ax}, p, parse_formula("0 <= 1")).ok);
  HilbertProof empty;
  CHECK(!check_hilbert({ax}, empty, ax).ok);
}

TEST_CASE("modus ponens demands an implication whose antecedent matches") {
  auto a = parse_formula("x = x");
  auto b = parse_formula("y = y");
  HilbertProof p;
  p.lines.push_back(schema_line(Schema::E1, a));
  p.lines.push_back(schema_line(Schema::E1, b));
  p.lines.push_back(mp_line(0, 1));  // line 1 is not an implication
  CHECK(!check_hilbert({}, p, b).ok);
}

TEST_CASE("proof text round-trips through render and parse") {
  auto ax = parse_formula("A v. (0 <= v)");
  auto goal = parse_formula("0 <= 7");
  HilbertProof p;
  p.lines.push_back(axiom_line(ax));
  p.lines.push_back(schema_line(Schema::Q1, Formula::implies(ax, goal)));
  p.lines.push_back(mp_line(0, 1));
  p.lines.push_back(gen_line(2, "w"));

  std::string text = render_hilbert_proof(p, {ax});
  HilbertProof q = parse_hilbert_proof(text, {ax});
  REQUIRE(q.lines.size() == p.lines.size());
  CHECK(q.lines[0].kind == HilbertLine::Kind::Axiom);
  CHECK(formula_equal(q.lines[0].formula, ax));
  CHECK(q.lines[1].schema == Schema::Q1);
  CHECK(q.lines[2].i == 0);
  CHECK(q.lines[2].j == 1);
  CHECK(q.lines[3].var == "w");
  CHECK(render_hilbert_proof(q, {ax}) == text);
}

TEST_CASE("proof text skips blanks and comments") {
  auto ax = parse_formula("A v. (0 <= v)");
  std::string text = "# derivation\n\naxiom 0\n  \nschema Q1 | (A v. 0 <= v) -> (0 <= 3)\nmp 0 1\n";
  HilbertProof p = parse_hilbert_proof(text, {ax});
  REQUIRE(p.lines.size() == 3);
  CHECK(check_hilbert({ax}, p, parse_formula("0 <= 3")).ok);
}
