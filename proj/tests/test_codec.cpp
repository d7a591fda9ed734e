#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "lstar/codec.hpp"
#include "lstar/parser.hpp"

using namespace lstar;

TEST_CASE("pairing matches the closed form and stays above its right argument") {
  CHECK(pairing(0, 0) == 0);
  CHECK(pairing(2, 3) == 18);
  CHECK(pairing(3, 2) == 17);
  for (unsigned long a = 0; a <= 20; ++a) {
    for (unsigned long b = 0; b <= 20; ++b) {
      Nat p = pairing(a, b);
      CHECK(p >= b);
      auto [x, y] = unpair(p);
      CHECK(x == a);
      CHECK(y == b);
    }
  }
}

TEST_CASE("pairing is injective over a window") {
  std::set<Nat> seen;
  for (unsigned long a = 0; a <= 30; ++a)
    for (unsigned long b = 0; b <= 30; ++b) seen.insert(pairing(a, b));
  CHECK(seen.size() == 31u * 31u);
}

TEST_CASE("terms round-trip through their codes") {
  const char* samples[] = {
      "0", "1", "x", "sub(x, 1)", "div(max(x, y), double(z))",
      "root(add(x, 1), 2)", "count(x, log(x))", "1000000",
  };
  for (const char* s : samples) {
    auto t = parse_term(s);
    Nat c = encode_term(t);
    CHECK(c > 0);
    CHECK(term_equal(decode_term(c), t));
  }
  auto coded = Term::coded("subfn", {Term::var("v0"), Term::var("v0")});
  CHECK(term_equal(decode_term(encode_term(coded)), coded));
}

TEST_CASE("formulas round-trip through their codes") {
  const char* samples[] = {
      "x = 0",
      "~(x <= y)",
      "(x = 0 & (y = 1 | z = 0))",
      "(x = 0 -> (y = 1 <-> z = 0))",
      "A x. E y. (x <= y)",
      "A x <= 10. E y <= x. (add(y, y) <= x)",
      "mult(x, y, z)",
  };
  for (const char* s : samples) {
    auto f = parse_formula(s);
    Nat c = encode(f);
    CHECK(c > 0);
    CHECK(formula_equal(decode(c), f));
  }
  auto atom = Formula::atom("tst", {numeral(9), Term::var("x")});
  CHECK(formula_equal(decode(encode(atom)), atom));
}

TEST_CASE("distinct objects get distinct codes") {
  std::vector<Nat> codes;
  codes.push_back(encode_term(parse_term("0")));
  codes.push_back(encode_term(parse_term("1")));
  codes.push_back(encode_term(parse_term("double(0)")));
  codes.push_back(encode_term(parse_term("add(0, 0)")));
  codes.push_back(encode(parse_formula("0 = 0")));
  codes.push_back(encode(parse_formula("0 <= 0")));
  codes.push_back(encode(parse_formula("A v. (0 <= v)")));
  codes.push_back(encode(parse_formula("A w. (0 <= w)")));
  std::set<Nat> uniq(codes.begin(), codes.end());
  CHECK(uniq.size() == codes.size());
}

TEST_CASE("code size grows linearly with object size") {
  auto f = parse_formula("A x. E y. (add(x, y) <= double(max(x, y)))");
  CHECK(bitlen(encode(f)) < 64 * formula_size(f) + 64);
}

TEST_CASE("zero and mangled streams fail to decode") {
  CHECK_THROWS_AS(decode(Nat(0)), DecodeError);
  CHECK_THROWS_AS(decode_term(Nat(0)), DecodeError);
  FormulaPtr out;
  CHECK(!try_decode(Nat(0), out));
  CHECK(out == nullptr);
  CHECK(!try_decode(Nat(5), out));
  CHECK(out == nullptr);

  Nat good = encode(parse_formula("A v. (0 <= v)"));
  CHECK(try_decode(good, out));
  REQUIRE(out != nullptr);
  CHECK(render_formula(out) == "A v. 0 <= v");
  // term codes are not formula codes and vice versa
  CHECK(!try_decode(encode_term(parse_term("double(x)")), out));
  CHECK_THROWS_AS(decode_term(good), DecodeError);
}

TEST_CASE("decode errors report a bit position") {
  try {
    decode(Nat(1));
    FAIL("expected a decode error");
  } catch (const DecodeError& e) {
    CHECK(e.bit_pos == 0);
  }
}

TEST_CASE("hilbert proofs round-trip through their codes") {
  auto ax = parse_formula("A v. (0 <= v)");
  HilbertProof p;
  p.lines.push_back({HilbertLine::Kind::Axiom, ax, Schema::K, 0, 0, ""});
  auto inst = parse_formula("(x = 0 -> (y = 0 -> x = 0))");
  p.lines.push_back({HilbertLine::Kind::LogicalAxiom, inst, Schema::K, 0, 0, ""});
  p.lines.push_back({HilbertLine::Kind::ModusPonens, nullptr, Schema::K, 0, 1, ""});
  p.lines.push_back({HilbertLine::Kind::Gen, nullptr, Schema::K, 2, 0, "x"});

  auto q = decode_hilbert(encode_hilbert(p));
  REQUIRE(q.lines.size() == 4);
  CHECK(q.lines[0].kind == HilbertLine::Kind::Axiom);
  CHECK(formula_equal(q.lines[0].formula, ax));
  CHECK(q.lines[1].kind == HilbertLine::Kind::LogicalAxiom);
  CHECK(q.lines[1].schema == Schema::K);
  CHECK(formula_equal(q.lines[1].formula, inst));
  CHECK(q.lines[2].kind == HilbertLine::Kind::ModusPonens);
  CHECK(q.lines[2].i == 0);
  CHECK(q.lines[2].j == 1);
  CHECK(q.lines[3].kind == HilbertLine::Kind::Gen);
  CHECK(q.lines[3].i == 2);
  CHECK(q.lines[3].var == "x");
}

TEST_CASE("tableau proofs round-trip through their codes") {
  TableauxProof p;
  TabNode root;
  root.formula = parse_formula("~(0 = 0)");
  root.just.kind = Justification::Kind::NegatedGoal;
  root.parent = 0;
  p.nodes.push_back(root);
  TabNode leaf;
  leaf.just.kind = Justification::Kind::Closed;
  leaf.just.close = Justification::CloseKind::TrueGroundAtomNegated;
  leaf.just.i = 0;
  leaf.parent = 0;
  p.nodes.push_back(leaf);

  auto q = decode_tableaux(encode_tableaux(p));
  REQUIRE(q.size() == 2);
  CHECK(q.nodes[0].just.kind == Justification::Kind::NegatedGoal);
  CHECK(formula_equal(q.nodes[0].formula, p.nodes[0].formula));
  CHECK(q.nodes[1].just.kind == Justification::Kind::Closed);
  CHECK(q.nodes[1].just.close == Justification::CloseKind::TrueGroundAtomNegated);
  CHECK(q.nodes[1].just.i == 0);
}

TEST_CASE("staged proofs round-trip through their codes") {
  TabKProof p;
  p.level = 2;
  TabKStep s;
  s.theorem = parse_formula("0 = 0");
  TabNode root;
  root.formula = parse_formula("~(0 = 0)");
  root.just.kind = Justification::Kind::NegatedGoal;
  s.proof.nodes.push_back(root);
  TabNode leaf;
  leaf.just.kind = Justification::Kind::Closed;
  leaf.just.close = Justification::CloseKind::TrueGroundAtomNegated;
  leaf.just.i = 0;
  leaf.parent = 0;
  s.proof.nodes.push_back(leaf);
  p.steps.push_back(s);

  Nat c = encode_tabk(p);
  auto q = decode_tabk(c);
  CHECK(q.level == 2);
  REQUIRE(q.steps.size() == 1);
  CHECK(formula_equal(q.steps[0].theorem, s.theorem));
  CHECK(q.steps[0].proof.size() == 2);

  TabKProof out;
  CHECK(try_decode_tabk(c, out));
  CHECK(out.level == 2);
  CHECK(!try_decode_tabk(Nat(0), out));
  CHECK(!try_decode_tabk(encode(parse_formula("0 = 0")), out));
}

TEST_CASE("code substitution plugs a numeral into the v0 slot") {
  auto f = parse_formula("0 <= v0");
  Nat c = sub_code(encode(f), 7);
  CHECK(c == encode(parse_formula("0 <= 7")));

  auto g = parse_formula("A w. (v0 <= max(v0, w))");
  CHECK(sub_code(encode(g), 3) ==
        encode(substitute(g, "v0", numeral(3))));
}

TEST_CASE("code substitution rejects wrong inputs") {
  CHECK_THROWS_AS(sub_code(Nat(0), 1), DecodeError);
  CHECK_THROWS_AS(sub_code(encode(parse_formula("0 = 0")), 1), std::invalid_argument);
  CHECK_THROWS_AS(sub_code(encode(parse_formula("x <= v0")), 1), std::invalid_argument);
  CHECK_THROWS_AS(sub_code(encode(parse_formula("0 <= w")), 1), std::invalid_argument);
}

TEST_CASE("the registered substitution function totalizes failures to zero") {
  Registry reg;
  register_subfn(reg);
  reg.freeze();
  Nat c = encode(parse_formula("0 <= v0"));
  CHECK(reg.call_fn("subfn", {c, Nat(7)}) == encode(parse_formula("0 <= 7")));
  CHECK(reg.call_fn("subfn", {Nat(0), Nat(7)}) == 0);
  CHECK(reg.call_fn("subfn", {encode(parse_formula("0 = 0")), Nat(7)}) == 0);
}

TEST_CASE("diagonalization satisfies the fixed-point equation exactly") {
  Registry reg;
  register_subfn(reg);
  reg.freeze();

  struct Probe {
    FormulaPtr theta;
    TermPtr (*dig)(const FormulaPtr&);
  };
  std::vector<Probe> probes = {
      {parse_formula("0 <= v0"), [](const FormulaPtr& s) { return s->rhs; }},
      {parse_formula("~(v0 = 0)"), [](const FormulaPtr& s) { return s->a->lhs; }},
      {parse_formula("E p. (p = v0)"), [](const FormulaPtr& s) { return s->a->rhs; }},
      {parse_formula("A w. (v0 <= max(v0, w))"),
       [](const FormulaPtr& s) { return s->a->lhs; }},
      {parse_formula("(v0 = 0 | 1 <= v0)"),
       [](const FormulaPtr& s) { return s->a->lhs; }},
  };
  for (const auto& probe : probes) {
    auto s = diagonalize(probe.theta);
    CHECK(is_sentence(s));
    TermPtr self = probe.dig(s);
    REQUIRE(self != nullptr);
    REQUIRE(self->kind == Term::Kind::CodedApply);
    CHECK(self->name == "subfn");
    REQUIRE(self->args.size() == 2);
    CHECK(term_equal(self->args[0], self->args[1]));
    CHECK(eval_term(self, reg) == encode(s));
  }
}

TEST_CASE("diagonalization needs exactly v0 free") {
  CHECK_THROWS_AS(diagonalize(parse_formula("0 = 0")), std::invalid_argument);
  CHECK_THROWS_AS(diagonalize(parse_formula("(v0 = 0 & w = 0)")), std::invalid_argument);
}
