#include <doctest.h>

#include <set>
#include <stdexcept>
#include <string>

#include "lstar/formula.hpp"
#include "lstar/parser.hpp"
#include "lstar/term.hpp"

using namespace lstar;

namespace {

TermPtr v(const std::string& n) { return Term::var(n); }

}  // namespace

TEST_CASE("term constructors and structural equality") {
  auto t1 = Term::apply(Fn::Sub, {v("x"), Term::one()});
  auto t2 = Term::apply(Fn::Sub, {v("x"), Term::one()});
  auto t3 = Term::apply(Fn::Sub, {v("y"), Term::one()});
  CHECK(term_equal(t1, t2));
  CHECK(!term_equal(t1, t3));
  CHECK(!term_equal(Term::zero(), Term::one()));
  CHECK(term_equal(Term::coded("f", {t1}), Term::coded("f", {t2})));
  CHECK(!term_equal(Term::coded("f", {t1}), Term::coded("g", {t1})));
}

TEST_CASE("term variable queries") {
  auto t = Term::apply(Fn::Max, {v("x"), Term::apply(Fn::Double, {v("y")})});
  std::set<std::string> vars;
  term_vars(t, vars);
  CHECK(vars == std::set<std::string>{"x", "y"});
  CHECK(!term_ground(t));
  CHECK(term_ground(numeral(12)));
  CHECK(term_contains_var(t, "y"));
  CHECK(!term_contains_var(t, "z"));
}

TEST_CASE("term substitution replaces every occurrence") {
  auto t = Term::apply(Fn::Add, {v("x"), Term::apply(Fn::Log, {v("x")})});
  auto s = term_substitute(t, "x", numeral(3));
  CHECK(term_ground(s));
  CHECK(render_term(s) == "add(3,log(3))");
  CHECK(term_equal(term_substitute(t, "z", Term::zero()), t));
}

TEST_CASE("term size counts nodes") {
  CHECK(term_size(Term::zero()) == 1);
  CHECK(term_size(Term::apply(Fn::Sub, {v("x"), Term::one()})) == 3);
  CHECK(term_size(Term::coded("p", {Term::zero(), Term::zero()})) == 3);
}

TEST_CASE("numerals stay compact and render as decimals") {
  CHECK(render_term(numeral(0)) == "0");
  CHECK(render_term(numeral(1)) == "1");
  CHECK(render_term(numeral(2)) == "2");
  CHECK(render_term(numeral(6)) == "6");
  CHECK(render_term(numeral(13)) == "13");
  CHECK(render_term(numeral(Nat("123456789123456789"))) == "123456789123456789");
  // binary expansion: symbol count is logarithmic, not linear
  CHECK(term_size(numeral(Nat(1) << 60)) <= 3 * 61 + 2);
  // a structurally different spelling of the same value is not a numeral
  auto d0 = Term::apply(Fn::Double, {Term::zero()});
  CHECK(render_term(d0) == "double(0)");
}

TEST_CASE("terms round-trip through render and parse") {
  const char* samples[] = {
      "0",
      "1",
      "x",
      "sub(x,1)",
      "div(max(x,y),double(z))",
      "root(add(x,1),2)",
      "count(x,log(x))",
      "37",
  };
  for (const char* s : samples) {
    auto t = parse_term(s);
    CHECK(render_term(t) == s);
    CHECK(term_equal(parse_term(render_term(t)), t));
  }
}

TEST_CASE("decimal literals parse to numeral terms") {
  CHECK(term_equal(parse_term("6"), numeral(6)));
  CHECK(term_equal(parse_term("255"), numeral(255)));
}

TEST_CASE("term parse errors carry an offset") {
  CHECK_THROWS_AS(parse_term("sub(x"), ParseError);
  CHECK_THROWS_AS(parse_term("log(x, y)"), ParseError);
  CHECK_THROWS_AS(parse_term(""), ParseError);
  try {
    parse_term("max(x,, y)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset > 0);
  }
}

TEST_CASE("formula constructors and structural equality") {
  auto f = Formula::land(Formula::eq(v("x"), Term::zero()),
                         Formula::le(v("x"), Term::one()));
  auto g = Formula::land(Formula::eq(v("x"), Term::zero()),
                         Formula::le(v("x"), Term::one()));
  CHECK(formula_equal(f, g));
  CHECK(!formula_equal(f, Formula::lor(f->a, f->b)));
  CHECK(!formula_equal(Formula::forall("x", f), Formula::forall("y", f)));
}

TEST_CASE("bounded quantifier rejects a self-referential bound") {
  auto body = Formula::eq(v("x"), Term::zero());
  CHECK_NOTHROW(Formula::bforall("x", v("y"), body));
  CHECK_THROWS_AS(Formula::bforall("x", Term::apply(Fn::Add, {v("x"), Term::one()}), body),
                  std::invalid_argument);
  CHECK_THROWS_AS(Formula::bexists("x", v("x"), body), std::invalid_argument);
}

TEST_CASE("free variables respect binders") {
  auto f = Formula::forall("x", Formula::eq(v("x"), v("y")));
  CHECK(free_vars(f) == std::set<std::string>{"y"});
  auto g = Formula::bexists("z", v("w"), Formula::le(v("z"), v("w")));
  CHECK(free_vars(g) == std::set<std::string>{"w"});
  CHECK(!is_sentence(f));
  CHECK(is_sentence(Formula::forall("y", f)));
}

TEST_CASE("all_names sees bound variables and coded symbols") {
  auto f = Formula::forall("x", Formula::atom("tst", {v("x"), v("y")}));
  std::set<std::string> names;
  all_names(f, names);
  CHECK(names.count("x") == 1);
  CHECK(names.count("y") == 1);
  CHECK(names.count("tst") == 1);
}

TEST_CASE("substitution avoids capture by renaming the binder") {
  auto f = Formula::forall("y", Formula::eq(v("x"), v("y")));
  auto s = substitute(f, "x", v("y"));
  REQUIRE(s->kind == Formula::Kind::Forall);
  CHECK(s->name != "y");
  CHECK(free_vars(s) == std::set<std::string>{"y"});
  CHECK(s->a->kind == Formula::Kind::Eq);
  CHECK(render_term(s->a->lhs) == "y");
  CHECK(render_term(s->a->rhs) == s->name);
}

TEST_CASE("substitution skips shadowed occurrences") {
  auto f = Formula::land(Formula::eq(v("x"), Term::zero()),
                         Formula::forall("x", Formula::le(v("x"), Term::one())));
  auto s = substitute(f, "x", numeral(5));
  CHECK(render_formula(s->a) == "5 = 0");
  CHECK(formula_equal(s->b, f->b));
}

TEST_CASE("substitution threads through a bounded quantifier bound") {
  auto f = Formula::bforall("u", v("x"), Formula::le(v("u"), v("x")));
  auto s = substitute(f, "x", numeral(4));
  CHECK(render_formula(s) == "A u <= 4. u <= 4");
}

TEST_CASE("formulas round-trip through render and parse") {
  const char* samples[] = {
      "x = 0",
      "x <= y",
      "~(x = y)",
      "(x = 0) & (y = 1)",
      "(x = 0) | (y = 1)",
      "(x = 0) -> (y = 1)",
      "(x = 0) <-> (y = 1)",
      "A x. x <= add(x,1)",
      "E x. double(x) = 6",
      "A x <= 10. E y <= x. add(y,y) <= x",
      "A p. ~(p = 1)",
  };
  for (const char* s : samples) {
    auto f = parse_formula(s);
    CHECK(render_formula(f) == s);
    CHECK(formula_equal(parse_formula(render_formula(f)), f));
  }
}

TEST_CASE("strict comparison is sugar over truncated subtraction") {
  auto f = lt(v("a"), v("b"));
  CHECK(render_formula(f) == "a <= sub(b,1)");
  CHECK(formula_equal(parse_formula("a < b"), f));
}

TEST_CASE("quantifiers require the dot separator") {
  CHECK_THROWS_AS(parse_formula("A x (x = 0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("E x x = 0"), ParseError);
  CHECK_NOTHROW(parse_formula("A x. (x = 0)"));
}

TEST_CASE("nested connectives demand explicit parentheses") {
  CHECK_THROWS_AS(parse_formula("x = 0 & y = 0 & z = 0"), ParseError);
  CHECK_NOTHROW(parse_formula("(x = 0 & (y = 0 & z = 0))"));
}

TEST_CASE("multiplication macro expands to the relational definition") {
  auto f = parse_formula("mult(x, y, z)");
  CHECK(formula_equal(f, mult_relation("x", "y", "z")));
  CHECK(free_vars(f) == std::set<std::string>{"x", "y", "z"});
  auto g = parse_formula("addrel(a, b, c)");
  CHECK(formula_equal(g, add_relation("a", "b", "c")));
  CHECK(free_vars(g) == std::set<std::string>{"a", "b", "c"});
}

TEST_CASE("formula size counts formula and term nodes") {
  CHECK(formula_size(Formula::eq(Term::zero(), Term::one())) == 3);
  auto f = Formula::lnot(Formula::land(Formula::eq(v("x"), Term::zero()),
                                       Formula::eq(v("x"), Term::one())));
  CHECK(formula_size(f) == 8);
}
