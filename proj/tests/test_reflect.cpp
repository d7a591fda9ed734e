#include <doctest.h>

#include <stdexcept>
#include <string>

#include "lstar/codec.hpp"
#include "lstar/parser.hpp"
#include "lstar/reflect.hpp"

using namespace lstar;

namespace {

ReflectionContext tiny_context() {
  auto bs = forge_system("isd-sharp", {parse_formula("A v. 0 <= v")}, {0}, {},
                         Deduction::Tab1);
  return make_reflection_context(bs.system);
}

}  // namespace

TEST_CASE("sentences without unbounded universal quantifiers pass through") {
  const char* fixed[] = {
      "0 = 0",
      "A v <= 9. v <= 9",
      "E v. v = 0",
      "E v. E w. add(v,w) = 6",
      "E v. A w <= v. w <= v",
  };
  for (const char* s : fixed) {
    auto f = parse_formula(s);
    CHECK(formula_equal(oplus(f), f));
  }
}

TEST_CASE("universal quantifiers acquire the root bound under a fresh scan") {
  CHECK(render_formula(oplus(parse_formula("A u. 0 <= u"))) ==
        "A x. A u <= sub(root(x,2),1). 0 <= u");
  CHECK(render_formula(oplus(parse_formula("A u. A w. u <= max(u,w)"))) ==
        "A x. A u <= sub(root(x,2),1). A w <= sub(root(x,2),1). u <= max(u,w)");
  CHECK(render_formula(oplus(parse_formula("A u. E w. u <= w"))) ==
        "A x. A u <= sub(root(x,2),1). E w. u <= w");
  // universal quantifiers behind an existential are bounded too
  CHECK(render_formula(oplus(parse_formula("E v. A u. v <= u"))) ==
        "A x. E v. A u <= sub(root(x,2),1). v <= u");
}

TEST_CASE("the scan variable dodges names already in use") {
  CHECK(render_formula(oplus(parse_formula("A x. 0 <= x"))) ==
        "A x'. A x <= sub(root(x',2),1). 0 <= x");
}

TEST_CASE("dilution preserves the single-universal class") {
  auto d = oplus(parse_formula("A u. 0 <= u"));
  CHECK(classify(d) == ComplexityClass::pi(1));
}

TEST_CASE("non-prenex sentences are refused") {
  CHECK_THROWS_AS(oplus(parse_formula("~(A v. 0 <= v)")), std::invalid_argument);
  CHECK_THROWS_AS(oplus(parse_formula("(A v. 0 <= v) & (0 = 0)")), std::invalid_argument);
}

TEST_CASE("the reflection context names its deduction method") {
  auto rc = tiny_context();
  CHECK(rc.prf_name == "prftab1");
  CHECK(rc.reg->frozen());
  CHECK(rc.reg->has_pred("prftab1"));
}

TEST_CASE("the provability predicate accepts a checked level-1 chain") {
  auto bs = forge_system("isd-sharp", {parse_formula("A v. 0 <= v")}, {0}, {},
                         Deduction::Tab1);
  auto rc = make_reflection_context(bs.system);

  // one-stage chain closing the negated ground goal by evaluation
  TabKProof p;
  p.level = 1;
  TabKStep s;
  s.theorem = parse_formula("0 = 0");
  s.proof = parse_tableaux_proof(
      "negated-goal | ~(0 = 0)\n"
      "  closed true-neg 0\n");
  p.steps.push_back(s);

  Nat t = encode(s.theorem);
  Nat q = encode_tabk(p);
  CHECK(rc.reg->call_pred("prftab1", {t, q}));
  CHECK(!rc.reg->call_pred("prftab1", {encode(parse_formula("0 = 1")), q}));
  CHECK(!rc.reg->call_pred("prftab1", {t, Nat(12)}));
}

TEST_CASE("reflection sentences quantify over proof codes") {
  auto rc = tiny_context();
  auto phi = parse_formula("E v. v = 0");
  auto r = reflection_sentence(rc, phi);
  REQUIRE(r->kind == Formula::Kind::Forall);
  REQUIRE(r->a->kind == Formula::Kind::Implies);
  const FormulaPtr& ante = r->a->a;
  REQUIRE(ante->kind == Formula::Kind::CodedAtom);
  CHECK(ante->name == "prftab1");
  REQUIRE(ante->args.size() == 2);
  Registry none;
  none.freeze();
  CHECK(eval_term(ante->args[0], none) == encode(phi));
  CHECK(formula_equal(r->a->b, phi));

  CHECK_NOTHROW(reflection_sentence(rc, parse_formula("0 = 0")));
  CHECK_THROWS_AS(reflection_sentence(rc, parse_formula("A v. 0 <= v")),
                  std::invalid_argument);
  CHECK_THROWS_AS(reflection_sentence(rc, parse_formula("x = 0")), std::invalid_argument);
}

TEST_CASE("root dilution bounds exactly the universal block") {
  auto rc = tiny_context();
  auto phi = parse_formula("A u. E w. u <= w");
  auto r = root_diluted_sentence(rc, phi);
  REQUIRE(r->kind == Formula::Kind::Forall);
  REQUIRE(r->a->kind == Formula::Kind::Implies);
  CHECK(formula_equal(r->a->b, oplus(phi)));

  CHECK_THROWS_AS(root_diluted_sentence(rc, parse_formula("A u. 0 <= u")),
                  std::invalid_argument);
  CHECK_THROWS_AS(root_diluted_sentence(rc, parse_formula("E v. v = 0")),
                  std::invalid_argument);
}

TEST_CASE("the general builder switches only the consequent") {
  auto rc = tiny_context();
  auto phi = parse_formula("A u. E w. u <= w");
  auto plain = brxefl_sentence(rc, ReflectMode::Plain, phi);
  auto diluted = brxefl_sentence(rc, ReflectMode::Diluted, phi);
  CHECK(formula_equal(plain->a->b, phi));
  CHECK(formula_equal(diluted->a->b, oplus(phi)));
  CHECK(formula_equal(plain->a->a, diluted->a->a));
  CHECK_THROWS_AS(brxefl_sentence(rc, ReflectMode::Plain, parse_formula("x = 0")),
                  std::invalid_argument);
}

TEST_CASE("the quantified proof variable dodges captured names") {
  auto rc = tiny_context();
  auto phi = parse_formula("E p. p = 0");
  auto r = reflection_sentence(rc, phi);
  REQUIRE(r->kind == Formula::Kind::Forall);
  CHECK(r->name != "p");
  CHECK(formula_equal(r->a->b, phi));
}

TEST_CASE("product halves recombine exactly") {
  CHECK(left_half(3, 5) == 1);
  CHECK(right_half(3, 5) == 7);
  CHECK(left_half(0, 9) == 0);
  CHECK(right_half(0, 9) == 0);
  CHECK(left_half(1, 1) == 0);
  CHECK(right_half(1, 1) == 1);
  for (unsigned long a = 0; a <= 40; ++a) {
    for (unsigned long b = 0; b <= 40; ++b) {
      std::size_t k = std::max({bitlen(a), bitlen(b), std::size_t(1)});
      Nat l = left_half(a, b);
      Nat r = right_half(a, b);
      CHECK(l * pow2(static_cast<unsigned long>(k)) + r == Nat(a) * Nat(b));
      CHECK(l < pow2(static_cast<unsigned long>(k)));
      CHECK(r < pow2(static_cast<unsigned long>(k)));
    }
  }
}
