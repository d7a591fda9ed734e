#include <doctest.h>

#include <stdexcept>

#include "lstar/model.hpp"
#include "lstar/parser.hpp"

using namespace lstar;

namespace {

Registry frozen() {
  Registry reg;
  reg.freeze();
  return reg;
}

Nat ev(const std::string& term, const Env& env = {}) {
  return eval_term(parse_term(term), frozen(), env);
}

}  // namespace

TEST_CASE("truncated subtraction floors at zero") {
  CHECK(ev("sub(5, 3)") == 2);
  CHECK(ev("sub(3, 5)") == 0);
  CHECK(ev("sub(4, 4)") == 0);
}

TEST_CASE("division by zero returns the dividend") {
  CHECK(ev("div(7, 0)") == 7);
  CHECK(ev("div(7, 2)") == 3);
  CHECK(ev("div(0, 5)") == 0);
  CHECK(ev("div(12, 4)") == 3);
}

TEST_CASE("max picks the larger argument") {
  CHECK(ev("max(3, 9)") == 9);
  CHECK(ev("max(9, 3)") == 9);
  CHECK(ev("max(4, 4)") == 4);
}

TEST_CASE("logarithm floors and bottoms out at zero") {
  CHECK(ev("log(0)") == 0);
  CHECK(ev("log(1)") == 0);
  CHECK(ev("log(2)") == 1);
  CHECK(ev("log(7)") == 2);
  CHECK(ev("log(8)") == 3);
  CHECK(ev("log(1023)") == 9);
}

TEST_CASE("roots round up and index zero is the identity") {
  CHECK(ev("root(10, 2)") == 4);
  CHECK(ev("root(9, 2)") == 3);
  CHECK(ev("root(27, 3)") == 3);
  CHECK(ev("root(28, 3)") == 4);
  CHECK(ev("root(0, 2)") == 0);
  CHECK(ev("root(1, 9)") == 1);
  CHECK(ev("root(5, 0)") == 5);
  CHECK(ev("root(5, 1)") == 5);
}

TEST_CASE("count sums the lowest bits") {
  // 13 = 1101b
  CHECK(ev("count(13, 0)") == 0);
  CHECK(ev("count(13, 3)") == 2);
  CHECK(ev("count(13, 4)") == 3);
  CHECK(ev("count(13, 64)") == 3);
  CHECK(ev("count(0, 8)") == 0);
}

TEST_CASE("growth symbols and numerals evaluate exactly") {
  CHECK(ev("add(3, 4)") == 7);
  CHECK(ev("double(21)") == 42);
  CHECK(ev("0") == 0);
  CHECK(ev("1") == 1);
  for (unsigned long n : {0ul, 1ul, 2ul, 6ul, 13ul, 255ul, 1000ul}) {
    CHECK(eval_term(numeral(n), frozen()) == n);
  }
}

TEST_CASE("environments bind variables and gaps throw") {
  CHECK(ev("add(x, y)", {{"x", 2}, {"y", 5}}) == 7);
  CHECK_THROWS_AS(ev("add(x, y)", {{"x", 2}}), EvalError);
  CHECK_THROWS_AS(eval_term(Term::coded("mystery", {Term::zero()}), frozen()), EvalError);
}

TEST_CASE("non-growth symbols never exceed their largest argument") {
  const char* fns[] = {"sub", "div", "max", "root", "count"};
  auto reg = frozen();
  for (const char* f : fns) {
    for (unsigned long a = 0; a <= 12; ++a) {
      for (unsigned long b = 0; b <= 12; ++b) {
        auto t = Term::apply(
            [&] {
              Fn out;
              REQUIRE(fn_from_name(f, out));
              return out;
            }(),
            {numeral(a), numeral(b)});
        CHECK(eval_term(t, reg) <= std::max(a, b));
      }
    }
  }
  for (unsigned long a = 0; a <= 12; ++a) {
    CHECK(eval_term(Term::apply(Fn::Log, {numeral(a)}), reg) <= a);
  }
}

TEST_CASE("bounded formulas evaluate by finite scan") {
  auto reg = frozen();
  CHECK(eval_sentence(parse_formula("A v <= 10. (v <= 10)"), reg));
  CHECK(!eval_sentence(parse_formula("E v <= 5. (v = 6)"), reg));
  CHECK(eval_sentence(parse_formula("E v <= 6. (v = 6)"), reg));
  CHECK(eval_sentence(parse_formula("A x <= 8. E y <= x. (add(y, y) <= x)"), reg));
  CHECK(eval_formula(parse_formula("(x = 0 -> 1 <= x)"), reg, {{"x", 3}}));
}

TEST_CASE("unbounded quantifiers and free variables are evaluation errors") {
  auto reg = frozen();
  CHECK_THROWS_AS(eval_formula(parse_formula("A v. (0 <= v)"), reg), EvalError);
  CHECK_THROWS_AS(eval_sentence(parse_formula("x = 0"), reg), std::invalid_argument);
}

TEST_CASE("registries refuse late registration and early evaluation") {
  Registry reg;
  reg.register_fn("idf", 1, [](const std::vector<Nat>& a) { return a[0]; });
  CHECK_THROWS_AS(reg.call_fn("idf", {Nat(3)}), EvalError);
  reg.freeze();
  CHECK(reg.call_fn("idf", {Nat(3)}) == 3);
  CHECK_THROWS_AS(reg.register_fn("late", 1, [](const std::vector<Nat>& a) { return a[0]; }),
                  EvalError);
  CHECK_THROWS_AS(reg.call_fn("idf", {Nat(3), Nat(4)}), EvalError);

  Registry ext = reg.extended();
  CHECK(!ext.frozen());
  ext.register_pred("pos", 1, [](const std::vector<Nat>& a) { return a[0] > 0; });
  ext.freeze();
  CHECK(ext.call_fn("idf", {Nat(9)}) == 9);
  CHECK(ext.call_pred("pos", {Nat(1)}));
  CHECK(!ext.call_pred("pos", {Nat(0)}));
}

TEST_CASE("coded symbols evaluate through the registry") {
  Registry reg;
  reg.register_fn("sq", 1, [](const std::vector<Nat>& a) { return a[0] * a[0]; });
  reg.register_pred("even", 1, [](const std::vector<Nat>& a) { return a[0] % 2 == 0; });
  reg.freeze();
  CHECK(eval_term(Term::coded("sq", {numeral(7)}), reg) == 49);
  CHECK(eval_sentence(Formula::atom("even", {numeral(4)}), reg));
  CHECK(!eval_sentence(Formula::atom("even", {numeral(5)}), reg));
}

TEST_CASE("truth probe confirms a true universal sentence up to the cap") {
  auto r = probe_truth(parse_formula("A v. (0 <= v)"), 50, frozen());
  CHECK(r.kind == TruthProbeResult::Kind::TrueUpTo);
  CHECK(!r.refuted());
  CHECK(r.bound == 50);
}

TEST_CASE("truth probe reports the minimal counterexample tuple") {
  auto r = probe_truth(parse_formula("A v. ~(v = 4)"), 50, frozen());
  REQUIRE(r.refuted());
  REQUIRE(r.tuple.size() == 1);
  CHECK(r.tuple[0] == 4);

  auto r2 = probe_truth(parse_formula("A v. A w. ~(add(v, w) = 5)"), 50, frozen());
  REQUIRE(r2.refuted());
  REQUIRE(r2.tuple.size() == 2);
  // layer order: the first refuting tuple lives in the max=3 layer
  CHECK(r2.tuple[0] == 2);
  CHECK(r2.tuple[1] == 3);
}

TEST_CASE("truth probe finds existential witnesses or reports exhaustion") {
  auto r = probe_truth(parse_formula("E v. (double(v) = 12)"), 50, frozen());
  REQUIRE(r.witnessed());
  REQUIRE(r.tuple.size() == 1);
  CHECK(r.tuple[0] == 6);

  auto r2 = probe_truth(parse_formula("E v. (add(v, v) = 1)"), 50, frozen());
  CHECK(r2.kind == TruthProbeResult::Kind::NoWitnessUpTo);
  CHECK(!r2.witnessed());
}

TEST_CASE("truth probe evaluates bounded sentences outright") {
  auto r = probe_truth(parse_formula("A v <= 9. (v <= 9)"), 3, frozen());
  CHECK(r.kind == TruthProbeResult::Kind::TrueUpTo);
  CHECK(r.tuple.empty());
  auto r2 = probe_truth(parse_formula("E v <= 3. (v = 7)"), 3, frozen());
  CHECK(r2.kind == TruthProbeResult::Kind::FalseWitness);
}

TEST_CASE("truth probe rejects higher complexity and open formulas") {
  CHECK_THROWS_AS(probe_truth(parse_formula("A v. E w. (v <= w)"), 5, frozen()),
                  std::invalid_argument);
  CHECK_THROWS_AS(probe_truth(parse_formula("x = 0"), 5, frozen()), std::invalid_argument);
}

TEST_CASE("relational macros agree with arithmetic on spot checks") {
  auto reg = frozen();
  auto mult = parse_formula("mult(x, y, z)");
  for (unsigned long x : {0ul, 1ul, 3ul, 7ul}) {
    for (unsigned long y : {0ul, 1ul, 4ul, 6ul}) {
      for (unsigned long z : {0ul, 1ul, 12ul, 28ul, 42ul}) {
        Env env{{"x", x}, {"y", y}, {"z", z}};
        CHECK(eval_formula(mult, reg, env) == (Nat(x) * Nat(y) == Nat(z)));
      }
    }
  }
  auto add = parse_formula("addrel(x, y, z)");
  CHECK(eval_formula(add, reg, {{"x", 20}, {"y", 22}, {"z", 42}}));
  CHECK(!eval_formula(add, reg, {{"x", 20}, {"y", 22}, {"z", 41}}));
}
