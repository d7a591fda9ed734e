#include "lstar/reflect.hpp"

#include "lstar/classify.hpp"

namespace lstar {

FormulaPtr oplus(const FormulaPtr& phi) {
  if (classify(phi) == ComplexityClass::unclassified())
    throw std::invalid_argument("dilution requires a generalized prenex sentence");

  struct Layer {
    bool universal;
    std::string var;
  };
  std::vector<Layer> prefix;
  const Formula* cur = phi.get();
  bool any_universal = false;
  while (cur->kind == Formula::Kind::Forall || cur->kind == Formula::Kind::Exists) {
    bool uni = cur->kind == Formula::Kind::Forall;
    any_universal = any_universal || uni;
    prefix.push_back({uni, cur->name});
    cur = cur->a.get();
  }
  if (!any_universal) return phi;

  std::set<std::string> taken;
  all_names(phi, taken);
  std::string x = "x";
  while (taken.count(x)) x += '\'';

  // u < root(x,2), i.e. u <= sub(root(x,2),1).
  TermPtr cap = Term::apply(
      Fn::Sub, {Term::apply(Fn::Root, {Term::var(x), numeral(2)}), Term::one()});

  FormulaPtr body(phi, const_cast<Formula*>(cur));
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    if (it->universal)
      body = Formula::bforall(it->var, cap, body);
    else
      body = Formula::exists(it->var, body);
  }
  return Formula::forall(x, body);
}

// ===== provability over a completed system =====

ReflectionContext make_reflection_context(const AxiomSystem& sys) {
  ReflectionContext rc;
  rc.reg = std::make_shared<Registry>(sys.registry->extended());
  rc.prf_name = sys.deduction == Deduction::Tab0 ? "prftab0" : "prftab1";

  AxiomInterface ax = sys.interface();
  Deduction d = sys.deduction;
  const Registry* regp = rc.reg.get();
  rc.reg->register_pred(rc.prf_name, 2, [ax, d, regp](const std::vector<Nat>& args) {
    FormulaPtr phi;
    if (!try_decode(args[0], phi) || !is_sentence(phi)) return false;
    try {
      if (d == Deduction::Tab0) {
        TableauxProof proof = decode_tableaux(args[1]);
        return static_cast<bool>(check_tableaux(ax, phi, proof, *regp));
      }
      TabKProof proof;
      if (!try_decode_tabk(args[1], proof) || proof.level != 1) return false;
      return static_cast<bool>(check_tabk(ax, 1, phi, proof, *regp));
    } catch (const DecodeError&) {
      return false;
    } catch (const std::invalid_argument&) {
      return false;
    }
  });
  rc.reg->freeze();
  return rc;
}

namespace {

FormulaPtr provability_implies(const ReflectionContext& rc, const FormulaPtr& phi,
                               FormulaPtr consequent) {
  Nat code = encode(phi);
  std::set<std::string> taken;
  all_names(consequent, taken);
  std::string p = "p";
  while (taken.count(p)) p += '\'';
  return Formula::forall(
      p, Formula::implies(Formula::atom(rc.prf_name, {numeral(code), Term::var(p)}),
                          std::move(consequent)));
}

}  // namespace

FormulaPtr reflection_sentence(const ReflectionContext& rc, const FormulaPtr& phi) {
  ComplexityClass c = classify(phi);
  if (!is_sentence(phi) ||
      (c != ComplexityClass::delta0() && c != ComplexityClass::sigma(1)))
    throw std::invalid_argument("reflection requires a Delta0* or Sigma1* sentence");
  return provability_implies(rc, phi, phi);
}

FormulaPtr root_diluted_sentence(const ReflectionContext& rc, const FormulaPtr& phi) {
  if (!is_sentence(phi) || classify(phi) != ComplexityClass::pi(2))
    throw std::invalid_argument(
        "root dilution requires a Pi2* sentence (universal block over Sigma1*)");
  return provability_implies(rc, phi, oplus(phi));
}

FormulaPtr brxefl_sentence(const ReflectionContext& rc, ReflectMode mode,
                           const FormulaPtr& phi) {
  if (!is_sentence(phi)) throw std::invalid_argument("reflection requires a sentence");
  FormulaPtr consequent = mode == ReflectMode::Diluted ? oplus(phi) : phi;
  return provability_implies(rc, phi, std::move(consequent));
}

// ===== product halves =====

namespace {

unsigned long half_width(const Nat& a, const Nat& b) {
  std::size_t k = std::max(bitlen(a), bitlen(b));
  return k == 0 ? 1 : static_cast<unsigned long>(k);
}

}  // namespace

Nat left_half(const Nat& a, const Nat& b) {
  Nat prod = a * b;
  Nat out;
  mpz_tdiv_q_2exp(out.get_mpz_t(), prod.get_mpz_t(), half_width(a, b));
  return out;
}

Nat right_half(const Nat& a, const Nat& b) {
  Nat prod = a * b;
  Nat out;
  mpz_tdiv_r_2exp(out.get_mpz_t(), prod.get_mpz_t(), half_width(a, b));
  return out;
}

}  // namespace lstar
