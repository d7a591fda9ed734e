#include "lstar/axioms.hpp"

#include "json.hpp"

#include "lstar/classify.hpp"
#include "lstar/parser.hpp"

namespace lstar {

// ===== deduction methods =====

const char* deduction_name(Deduction d) { return d == Deduction::Tab0 ? "tab0" : "tab1"; }

Deduction deduction_from_name(const std::string& s) {
  if (s == "tab0") return Deduction::Tab0;
  if (s == "tab1") return Deduction::Tab1;
  throw std::invalid_argument("unknown deduction method: " + s);
}

// ===== groups and systems =====

AxiomGroup AxiomGroup::finite(Tag tag, std::vector<FormulaPtr> members) {
  AxiomGroup g;
  g.tag = tag;
  g.members = std::move(members);
  return g;
}

bool AxiomSystem::contains(const FormulaPtr& f) const {
  for (const auto& g : groups) {
    if (g.schematic()) {
      if (g.membership(f)) return true;
    } else {
      for (const auto& m : g.members)
        if (formula_equal(m, f)) return true;
    }
  }
  return false;
}

std::vector<FormulaPtr> AxiomSystem::finite_members() const {
  std::vector<FormulaPtr> out;
  for (const auto& g : groups)
    if (!g.schematic()) out.insert(out.end(), g.members.begin(), g.members.end());
  return out;
}

namespace {

AxiomInterface interface_over(std::vector<AxiomGroup> groups) {
  auto shared = std::make_shared<std::vector<AxiomGroup>>(std::move(groups));
  AxiomInterface ai;
  ai.contains = [shared](const FormulaPtr& f) {
    for (const auto& g : *shared) {
      if (g.schematic()) {
        if (g.membership(f)) return true;
      } else {
        for (const auto& m : g.members)
          if (formula_equal(m, f)) return true;
      }
    }
    return false;
  };
  ai.first = [shared](std::size_t n) {
    std::vector<FormulaPtr> out;
    for (const auto& g : *shared) {
      if (g.schematic()) continue;
      for (const auto& m : g.members) {
        if (out.size() >= n) return out;
        out.push_back(m);
      }
    }
    for (const auto& g : *shared) {
      if (!g.schematic()) continue;
      if (out.size() >= n) break;
      auto more = g.enumerate(n - out.size());
      out.insert(out.end(), more.begin(), more.end());
    }
    return out;
  };
  return ai;
}

}  // namespace

AxiomInterface AxiomSystem::interface() const { return interface_over(groups); }

// ===== base groups =====

std::vector<FormulaPtr> group0_axioms() {
  return {
      parse_formula("0 = 0"),
      parse_formula("1 = 1"),
      parse_formula("A x. A y. (add(x,0) = x & add(x,add(y,1)) = add(add(x,y),1))"),
      parse_formula("A x. double(x) = add(x,x)"),
  };
}

std::vector<FormulaPtr> group1_axioms() {
  static const char* const kAxioms[] = {
      "A x. A y. (x <= y -> sub(x,y) = 0)",
      "A x. A y. (y <= x -> add(sub(x,y),y) = x)",
      "A x. div(x,0) = x",
      "A x. div(x,1) = x",
      "A x. A y. div(x,y) <= x",
      "A x. A y. max(x,y) = max(y,x)",
      "A x. A y. x <= max(x,y)",
      "A x. log(double(add(x,1))) = add(log(add(x,1)),1)",
      "A x. root(x,0) = x",
      "A x. root(x,1) = x",
      "A x. count(x,0) = 0",
      "A x. x <= x",
      "A x. 0 <= x",
      "A x. A y. (x <= y | y <= x)",
      "A x. A y. ((x <= y & y <= x) -> x = y)",
      "A x. A y. A z. ((x <= y & y <= z) -> x <= z)",
  };
  std::vector<FormulaPtr> out;
  for (const char* s : kAxioms) out.push_back(parse_formula(s));
  return out;
}

// ===== coded provability =====

void register_hilbprf(Registry& reg, const std::string& name, std::vector<FormulaPtr> base) {
  auto shared = std::make_shared<std::vector<FormulaPtr>>(std::move(base));
  reg.register_pred(name, 2, [shared](const std::vector<Nat>& args) {
    FormulaPtr phi;
    if (!try_decode(args[0], phi) || !is_sentence(phi)) return false;
    HilbertProof hp;
    try {
      hp = decode_hilbert(args[1]);
    } catch (const DecodeError&) {
      return false;
    }
    return static_cast<bool>(check_hilbert(*shared, hp, phi));
  });
}

void register_check(Registry& reg, const std::string& name) {
  reg.register_pred(name, 1, [](const std::vector<Nat>& args) {
    FormulaPtr phi;
    return try_decode(args[0], phi) && is_sentence(phi) &&
           classify(phi) == ComplexityClass::pi(1);
  });
}

FormulaPtr group2_instance(const FormulaPtr& phi, const std::string& hilbprf_name) {
  if (classify(phi) != ComplexityClass::pi(1) || !is_sentence(phi))
    throw std::invalid_argument("transfer instance requires a Pi1* sentence");
  Nat code = encode(phi);

  std::vector<std::string> prefix;
  const Formula* cur = phi.get();
  while (cur->kind == Formula::Kind::Forall) {
    prefix.push_back(cur->name);
    cur = cur->a.get();
  }
  FormulaPtr matrix(phi, const_cast<Formula*>(cur));

  std::set<std::string> taken;
  all_names(phi, taken);
  std::string p = "p";
  while (taken.count(p)) p += '\'';

  FormulaPtr body = Formula::implies(
      Formula::atom(hilbprf_name, {numeral(code), Term::var(p)}), matrix);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    body = Formula::forall(*it, body);
  return Formula::forall(p, body);
}

AxiomGroup group2_schema(const std::string& hilbprf_name) {
  AxiomGroup g;
  g.tag = AxiomGroup::Tag::Group2;
  g.membership = [hilbprf_name](const FormulaPtr& f) {
    // Recover the embedded code from the antecedent, decode, rebuild, compare.
    const Formula* cur = f.get();
    if (cur->kind != Formula::Kind::Forall) return false;
    while (cur->kind == Formula::Kind::Forall) cur = cur->a.get();
    if (cur->kind != Formula::Kind::Implies) return false;
    const Formula* ante = cur->a.get();
    if (ante->kind != Formula::Kind::CodedAtom || ante->name != hilbprf_name ||
        ante->args.size() != 2 || !term_ground(ante->args[0]))
      return false;
    Registry none;
    none.freeze();
    Nat code;
    try {
      code = eval_term(ante->args[0], none, {});
    } catch (const EvalError&) {
      return false;
    }
    FormulaPtr phi;
    if (!try_decode(code, phi) || !is_sentence(phi) ||
        classify(phi) != ComplexityClass::pi(1))
      return false;
    return formula_equal(f, group2_instance(phi, hilbprf_name));
  };
  // The enumerator walks an infinite family of universal truths
  // A v (v <= add(v, numeral(k))); it witnesses the schema's infinitude, and
  // everything it emits passes the membership test. It does not (and need
  // not) exhaust the schema.
  g.enumerate = [hilbprf_name](std::size_t n) {
    std::vector<FormulaPtr> out;
    for (std::size_t k = 0; k < n; ++k) {
      FormulaPtr phi = Formula::forall(
          "v", Formula::le(Term::var("v"),
                           Term::apply(Fn::Add, {Term::var("v"), numeral(Nat(k))})));
      out.push_back(group2_instance(phi, hilbprf_name));
    }
    return out;
  };
  return g;
}

// ===== kernels =====

namespace {

// Pair(t, g): the unique g for a given Pi1* sentence code t is the code of
// its negated existential form.
bool decode_pi1(const Nat& t, FormulaPtr& psi) {
  return try_decode(t, psi) && is_sentence(psi) && classify(psi) == ComplexityClass::pi(1);
}

bool pair_holds(const Nat& t, const Nat& g) {
  FormulaPtr psi;
  if (!decode_pi1(t, psi)) return false;
  return g == encode(negate_to_sigma(psi));
}

// Probe(g, x): g codes E w1..E wm. M with M quantifier-bounded; x unpairs
// iteratively into (a1, .., am, padding) and M must hold at that tuple.
// Matrices are evaluated over the plain language; a coded atom inside one
// makes the probe false.
bool probe_holds(const Nat& g, const Nat& x) {
  FormulaPtr sigma;
  if (!try_decode(g, sigma) || !is_sentence(sigma)) return false;
  ComplexityClass c = classify(sigma);
  if (c != ComplexityClass::sigma(1) && c != ComplexityClass::delta0()) return false;
  Env env;
  Nat rest = x;
  const Formula* cur = sigma.get();
  while (cur->kind == Formula::Kind::Exists) {
    auto [a, b] = unpair(rest);
    env[cur->name] = a;
    rest = b;
    cur = cur->a.get();
  }
  FormulaPtr matrix(sigma, const_cast<Formula*>(cur));
  Registry none;
  none.freeze();
  try {
    return eval_formula(matrix, none, env);
  } catch (const EvalError&) {
    return false;
  }
}

bool test0_semantics(const Nat& t, const Nat& x) {
  FormulaPtr psi;
  if (!decode_pi1(t, psi)) return true;  // Pair(t, g) holds for no g
  Nat g = encode(negate_to_sigma(psi));
  if (g > x) return true;
  return !probe_holds(g, x);
}

}  // namespace

Nat kernel_perm(unsigned i, const Nat& x, bool inverse) {
  // Triangular block holding x: start k(k+1)/2, size k+1.
  Nat m = 8 * x + 1;
  Nat s;
  mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
  Nat k = (s - 1) / 2;
  Nat start = k * (k + 1) / 2;
  Nat size = k + 1;
  Nat pos = x - start;
  Nat shift = Nat(i) % size;
  Nat moved;
  if (inverse)
    moved = (pos + size - shift) % size;
  else
    moved = (pos + shift) % size;
  return start + moved;
}

KernelDescriptor test0_kernel() {
  KernelDescriptor kern;
  kern.index = 0;
  kern.atom_name = "test0";
  kern.semantics = test0_semantics;
  kern.defining = parse_formula("~ E g <= x. (pair(t,g) & probe(g,x))");
  return kern;
}

KernelDescriptor test_kernel(unsigned i) {
  if (i == 0) return test0_kernel();
  KernelDescriptor kern;
  kern.index = i;
  kern.atom_name = "test" + std::to_string(i);
  kern.semantics = [i](const Nat& t, const Nat& x) {
    return test0_semantics(t, kernel_perm(i, x, true));
  };
  return kern;
}

void register_kernel(Registry& reg, const KernelDescriptor& kern) {
  auto sem = kern.semantics;
  reg.register_pred(kern.atom_name, 2,
                    [sem](const std::vector<Nat>& args) { return sem(args[0], args[1]); });
}

FormulaPtr kernel_image(const KernelDescriptor& kern, const FormulaPtr& psi) {
  if (classify(psi) != ComplexityClass::pi(1) || !is_sentence(psi))
    throw std::invalid_argument("kernel image requires a Pi1* sentence");
  Nat code = encode(psi);
  return Formula::forall(
      "x", Formula::atom(kern.atom_name, {numeral(code), Term::var("x")}));
}

bool kernel_bounded_true(const KernelDescriptor& kern, const FormulaPtr& psi, const Nat& cap,
                         const Registry&) {
  Nat code = encode(psi);
  for (Nat x = 0; x <= cap; ++x)
    if (!kern.semantics(code, x)) return false;
  return true;
}

std::optional<Nat> kernel_falsifier(const KernelDescriptor& kern, const FormulaPtr& psi,
                                    const Nat& witness_cap, const Registry& reg) {
  if (classify(psi) != ComplexityClass::pi(1)) return std::nullopt;
  TruthProbeResult r = probe_truth(psi, witness_cap, reg);
  if (!r.refuted()) return std::nullopt;
  // Pack the counterexample tuple behind the sigma code: padding = g makes
  // the packed value >= g because pairing(a, b) >= b.
  Nat g = encode(negate_to_sigma(psi));
  Nat x = g;
  for (auto it = r.tuple.rbegin(); it != r.tuple.rend(); ++it) x = pairing(*it, x);
  if (kern.index != 0) x = kernel_perm(kern.index, x, false);
  return x;
}

// ===== construction context =====

ForgeContext make_forge_context(std::vector<FormulaPtr> base,
                                const std::vector<unsigned>& kernel_indices) {
  ForgeContext ctx;
  ctx.reg = std::make_shared<Registry>();
  ctx.base = std::move(base);
  register_subfn(*ctx.reg);
  register_hilbprf(*ctx.reg, ForgeContext::kHilbPrf, ctx.base);
  register_check(*ctx.reg, ForgeContext::kCheck);
  ctx.reg->register_pred(ForgeContext::kPair, 2, [](const std::vector<Nat>& args) {
    return pair_holds(args[0], args[1]);
  });
  ctx.reg->register_pred("probe", 2, [](const std::vector<Nat>& args) {
    return probe_holds(args[0], args[1]);
  });
  for (unsigned i : kernel_indices) {
    KernelDescriptor kern = test_kernel(i);
    register_kernel(*ctx.reg, kern);
    ctx.kernels.push_back(std::move(kern));
  }
  return ctx;
}

FormulaPtr globsim_sentence(const ForgeContext&, const KernelDescriptor& kern) {
  TermPtr t = Term::var("t");
  FormulaPtr ante = Formula::land(
      Formula::atom(ForgeContext::kHilbPrf, {t, Term::var("q")}),
      Formula::atom(ForgeContext::kCheck, {t}));
  FormulaPtr cons = Formula::atom(kern.atom_name, {t, Term::var("x")});
  return Formula::forall(
      "t", Formula::forall("q", Formula::forall("x", Formula::implies(ante, cons))));
}

std::vector<FormulaPtr> beta_L(const ForgeContext& ctx,
                               const std::vector<KernelDescriptor>& kerns,
                               const std::vector<FormulaPtr>& extras) {
  std::vector<FormulaPtr> out;
  for (const auto& k : kerns) out.push_back(globsim_sentence(ctx, k));
  for (const auto& e : extras) {
    if (classify(e) != ComplexityClass::pi(1))
      throw std::invalid_argument("extra axiom is not Pi1*: " + render_formula(e));
    out.push_back(e);
  }
  return out;
}

// ===== self-referential members =====

namespace {

// p codes a proof, by `d`, of the sentence coded x from `base` plus the
// sentence coded s. The registry pointer is the registry the predicate
// itself lives in; it must outlive the returned closure (systems keep their
// registry alive for as long as they exist).
Registry::CodedPred make_prf(const AxiomInterface& base, Deduction d, const Registry* reg) {
  return [base, d, reg](const std::vector<Nat>& args) {
    FormulaPtr phi;
    if (!try_decode(args[0], phi) || !is_sentence(phi)) return false;
    FormulaPtr extra;
    if (!try_decode(args[2], extra) || !is_sentence(extra)) return false;

    AxiomInterface ax;
    ax.contains = [base, extra](const FormulaPtr& f) {
      return formula_equal(f, extra) || base.contains(f);
    };
    ax.first = [base, extra](std::size_t n) {
      std::vector<FormulaPtr> out = base.first(n);
      if (out.size() < n) out.push_back(extra);
      return out;
    };

    try {
      if (d == Deduction::Tab0) {
        TableauxProof proof = decode_tableaux(args[1]);
        return static_cast<bool>(check_tableaux(ax, phi, proof, *reg));
      }
      TabKProof proof;
      if (!try_decode_tabk(args[1], proof) || proof.level != 1) return false;
      return static_cast<bool>(check_tabk(ax, 1, phi, proof, *reg));
    } catch (const DecodeError&) {
      return false;
    } catch (const std::invalid_argument&) {
      return false;
    }
  };
}

}  // namespace

FormulaPtr group3_sentence(Registry& reg, const AxiomInterface& rest, Deduction d) {
  if (!reg.has_pred(ForgeContext::kPair))
    reg.register_pred(ForgeContext::kPair, 2, [](const std::vector<Nat>& args) {
      return pair_holds(args[0], args[1]);
    });
  reg.register_pred(ForgeContext::kPrf, 3, make_prf(rest, d, &reg));

  TermPtr v0 = Term::var("v0");
  FormulaPtr matrix = Formula::lnot(Formula::land(
      Formula::atom(ForgeContext::kPair, {Term::var("x"), Term::var("y")}),
      Formula::land(
          Formula::atom(ForgeContext::kPrf, {Term::var("x"), Term::var("p"), v0}),
          Formula::atom(ForgeContext::kPrf, {Term::var("y"), Term::var("q"), v0}))));
  FormulaPtr theta = Formula::forall(
      "x", Formula::forall("y", Formula::forall("p", Formula::forall("q", matrix))));
  return diagonalize(theta);
}

FormulaPtr selfref_sentence(Registry& reg, const std::string& prf_name,
                            const AxiomInterface& alpha, Deduction d) {
  reg.register_pred(prf_name, 3, make_prf(alpha, d, &reg));
  Nat falsum = encode(Formula::eq(Term::zero(), Term::one()));
  FormulaPtr theta = Formula::forall(
      "p", Formula::lnot(Formula::atom(
               prf_name, {numeral(falsum), Term::var("p"), Term::var("v0")})));
  return diagonalize(theta);
}

// ===== system assembly =====

AxiomSystem build_isd(ForgeContext ctx, Deduction d) {
  AxiomSystem sys;
  sys.name = "isd";
  sys.deduction = d;
  AxiomGroup g0 = AxiomGroup::finite(AxiomGroup::Tag::Group0, group0_axioms());
  AxiomGroup g1 = AxiomGroup::finite(AxiomGroup::Tag::Group1, group1_axioms());
  AxiomGroup g2 = group2_schema(ForgeContext::kHilbPrf);
  FormulaPtr self =
      group3_sentence(*ctx.reg, interface_over({g0, g1, g2}), d);
  sys.groups = {g0, g1, g2, AxiomGroup::finite(AxiomGroup::Tag::Group3, {self})};
  sys.registry = ctx.reg;
  sys.registry->freeze();
  sys.self_code = encode(self);
  return sys;
}

AxiomSystem build_isd_sharp(ForgeContext ctx, std::vector<FormulaPtr> beta, Deduction d) {
  for (const auto& b : beta)
    if (classify(b) != ComplexityClass::pi(1))
      throw std::invalid_argument("transfer member is not Pi1*: " + render_formula(b));
  AxiomSystem sys;
  sys.name = "isd-sharp";
  sys.deduction = d;
  AxiomGroup g0 = AxiomGroup::finite(AxiomGroup::Tag::Group0, group0_axioms());
  AxiomGroup g1 = AxiomGroup::finite(AxiomGroup::Tag::Group1, group1_axioms());
  AxiomGroup g2 = AxiomGroup::finite(AxiomGroup::Tag::Group2, std::move(beta));
  FormulaPtr self =
      group3_sentence(*ctx.reg, interface_over({g0, g1, g2}), d);
  sys.groups = {g0, g1, g2, AxiomGroup::finite(AxiomGroup::Tag::Group3, {self})};
  sys.registry = ctx.reg;
  sys.registry->freeze();
  sys.self_code = encode(self);
  return sys;
}

// ===== theorem transfer pipeline =====

TabKProof kernelized_pipeline(const ForgeContext& ctx, const HilbertProof& hproof,
                              const FormulaPtr& psi, const KernelDescriptor& kern) {
  Verdict cert = check_hilbert(ctx.base, hproof, psi);
  if (!cert) throw std::invalid_argument("certificate rejected: " + cert.reason);

  FormulaPtr goal = kernel_image(kern, psi);
  FormulaPtr globsim = globsim_sentence(ctx, kern);
  TermPtr tcode = numeral(encode(psi));
  TermPtr qcode = numeral(encode_hilbert(hproof));

  std::set<std::string> taken;
  all_names(goal, taken);
  std::string w = "w";
  while (taken.count(w)) w += '\'';

  TableauxProof tp;
  auto add = [&tp](FormulaPtr f, Justification j, std::size_t parent) {
    TabNode n;
    n.formula = std::move(f);
    n.just = std::move(j);
    n.parent = parent;
    tp.nodes.push_back(std::move(n));
    return tp.nodes.size() - 1;
  };
  auto just = [](Justification::Kind k) {
    Justification j;
    j.kind = k;
    return j;
  };

  // 0: the negated goal.
  add(Formula::lnot(goal), just(Justification::Kind::NegatedGoal), 0);

  // 1: fresh witness for the failing scan value.
  Justification jd = just(Justification::Kind::Delta);
  jd.principal = 0;
  jd.param = w;
  std::size_t n1 = add(Formula::lnot(substitute(goal->a, goal->name, Term::var(w))), jd, 0);

  // 2: the simulation axiom.
  std::size_t n2 = add(globsim, just(Justification::Kind::AxiomIntro), n1);

  // 3-5: instantiate it at the sentence code, the certificate code, and the
  // witness.
  auto gamma = [&](std::size_t principal, const TermPtr& t, std::size_t parent) {
    FormulaPtr src = tp.nodes[principal].formula;  // copy: add() reallocates nodes
    Justification j = just(Justification::Kind::Gamma);
    j.principal = principal;
    j.term = t;
    return add(substitute(src->a, src->name, t), j, parent);
  };
  std::size_t n3 = gamma(n2, tcode, n2);
  std::size_t n4 = gamma(n3, qcode, n3);
  std::size_t n5 = gamma(n4, Term::var(w), n4);

  // The instance is (hilbprf & check) -> test; split it, then split the
  // negated conjunction; all three leaves close on ground facts.
  FormulaPtr impl = tp.nodes[n5].formula;  // copy: add() reallocates nodes
  auto beta = [&](std::size_t principal, bool right, FormulaPtr f, std::size_t parent) {
    Justification j = just(Justification::Kind::Beta);
    j.principal = principal;
    j.right = right;
    return add(std::move(f), j, parent);
  };
  std::size_t n6 = beta(n5, false, Formula::lnot(impl->a), n5);
  std::size_t n7 = beta(n6, false, Formula::lnot(impl->a->a), n6);
  Justification c8 = just(Justification::Kind::Closed);
  c8.close = Justification::CloseKind::TrueGroundAtomNegated;
  c8.i = n7;
  add(nullptr, c8, n7);
  std::size_t n9 = beta(n6, true, Formula::lnot(impl->a->b), n6);
  Justification c10 = just(Justification::Kind::Closed);
  c10.close = Justification::CloseKind::TrueGroundAtomNegated;
  c10.i = n9;
  add(nullptr, c10, n9);
  std::size_t n11 = beta(n5, true, impl->b, n5);
  Justification c12 = just(Justification::Kind::Closed);
  c12.close = Justification::CloseKind::ComplementaryPair;
  c12.i = n11;
  c12.j = n1;
  add(nullptr, c12, n11);

  TabKProof chain;
  chain.level = 1;
  chain.steps.push_back({goal, std::move(tp)});
  return chain;
}

// ===== bounded consistency scan =====

SmokeResult consistency_smoke(const AxiomSystem& sys, const Nat& bound) {
  SmokeResult res;
  AxiomInterface ax = sys.interface();
  for (Nat code = 1; code <= bound; ++code) {
    ++res.codes_scanned;
    FormulaPtr theorem;
    if (sys.deduction == Deduction::Tab1) {
      TabKProof proof;
      if (!try_decode_tabk(code, proof) || proof.level != 1 || proof.steps.empty()) continue;
      theorem = proof.steps.back().theorem;
      if (!is_sentence(theorem)) continue;
      if (!check_tabk(ax, 1, theorem, proof, *sys.registry)) continue;
    } else {
      TableauxProof proof;
      try {
        proof = decode_tableaux(code);
      } catch (const DecodeError&) {
        continue;
      }
      if (proof.nodes.empty() || !proof.nodes[0].formula ||
          proof.nodes[0].formula->kind != Formula::Kind::Not)
        continue;
      theorem = proof.nodes[0].formula->a;
      if (!is_sentence(theorem)) continue;
      if (!check_tableaux(ax, theorem, proof, *sys.registry)) continue;
    }
    ++res.proofs_found;
    res.theorems.push_back(theorem);
  }
  for (const auto& t : res.theorems) {
    if (classify(t) != ComplexityClass::pi(1)) continue;
    Nat neg = encode(negate_to_sigma(t));
    for (const auto& u : res.theorems)
      if (encode(u) == neg) res.contradiction = true;
  }
  return res;
}

// ===== manifests =====

BuiltSystem forge_system(const std::string& kind, std::vector<FormulaPtr> base,
                         const std::vector<unsigned>& kernel_indices,
                         std::vector<FormulaPtr> beta, Deduction d) {
  BuiltSystem bs;
  bs.kind = kind;
  bs.ctx = make_forge_context(std::move(base), kernel_indices);
  bs.kernel_indices = kernel_indices;
  if (kind == "isd") {
    bs.system = build_isd(bs.ctx, d);
  } else if (kind == "isd-sharp") {
    bs.beta = beta;
    bs.system = build_isd_sharp(bs.ctx, std::move(beta), d);
  } else {
    throw std::invalid_argument("unknown system kind: " + kind);
  }
  return bs;
}

std::string render_system_manifest(const BuiltSystem& bs) {
  nlohmann::json j;
  j["kind"] = bs.kind;
  j["name"] = bs.system.name;
  j["deduction"] = deduction_name(bs.system.deduction);
  j["kernels"] = bs.kernel_indices;
  j["base"] = nlohmann::json::array();
  for (const auto& f : bs.ctx.base) j["base"].push_back(render_formula(f));
  j["beta"] = nlohmann::json::array();
  for (const auto& f : bs.beta) j["beta"].push_back(render_formula(f));
  j["self_code"] = bs.system.self_code ? bs.system.self_code->get_str() : "";
  return j.dump(2) + "\n";
}

BuiltSystem parse_system_manifest(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  std::vector<FormulaPtr> base;
  for (const auto& s : j.at("base")) base.push_back(parse_formula(s.get<std::string>()));
  std::vector<FormulaPtr> beta;
  for (const auto& s : j.at("beta")) beta.push_back(parse_formula(s.get<std::string>()));
  std::vector<unsigned> kernels;
  for (const auto& k : j.at("kernels")) kernels.push_back(k.get<unsigned>());
  Deduction d = deduction_from_name(j.at("deduction").get<std::string>());

  BuiltSystem bs = forge_system(j.at("kind").get<std::string>(), std::move(base), kernels,
                                std::move(beta), d);
  std::string recorded = j.at("self_code").get<std::string>();
  if (!recorded.empty() && bs.system.self_code &&
      bs.system.self_code->get_str() != recorded)
    throw std::invalid_argument("manifest self code does not match the re-forged system");
  return bs;
}

}  // namespace lstar
