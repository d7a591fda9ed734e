#include "lstar/growth.hpp"

#include <sstream>

#include "lstar/parser.hpp"
#include "lstar/tableaux.hpp"

namespace lstar {

Nat seq_x(unsigned n) { return pow2(n + 1); }

Nat seq_y(unsigned n) {
  if (n >= 64) throw std::invalid_argument("scale index too large to materialize");
  return pow2(1UL << n);
}

bool gr_holds(const Nat& i, const Nat& v, const Nat& w) {
  if (v == 0) return w == 0;
  if (w == 0) return false;
  if (w % v != 0) return false;
  Nat q = w / v;
  if (q == 1 || !is_pow2(q)) return false;
  // q = 2^e with e >= 1; the scale factor matches iff e = 2^i.
  Nat e(bitlen(q) - 1);
  return is_pow2(e) && Nat(floor_log2(e)) == i;
}

void register_gr(Registry& reg) {
  reg.register_pred("gr", 3, [](const std::vector<Nat>& args) {
    return gr_holds(args[0], args[1], args[2]);
  });
}

FormulaPtr gr_base_axiom() { return parse_formula("A v. gr(0, v, double(v))"); }

FormulaPtr gr_composition_axiom() {
  return parse_formula(
      "A i. A v. A u. A w. ((gr(i,v,u) & gr(i,u,w)) -> gr(add(i,1),v,w))");
}

std::vector<FormulaPtr> growth_beta() { return {gr_base_axiom(), gr_composition_axiom()}; }

FormulaPtr upsilon(unsigned i) {
  return Formula::forall(
      "v", Formula::exists("w", Formula::atom("gr", {numeral(Nat(i)), Term::var("v"),
                                                     Term::var("w")})));
}

namespace {

Justification mk(Justification::Kind k) {
  Justification j;
  j.kind = k;
  return j;
}

std::size_t add_node(TableauxProof& tp, FormulaPtr f, Justification j, std::size_t parent) {
  TabNode n;
  n.formula = std::move(f);
  n.just = std::move(j);
  n.parent = parent;
  tp.nodes.push_back(std::move(n));
  return tp.nodes.size() - 1;
}

FormulaPtr gr_atom(TermPtr i, TermPtr v, TermPtr w) {
  return Formula::atom("gr", {std::move(i), std::move(v), std::move(w)});
}

// upsilon(0) from the base axiom: witness double(a) for the fresh a.
TableauxProof base_step(const std::string& a) {
  TableauxProof tp;
  TermPtr va = Term::var(a);
  TermPtr da = Term::apply(Fn::Double, {va});
  FormulaPtr goal = upsilon(0);

  add_node(tp, Formula::lnot(goal), mk(Justification::Kind::NegatedGoal), 0);
  Justification jd = mk(Justification::Kind::Delta);
  jd.principal = 0;
  jd.param = a;
  std::size_t n1 = add_node(
      tp, Formula::lnot(Formula::exists("w", gr_atom(numeral(0), va, Term::var("w")))), jd, 0);
  std::size_t n2 = add_node(tp, gr_base_axiom(), mk(Justification::Kind::AxiomIntro), n1);
  Justification jg = mk(Justification::Kind::Gamma);
  jg.principal = n2;
  jg.term = va;
  std::size_t n3 = add_node(tp, gr_atom(Term::zero(), va, da), jg, n2);
  Justification jg2 = mk(Justification::Kind::Gamma);
  jg2.principal = n1;
  jg2.term = da;
  std::size_t n4 = add_node(tp, Formula::lnot(gr_atom(numeral(0), va, da)), jg2, n3);
  Justification jc = mk(Justification::Kind::Closed);
  jc.close = Justification::CloseKind::ComplementaryPair;
  jc.i = n3;
  jc.j = n4;
  add_node(tp, nullptr, jc, n4);
  return tp;
}

// upsilon(i+1) from upsilon(i) and the composition axiom: chase a through two
// scalings a -> b -> c, then compose them. The final closure matches
// gr(add(i,1),a,c) against ~gr(numeral(i+1),a,c) by ground-argument value
// equality.
TableauxProof link_step(unsigned i, const std::string& a, const std::string& b,
                        const std::string& c) {
  TableauxProof tp;
  TermPtr ni = numeral(Nat(i));
  TermPtr va = Term::var(a), vb = Term::var(b), vc = Term::var(c);
  FormulaPtr goal = upsilon(i + 1);

  add_node(tp, Formula::lnot(goal), mk(Justification::Kind::NegatedGoal), 0);

  Justification jd = mk(Justification::Kind::Delta);
  jd.principal = 0;
  jd.param = a;
  std::size_t n1 = add_node(
      tp,
      Formula::lnot(Formula::exists("w", gr_atom(numeral(Nat(i) + 1), va, Term::var("w")))),
      jd, 0);

  std::size_t n2 = add_node(tp, upsilon(i), mk(Justification::Kind::AxiomIntro), n1);

  auto gamma = [&tp](std::size_t principal, TermPtr t, std::size_t parent, FormulaPtr f) {
    Justification j = mk(Justification::Kind::Gamma);
    j.principal = principal;
    j.term = std::move(t);
    return add_node(tp, std::move(f), j, parent);
  };
  auto delta = [&tp](std::size_t principal, const std::string& p, std::size_t parent,
                     FormulaPtr f) {
    Justification j = mk(Justification::Kind::Delta);
    j.principal = principal;
    j.param = p;
    return add_node(tp, std::move(f), j, parent);
  };

  std::size_t n3 =
      gamma(n2, va, n2, Formula::exists("w", gr_atom(ni, va, Term::var("w"))));
  std::size_t n4 = delta(n3, b, n3, gr_atom(ni, va, vb));
  std::size_t n5 =
      gamma(n2, vb, n4, Formula::exists("w", gr_atom(ni, vb, Term::var("w"))));
  std::size_t n6 = delta(n5, c, n5, gr_atom(ni, vb, vc));

  std::size_t n7 = add_node(tp, gr_composition_axiom(), mk(Justification::Kind::AxiomIntro), n6);

  // Unrolling A i A v A u A w ((gr & gr) -> gr) at (ni, a, b, c).
  const FormulaPtr& comp = tp.nodes[n7].formula;
  FormulaPtr f8 = substitute(comp->a, comp->name, ni);
  std::size_t n8 = gamma(n7, ni, n7, f8);
  FormulaPtr f9 = substitute(f8->a, f8->name, va);
  std::size_t n9 = gamma(n8, va, n8, f9);
  FormulaPtr f10 = substitute(f9->a, f9->name, vb);
  std::size_t n10 = gamma(n9, vb, n9, f10);
  FormulaPtr f11 = substitute(f10->a, f10->name, vc);
  std::size_t n11 = gamma(n10, vc, n10, f11);

  auto beta = [&tp](std::size_t principal, bool right, FormulaPtr f, std::size_t parent) {
    Justification j = mk(Justification::Kind::Beta);
    j.principal = principal;
    j.right = right;
    return add_node(tp, std::move(f), j, parent);
  };
  auto close_pair = [&tp](std::size_t x, std::size_t y, std::size_t parent) {
    Justification j = mk(Justification::Kind::Closed);
    j.close = Justification::CloseKind::ComplementaryPair;
    j.i = x;
    j.j = y;
    add_node(tp, nullptr, j, parent);
  };

  std::size_t n12 = beta(n11, false, Formula::lnot(f11->a), n11);
  std::size_t n13 = beta(n12, false, Formula::lnot(f11->a->a), n12);
  close_pair(n13, n4, n13);
  std::size_t n15 = beta(n12, true, Formula::lnot(f11->a->b), n12);
  close_pair(n15, n6, n15);
  std::size_t n17 = beta(n11, true, f11->b, n11);
  std::size_t n18 = gamma(n1, vc, n17, Formula::lnot(gr_atom(numeral(Nat(i) + 1), va, vc)));
  close_pair(n17, n18, n18);
  return tp;
}

}  // namespace

TabKProof tab2_upsilon_proof(unsigned n) {
  if (n < 1) throw std::invalid_argument("chain length must be at least 1");
  TabKProof chain;
  chain.level = 2;
  unsigned counter = 0;
  auto fresh = [&counter] { return "c" + std::to_string(counter++); };
  chain.steps.push_back({upsilon(0), base_step(fresh())});
  for (unsigned i = 0; i < n; ++i) {
    std::string a = fresh(), b = fresh(), c = fresh();
    chain.steps.push_back({upsilon(i + 1), link_step(i, a, b, c)});
  }
  return chain;
}

std::optional<Nat> solve_gr_witness(unsigned n, const Nat& cap) {
  for (Nat w = 0; w <= cap; ++w)
    if (gr_holds(Nat(n), 1, w)) return w;
  return std::nullopt;
}

GrowthReport growth_report(unsigned nmax, std::size_t tab1_budget) {
  GrowthReport report;
  Registry reg;
  register_gr(reg);
  reg.freeze();
  AxiomInterface beta = AxiomInterface::from_list(growth_beta());

  for (unsigned n = 1; n <= nmax; ++n) {
    GrowthRow row;
    row.n = n;
    TabKProof chain = tab2_upsilon_proof(n);
    row.tab2_nodes = chain.total_nodes();
    row.tab2_ok = static_cast<bool>(check_tabk(beta, 2, upsilon(n), chain, reg));

    if (tab1_budget > 0) {
      SearchOptions opt;
      opt.max_nodes = tab1_budget;
      SearchOutcome out = search_tableaux(beta, upsilon(n), opt, reg);
      row.tab1_found = out.found;
      row.tab1_nodes = out.nodes;
    }

    if (n <= 4) {
      row.witness_checked = true;
      auto w = solve_gr_witness(n, seq_y(4) + 1);
      row.witness_ok = w && *w == seq_y(n);
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string render_growth_csv(const GrowthReport& report) {
  std::ostringstream os;
  os << "n,tab2_nodes,tab2_ok,tab1_nodes_or_exhausted,witness_ok\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << r.tab2_nodes << ',' << (r.tab2_ok ? 1 : 0) << ',';
    if (r.tab1_found)
      os << r.tab1_nodes;
    else
      os << "exhausted(" << r.tab1_nodes << ")";
    os << ',';
    if (r.witness_checked) os << (r.witness_ok ? 1 : 0);
    os << '\n';
  }
  return os.str();
}

std::string render_growth_table(const GrowthReport& report) {
  std::ostringstream os;
  os << "  n  tab2_nodes  tab2_ok  tab1                 witness\n";
  for (const auto& r : report.rows) {
    char buf[96];
    std::string tab1 = r.tab1_found ? std::to_string(r.tab1_nodes)
                                    : "exhausted(" + std::to_string(r.tab1_nodes) + ")";
    std::string wit = r.witness_checked ? (r.witness_ok ? "ok" : "MISMATCH") : "-";
    std::snprintf(buf, sizeof buf, "%3u  %10zu  %7s  %-19s  %s\n", r.n, r.tab2_nodes,
                  r.tab2_ok ? "yes" : "NO", tab1.c_str(), wit.c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace lstar
