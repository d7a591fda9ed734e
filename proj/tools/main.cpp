// Command-line workbench: parsing, classification, evaluation, proof
// checking and search, object codes, system construction, the theorem
// transfer pipeline, growth measurements, and reflection builders.
//
// Exit codes: 0 = success / accept / true, 1 = reject / false / not found,
// 2 = usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lstar/axioms.hpp"
#include "lstar/classify.hpp"
#include "lstar/codec.hpp"
#include "lstar/growth.hpp"
#include "lstar/parser.hpp"
#include "lstar/reflect.hpp"

namespace {

using namespace lstar;

// Option values that name an existing file are read from it; anything else
// is taken as literal text.
std::string read_arg(const std::string& s) {
  std::ifstream in(s);
  if (!in) return s;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// One formula per line; blank lines and # comments skipped.
std::vector<FormulaPtr> parse_formula_list(const std::string& text) {
  std::vector<FormulaPtr> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    out.push_back(parse_formula(s));
  }
  return out;
}

// Stock registry for standalone checking: the code-substitution function,
// the pairing/probe predicates, three kernels, the scaling relation, and a
// Hilbert-provability predicate bound to the supplied axioms.
std::shared_ptr<Registry> stock_registry(std::vector<FormulaPtr> hilb_base) {
  ForgeContext ctx = make_forge_context(std::move(hilb_base), {0, 1, 2});
  register_gr(*ctx.reg);
  ctx.reg->freeze();
  return ctx.reg;
}

struct RegistryChoice {
  std::string manifest_path;  // empty = stock registry

  std::shared_ptr<Registry> resolve(const std::vector<FormulaPtr>& axioms) const {
    if (manifest_path.empty()) return stock_registry(axioms);
    BuiltSystem bs = parse_system_manifest(read_file(manifest_path));
    return bs.system.registry;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"workbench for tableaux, Hilbert proofs, coded sentences and "
               "self-referential axiom systems"};
  app.require_subcommand(1);

  // ---------- parse ----------
  auto* cmd_parse = app.add_subcommand("parse", "parse and re-render a formula or term");
  std::string parse_input;
  bool parse_term_mode = false;
  cmd_parse->add_option("input", parse_input, "formula/term text or file")->required();
  cmd_parse->add_flag("--term", parse_term_mode, "parse a term instead of a formula");

  // ---------- classify ----------
  auto* cmd_classify = app.add_subcommand("classify", "quantifier-hierarchy class of a formula");
  std::string classify_input;
  cmd_classify->add_option("input", classify_input, "formula text or file")->required();

  // ---------- eval ----------
  auto* cmd_eval = app.add_subcommand(
      "eval", "evaluate a ground term or a quantifier-bounded sentence");
  std::string eval_input;
  bool eval_term_mode = false;
  std::vector<std::string> eval_env;
  cmd_eval->add_option("input", eval_input, "formula/term text or file")->required();
  cmd_eval->add_flag("--term", eval_term_mode, "evaluate a term");
  cmd_eval->add_option("--let", eval_env, "variable binding name=value (repeatable)");

  // ---------- check-hilbert ----------
  auto* cmd_ch = app.add_subcommand("check-hilbert", "check a Hilbert-style proof");
  std::string ch_axioms, ch_proof, ch_goal;
  cmd_ch->add_option("--axioms", ch_axioms, "axiom list file")->required();
  cmd_ch->add_option("--proof", ch_proof, "proof file")->required();
  cmd_ch->add_option("--goal", ch_goal, "goal formula text or file")->required();

  // ---------- check-tab ----------
  auto* cmd_ct = app.add_subcommand("check-tab", "check a tableau proof");
  std::string ct_axioms, ct_proof, ct_goal;
  RegistryChoice ct_reg;
  cmd_ct->add_option("--axioms", ct_axioms, "axiom list file")->required();
  cmd_ct->add_option("--proof", ct_proof, "proof file")->required();
  cmd_ct->add_option("--goal", ct_goal, "goal formula text or file")->required();
  cmd_ct->add_option("--registry", ct_reg.manifest_path, "system manifest for coded symbols");

  // ---------- check-tabk ----------
  auto* cmd_ck = app.add_subcommand("check-tabk", "check a bounded-cut chain proof");
  std::string ck_axioms, ck_proof, ck_goal;
  unsigned ck_level = 1;
  RegistryChoice ck_reg;
  cmd_ck->add_option("--level", ck_level, "cut complexity level")->required();
  cmd_ck->add_option("--axioms", ck_axioms, "axiom list file")->required();
  cmd_ck->add_option("--proof", ck_proof, "chain file")->required();
  cmd_ck->add_option("--goal", ck_goal, "goal formula text or file")->required();
  cmd_ck->add_option("--registry", ck_reg.manifest_path, "system manifest for coded symbols");

  // ---------- search-tab ----------
  auto* cmd_st = app.add_subcommand("search-tab", "bounded deterministic tableau search");
  std::string st_axioms, st_goal;
  std::vector<std::string> st_hints;
  SearchOptions st_opt;
  bool st_no_eval = false;
  RegistryChoice st_reg;
  cmd_st->add_option("--axioms", st_axioms, "axiom list file")->required();
  cmd_st->add_option("--goal", st_goal, "goal formula text or file")->required();
  cmd_st->add_option("--max-nodes", st_opt.max_nodes, "node budget");
  cmd_st->add_option("--max-depth", st_opt.max_depth, "branch length cap (0 = unlimited)");
  cmd_st->add_option("--max-numeral", st_opt.max_numeral, "largest fallback numeral candidate");
  cmd_st->add_option("--hint", st_hints, "extra instantiation term (repeatable)");
  cmd_st->add_flag("--no-eval-closure", st_no_eval, "disable ground-evaluation closures");
  cmd_st->add_option("--registry", st_reg.manifest_path, "system manifest for coded symbols");

  // ---------- godel ----------
  auto* cmd_g = app.add_subcommand("godel", "object codes: encode / decode");
  std::string g_dir, g_kind = "formula", g_input;
  cmd_g->add_option("direction", g_dir, "encode or decode")
      ->required()
      ->check(CLI::IsMember({"encode", "decode"}));
  cmd_g->add_option("input", g_input, "object text / decimal code, or file")->required();
  cmd_g->add_option("--kind", g_kind, "term|formula|hilbert|tableaux|tabk")
      ->check(CLI::IsMember({"term", "formula", "hilbert", "tableaux", "tabk"}));

  // ---------- build-system ----------
  auto* cmd_bs = app.add_subcommand("build-system", "forge an axiom system manifest");
  std::string bs_kind, bs_input, bs_beta, bs_out, bs_ded = "tab1";
  std::vector<unsigned> bs_kernels{0};
  cmd_bs->add_option("--kind", bs_kind, "isd or isd-sharp")
      ->required()
      ->check(CLI::IsMember({"isd", "isd-sharp"}));
  cmd_bs->add_option("--input", bs_input, "source axiom list file")->required();
  cmd_bs->add_option("--kernel", bs_kernels, "kernel index (repeatable)");
  cmd_bs->add_option("--beta", bs_beta,
                     "finite transfer list file (isd-sharp; default: one "
                     "simulation sentence per kernel)");
  cmd_bs->add_option("--deduction", bs_ded, "tab0 or tab1")
      ->check(CLI::IsMember({"tab0", "tab1"}));
  cmd_bs->add_option("-o,--output", bs_out, "manifest output path (default stdout)");

  // ---------- pipeline ----------
  auto* cmd_pl = app.add_subcommand(
      "pipeline", "lift a Hilbert certificate into a level-1 chain for the kernel image");
  std::string pl_system, pl_hilbert, pl_goal;
  cmd_pl->add_option("--system", pl_system, "system manifest file")->required();
  cmd_pl->add_option("--hilbert", pl_hilbert, "Hilbert certificate file")->required();
  cmd_pl->add_option("--goal", pl_goal, "the certified sentence (text or file)")->required();

  // ---------- kernel-image ----------
  auto* cmd_ki = app.add_subcommand("kernel-image", "kernel image of a universal sentence");
  std::string ki_input;
  unsigned ki_kernel = 0;
  cmd_ki->add_option("input", ki_input, "sentence text or file")->required();
  cmd_ki->add_option("--kernel", ki_kernel, "kernel index");

  // ---------- growth-report ----------
  auto* cmd_gr = app.add_subcommand("growth-report", "chain length and search cost per scale");
  unsigned gr_nmax = 8;
  std::size_t gr_budget = 2000;
  std::string gr_format = "table";
  cmd_gr->add_option("--nmax", gr_nmax, "largest scale index");
  cmd_gr->add_option("--tab1-budget", gr_budget, "search node budget (0 = skip the search)");
  cmd_gr->add_option("--format", gr_format, "table or csv")
      ->check(CLI::IsMember({"table", "csv"}));

  // ---------- oplus ----------
  auto* cmd_op = app.add_subcommand("oplus", "root-bound the universal prefix of a sentence");
  std::string op_input;
  cmd_op->add_option("input", op_input, "sentence text or file")->required();

  // ---------- reflect ----------
  auto* cmd_rf = app.add_subcommand("reflect", "provability-implies-truth sentence builders");
  std::string rf_mode, rf_system, rf_input;
  cmd_rf->add_option("--mode", rf_mode, "plain | root | diluted")
      ->required()
      ->check(CLI::IsMember({"plain", "root", "diluted"}));
  cmd_rf->add_option("--system", rf_system, "system manifest file")->required();
  cmd_rf->add_option("input", rf_input, "sentence text or file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);  // prints message / help text
    return rc == 0 ? 0 : 2;
  }

  if (cmd_parse->parsed()) {
    std::string text = read_arg(parse_input);
    if (parse_term_mode)
      std::cout << render_term(parse_term(strip(text))) << "\n";
    else
      std::cout << render_formula(parse_formula(strip(text))) << "\n";
    return 0;
  }

  if (cmd_classify->parsed()) {
    FormulaPtr f = parse_formula(strip(read_arg(classify_input)));
    std::cout << to_string(classify(f)) << "\n";
    return 0;
  }

  if (cmd_eval->parsed()) {
    Env env;
    for (const auto& b : eval_env) {
      std::size_t eq = b.find('=');
      if (eq == std::string::npos) throw std::runtime_error("binding must be name=value: " + b);
      env[strip(b.substr(0, eq))] = Nat(strip(b.substr(eq + 1)));
    }
    auto reg = stock_registry({});
    std::string text = strip(read_arg(eval_input));
    if (eval_term_mode) {
      std::cout << nat_str(eval_term(parse_term(text), *reg, env)) << "\n";
      return 0;
    }
    bool v = eval_formula(parse_formula(text), *reg, env);
    std::cout << (v ? "true" : "false") << "\n";
    return v ? 0 : 1;
  }

  if (cmd_ch->parsed()) {
    auto axioms = parse_formula_list(read_file(ch_axioms));
    HilbertProof proof = parse_hilbert_proof(read_file(ch_proof), axioms);
    FormulaPtr goal = parse_formula(strip(read_arg(ch_goal)));
    Verdict v = check_hilbert(axioms, proof, goal);
    std::cout << (v ? "accepted" : "rejected: " + v.reason) << "\n";
    return v ? 0 : 1;
  }

  if (cmd_ct->parsed()) {
    auto axioms = parse_formula_list(read_file(ct_axioms));
    TableauxProof proof = parse_tableaux_proof(read_file(ct_proof));
    FormulaPtr goal = parse_formula(strip(read_arg(ct_goal)));
    auto reg = ct_reg.resolve(axioms);
    Verdict v = check_tableaux(AxiomInterface::from_list(axioms), goal, proof, *reg);
    std::cout << (v ? "accepted" : "rejected: " + v.reason) << "\n";
    return v ? 0 : 1;
  }

  if (cmd_ck->parsed()) {
    auto axioms = parse_formula_list(read_file(ck_axioms));
    TabKProof proof = parse_tabk_proof(read_file(ck_proof));
    FormulaPtr goal = parse_formula(strip(read_arg(ck_goal)));
    auto reg = ck_reg.resolve(axioms);
    Verdict v = check_tabk(AxiomInterface::from_list(axioms), ck_level, goal, proof, *reg);
    std::cout << (v ? "accepted" : "rejected: " + v.reason) << "\n";
    return v ? 0 : 1;
  }

  if (cmd_st->parsed()) {
    auto axioms = parse_formula_list(read_file(st_axioms));
    FormulaPtr goal = parse_formula(strip(read_arg(st_goal)));
    st_opt.eval_closure = !st_no_eval;
    for (const auto& h : st_hints) st_opt.hints.push_back(parse_term(strip(h)));
    auto reg = st_reg.resolve(axioms);
    SearchOutcome out =
        search_tableaux(AxiomInterface::from_list(axioms), goal, st_opt, *reg);
    if (!out.found) {
      std::cerr << "exhausted after " << out.nodes << " nodes\n";
      return 1;
    }
    std::cout << render_tableaux_proof(out.proof);
    return 0;
  }

  if (cmd_g->parsed()) {
    std::string text = strip(read_arg(g_input));
    if (g_dir == "encode") {
      Nat code;
      if (g_kind == "term") code = encode_term(parse_term(text));
      else if (g_kind == "formula") code = encode(parse_formula(text));
      else if (g_kind == "hilbert")
        throw std::runtime_error("encoding a Hilbert proof needs its axiom list; use the API");
      else if (g_kind == "tableaux") code = encode_tableaux(parse_tableaux_proof(text));
      else code = encode_tabk(parse_tabk_proof(text));
      std::cout << nat_str(code) << "\n";
      return 0;
    }
    Nat code(text);
    if (g_kind == "term") std::cout << render_term(decode_term(code)) << "\n";
    else if (g_kind == "formula") std::cout << render_formula(decode(code)) << "\n";
    else if (g_kind == "hilbert") std::cout << render_hilbert_proof(decode_hilbert(code), {});
    else if (g_kind == "tableaux") std::cout << render_tableaux_proof(decode_tableaux(code));
    else std::cout << render_tabk_proof(decode_tabk(code));
    return 0;
  }

  if (cmd_bs->parsed()) {
    auto base = parse_formula_list(read_file(bs_input));
    Deduction d = deduction_from_name(bs_ded);
    std::vector<FormulaPtr> beta;
    if (bs_kind == "isd-sharp") {
      if (!bs_beta.empty()) {
        beta = parse_formula_list(read_file(bs_beta));
      } else {
        ForgeContext probe = make_forge_context(base, bs_kernels);
        beta = beta_L(probe, probe.kernels, {});
      }
    }
    BuiltSystem built = forge_system(bs_kind, base, bs_kernels, beta, d);
    std::string manifest = render_system_manifest(built);
    if (bs_out.empty()) {
      std::cout << manifest;
    } else {
      std::ofstream out(bs_out);
      if (!out) throw std::runtime_error("cannot write " + bs_out);
      out << manifest;
    }
    return 0;
  }

  if (cmd_pl->parsed()) {
    BuiltSystem bs = parse_system_manifest(read_file(pl_system));
    if (bs.ctx.kernels.empty()) throw std::runtime_error("system has no kernels");
    FormulaPtr psi = parse_formula(strip(read_arg(pl_goal)));
    HilbertProof hp = parse_hilbert_proof(read_file(pl_hilbert), bs.ctx.base);
    TabKProof chain = kernelized_pipeline(bs.ctx, hp, psi, bs.ctx.kernels.front());
    FormulaPtr image = kernel_image(bs.ctx.kernels.front(), psi);
    Verdict v = check_tabk(bs.system.interface(), 1, image, chain, *bs.system.registry);
    if (!v) {
      std::cerr << "emitted chain failed to check: " << v.reason << "\n";
      return 1;
    }
    std::cout << render_tabk_proof(chain);
    return 0;
  }

  if (cmd_ki->parsed()) {
    FormulaPtr psi = parse_formula(strip(read_arg(ki_input)));
    std::cout << render_formula(kernel_image(test_kernel(ki_kernel), psi)) << "\n";
    return 0;
  }

  if (cmd_gr->parsed()) {
    GrowthReport report = growth_report(gr_nmax, gr_budget);
    std::cout << (gr_format == "csv" ? render_growth_csv(report)
                                     : render_growth_table(report));
    return 0;
  }

  if (cmd_op->parsed()) {
    FormulaPtr phi = parse_formula(strip(read_arg(op_input)));
    std::cout << render_formula(oplus(phi)) << "\n";
    return 0;
  }

  if (cmd_rf->parsed()) {
    BuiltSystem bs = parse_system_manifest(read_file(rf_system));
    ReflectionContext rc = make_reflection_context(bs.system);
    FormulaPtr phi = parse_formula(strip(read_arg(rf_input)));
    FormulaPtr out;
    if (rf_mode == "plain")
      out = brxefl_sentence(rc, ReflectMode::Plain, phi);
    else if (rf_mode == "root")
      out = root_diluted_sentence(rc, phi);
    else
      out = brxefl_sentence(rc, ReflectMode::Diluted, phi);
    std::cout << render_formula(out) << "\n";
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
