#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lstar/codec.hpp"
#include "lstar/hilbert.hpp"
#include "lstar/model.hpp"
#include "lstar/tabk.hpp"

namespace lstar {

// ===== systems =====

enum class Deduction { Tab0, Tab1 };

const char* deduction_name(Deduction d);
Deduction deduction_from_name(const std::string& s);

/// One component of an axiom system. Finite groups carry their members;
/// schematic groups carry a decidable membership test plus an enumerator
/// returning the first n members in a fixed order. Everything an enumerator
/// produces passes the membership test.
struct AxiomGroup {
  enum class Tag { Group0, Group1, Group2, Group3, Other };

  Tag tag;
  std::vector<FormulaPtr> members;
  std::function<bool(const FormulaPtr&)> membership;
  std::function<std::vector<FormulaPtr>(std::size_t)> enumerate;

  bool schematic() const { return static_cast<bool>(membership); }

  static AxiomGroup finite(Tag tag, std::vector<FormulaPtr> members);
};

/// A fully assembled axiom system: its groups, the frozen registry binding
/// every coded symbol its sentences mention, and the code of its self
/// referential member when it has one.
struct AxiomSystem {
  std::string name;
  Deduction deduction = Deduction::Tab1;
  std::vector<AxiomGroup> groups;
  std::shared_ptr<Registry> registry;
  std::optional<Nat> self_code;

  bool contains(const FormulaPtr& f) const;
  /// Members of the finite groups, in group order.
  std::vector<FormulaPtr> finite_members() const;
  /// Membership plus enumeration across all groups, as the proof engines
  /// consume it. Finite groups enumerate first, schematic ones fill the rest.
  AxiomInterface interface() const;
};

// ===== base groups =====

/// Growth-symbol laws: 0 and 1 fix themselves, add satisfies its two
/// defining recurrences, and double is addition with itself.
std::vector<FormulaPtr> group0_axioms();

/// A concrete finite stock of true universal sentences: defining recurrences
/// for the six non-growth symbols plus ordering laws (reflexivity,
/// totality, transitivity, minimality of 0). Ground truths are normally
/// discharged by evaluation closure; this list exists for proofs that must
/// cite explicit axioms.
std::vector<FormulaPtr> group1_axioms();

// ===== coded provability =====

/// Registers `name` as a binary predicate: name(t, q) holds iff t decodes to
/// a sentence, q decodes to a Hilbert proof, and that proof derives the
/// sentence from `base`. Malformed codes make it false.
void register_hilbprf(Registry& reg, const std::string& name,
                      std::vector<FormulaPtr> base);

/// Registers `name` as a unary predicate: name(t) holds iff t decodes to a
/// sentence classifying Pi1*.
void register_check(Registry& reg, const std::string& name);

/// The transfer sentence for one provable universal statement: with
/// c = encode(phi) and phi = A v1...A vm. M,
///   A p A v1 ... A vm (hilbprf(numeral(c), p) -> M).
/// The quantifier over the proof code is pulled to the front so the result
/// stays in prenex shape and classifies Pi1*. Throws std::invalid_argument
/// unless phi classifies Pi1*.
FormulaPtr group2_instance(const FormulaPtr& phi, const std::string& hilbprf_name);

/// Schematic group of all group2_instance images: membership recovers the
/// embedded code, decodes it and rebuilds the instance; the enumerator
/// filters the naturals through the decoder.
AxiomGroup group2_schema(const std::string& hilbprf_name);

// ===== kernels =====

/// A kernelized test predicate. `semantics` decides Test_i(t, x); `defining`
/// is an optional quantifier-bounded formula with free variables t, x whose
/// truth agrees with the semantics (null when not provided).
struct KernelDescriptor {
  unsigned index = 0;
  std::string atom_name;
  std::function<bool(const Nat&, const Nat&)> semantics;
  FormulaPtr defining;
};

/// The base kernel. Pair(t, g) holds when t codes a Pi1* sentence Psi and
/// g = encode of its negated existential form; Probe(g, x) holds when g codes
/// E w1..E wm. M and x unpairs iteratively into (a1, .., am, padding) with M
/// true at that tuple; Test_0(t, x) = ~E g <= x (Pair(t, g) & Probe(g, x)).
KernelDescriptor test0_kernel();

/// Kernels beyond the base one compose Test_0 with i rounds of a code
/// permutation on the scan argument (each length-(k+1) triangular block
/// [k(k+1)/2, k(k+1)/2+k] rotates by one), so all kernels are distinct and
/// each preserves the agreement property.
KernelDescriptor test_kernel(unsigned i);

/// The block-rotation permutation iterated i times (forward) or its inverse.
Nat kernel_perm(unsigned i, const Nat& x, bool inverse);

void register_kernel(Registry& reg, const KernelDescriptor& kern);

/// A x test_i(numeral(encode(psi)), x). Throws std::invalid_argument unless
/// psi classifies Pi1*.
FormulaPtr kernel_image(const KernelDescriptor& kern, const FormulaPtr& psi);

/// True when kern accepts (encode(psi), x) for every x <= cap.
bool kernel_bounded_true(const KernelDescriptor& kern, const FormulaPtr& psi,
                         const Nat& cap, const Registry& reg);

/// For a false Pi1* sentence, searches counterexample tuples up to
/// `witness_cap` and packs the first one found into a scan value x with
/// kern.semantics(encode(psi), x) = false. Empty optional when no
/// counterexample exists below the cap.
std::optional<Nat> kernel_falsifier(const KernelDescriptor& kern, const FormulaPtr& psi,
                                    const Nat& witness_cap, const Registry& reg);

// ===== construction context =====

/// Mutable bundle from which systems are assembled: an unfrozen registry
/// seeded with the code-substitution function, hilbprf/check bound to the
/// source system's axioms, and the requested kernels. build_isd /
/// build_isd_sharp freeze the registry.
struct ForgeContext {
  std::shared_ptr<Registry> reg;
  std::vector<FormulaPtr> base;
  std::vector<KernelDescriptor> kernels;

  static constexpr const char* kHilbPrf = "hilbprf";
  static constexpr const char* kCheck = "check";
  static constexpr const char* kPair = "pair";
  static constexpr const char* kPrf = "prf";
};

ForgeContext make_forge_context(std::vector<FormulaPtr> base,
                                const std::vector<unsigned>& kernel_indices);

/// A t A q A x ((hilbprf(t,q) & check(t)) -> test_i(t,x)): every provable
/// universal statement of the source system holds in kernel image form.
FormulaPtr globsim_sentence(const ForgeContext& ctx, const KernelDescriptor& kern);

/// {globsim_sentence(ctx, k) : k in kerns} followed by `extras`. Throws
/// std::invalid_argument unless every extra classifies Pi1*.
std::vector<FormulaPtr> beta_L(const ForgeContext& ctx,
                               const std::vector<KernelDescriptor>& kerns,
                               const std::vector<FormulaPtr>& extras);

/// Registers pair/prf and produces the self-referential consistency sentence
/// over `rest` (the system's other groups): prf(x, p, s) holds iff p codes a
/// proof by `d` of the sentence coded x from rest plus the sentence coded s;
/// the diagonalized result feeds its own code into the s slot. Shape:
///   A x A y A p A q ~(pair(x,y) & prf(x,p,self) & prf(y,q,self)).
FormulaPtr group3_sentence(Registry& reg, const AxiomInterface& rest, Deduction d);

/// Diagonalized unprovability-of-0=1 sentence over alpha plus itself:
///   A p ~prf_name(numeral(encode(0=1)), p, self).
FormulaPtr selfref_sentence(Registry& reg, const std::string& prf_name,
                            const AxiomInterface& alpha, Deduction d);

/// Groups 0-3 with the schematic transfer group over ctx.base.
AxiomSystem build_isd(ForgeContext ctx, Deduction d);

/// The finite variant: the transfer group is replaced by the given finite
/// list of Pi1* sentences and the self-referential member is rebuilt over it.
AxiomSystem build_isd_sharp(ForgeContext ctx, std::vector<FormulaPtr> beta, Deduction d);

// ===== theorem transfer pipeline =====

/// Certifies hproof as a Hilbert proof of psi from ctx.base, then emits a
/// one-step level-1 chain proving kernel_image(kern, psi) from the system
/// built over beta containing globsim_sentence(ctx, kern). The chain closes
/// by evaluating the proof-checking atoms on their numeral codes. Throws
/// std::invalid_argument when the certificate is rejected.
TabKProof kernelized_pipeline(const ForgeContext& ctx, const HilbertProof& hproof,
                              const FormulaPtr& psi, const KernelDescriptor& kern);

// ===== bounded consistency scan =====

/// Scans every proof code <= bound; counts the codes that decode to a proof
/// object accepted by the system's deduction method, and records any pair of
/// accepted theorems where one codes the negated existential form of the
/// other. Explicitly a sanity probe, not a consistency argument: proof codes
/// below any desk-scale bound are almost all malformed.
struct SmokeResult {
  std::size_t codes_scanned = 0;
  std::size_t proofs_found = 0;
  std::vector<FormulaPtr> theorems;
  bool contradiction = false;
};

SmokeResult consistency_smoke(const AxiomSystem& sys, const Nat& bound);

// ===== manifests =====

/// A system together with everything needed to reproduce it: the source
/// axioms, kernel indices and finite transfer list it was forged from. The
/// context's registry is the system's (frozen).
struct BuiltSystem {
  std::string kind;  // "isd" or "isd-sharp"
  AxiomSystem system;
  ForgeContext ctx;
  std::vector<unsigned> kernel_indices;
  std::vector<FormulaPtr> beta;  // empty for the schematic build
};

/// One-call construction: kind selects build_isd ("isd", beta ignored) or
/// build_isd_sharp ("isd-sharp").
BuiltSystem forge_system(const std::string& kind, std::vector<FormulaPtr> base,
                         const std::vector<unsigned>& kernel_indices,
                         std::vector<FormulaPtr> beta, Deduction d);

/// JSON description of a built system: kind, deduction, kernel indices, the
/// source axioms, the finite transfer list, and the self code in decimal.
/// parse_system_manifest re-forges the system (construction is
/// deterministic) and rejects manifests whose recorded self code disagrees.
std::string render_system_manifest(const BuiltSystem& bs);
BuiltSystem parse_system_manifest(const std::string& json_text);

}  // namespace lstar
