#pragma once

#include <stdexcept>
#include <utility>

#include "lstar/formula.hpp"
#include "lstar/hilbert.hpp"
#include "lstar/model.hpp"
#include "lstar/nat.hpp"
#include "lstar/tabk.hpp"

namespace lstar {

// ===== pairing =====

/// Cantor pairing (a+b)(a+b+1)/2 + b. Bijective; monotone in each argument;
/// pairing(a,b) >= b, which witness packing relies on.
Nat pairing(const Nat& a, const Nat& b);
std::pair<Nat, Nat> unpair(const Nat& n);

// ===== object codes =====

/// Raised by decoders; `bit_pos` is the offset into the code's bit stream at
/// which decoding failed.
struct DecodeError : std::runtime_error {
  std::size_t bit_pos;
  DecodeError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (bit " + std::to_string(pos) + ")"), bit_pos(pos) {}
};

/// Codes are self-delimiting tagged bit streams packaged as naturals: the
/// value is 2^len + bits, so the leading marker bit pins the stream length.
/// Every syntactic object gets a distinct code (injective across all five
/// object families, since the leading tag separates them); code size is linear
/// in object size. 0 is never a valid code.
Nat encode_term(const TermPtr& t);
Nat encode(const FormulaPtr& f);
Nat encode_hilbert(const HilbertProof& p);
Nat encode_tableaux(const TableauxProof& p);
Nat encode_tabk(const TabKProof& p);

TermPtr decode_term(const Nat& code);
FormulaPtr decode(const Nat& code);
HilbertProof decode_hilbert(const Nat& code);
TableauxProof decode_tableaux(const Nat& code);
TabKProof decode_tabk(const Nat& code);

/// No-throw variants; return false and leave `out` untouched on failure.
bool try_decode(const Nat& code, FormulaPtr& out);
bool try_decode_tabk(const Nat& code, TabKProof& out);

// ===== substitution on codes =====

/// decode(code) must be a formula whose only free variable is v0; returns
/// encode of that formula with numeral(n) substituted for v0. Throws
/// DecodeError on an invalid code and std::invalid_argument when the free
/// variables are not exactly {v0}.
Nat sub_code(const Nat& code, const Nat& n);

/// Registers the binary coded function symbol subfn with semantics sub_code,
/// totalized: invalid arguments yield 0.
void register_subfn(Registry& reg);

// ===== diagonalization =====

/// For theta with exactly v0 free: with d = encode(theta[v0 := subfn(v0,v0)]),
/// returns S = theta[v0 := subfn(numeral(d), numeral(d))]. The returned
/// sentence satisfies eval_term(subfn(numeral(d), numeral(d))) = encode(S)
/// exactly.
FormulaPtr diagonalize(const FormulaPtr& theta);

}  // namespace lstar
