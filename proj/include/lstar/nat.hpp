#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace lstar {

/// Unbounded natural number. All arithmetic in the workbench is over naturals;
/// operations that could go negative are truncated explicitly at their call
/// sites, never here.
using Nat = mpz_class;

/// Number of bits in the binary expansion of n; bitlen(0) == 0.
inline std::size_t bitlen(const Nat& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

/// 2^e.
inline Nat pow2(unsigned long e) {
  Nat r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

/// True when n is a power of two (n >= 1 and exactly one set bit).
inline bool is_pow2(const Nat& n) {
  if (n <= 0) return false;
  return mpz_popcount(n.get_mpz_t()) == 1;
}

/// floor(log2 n) for n >= 1.
inline Nat floor_log2(const Nat& n) {
  return Nat(static_cast<unsigned long>(bitlen(n) - 1));
}

inline std::string nat_str(const Nat& n) { return n.get_str(10); }

}  // namespace lstar
