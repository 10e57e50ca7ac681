#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "preper/error.hpp"

namespace preper {

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(unsigned long long n);

inline unsigned long long mulmod_u64(unsigned long long a, unsigned long long b,
                                     unsigned long long m) {
  return static_cast<unsigned long long>(
      static_cast<unsigned __int128>(a) * b % m);
}

unsigned long long powmod_u64(unsigned long long base, unsigned long long exp,
                              unsigned long long m);

// An element of F_{p^k} in the power basis w.r.t. the context's modulus.
// Coordinates live in [0, p); entries at positions >= k are zero.
struct FqElem {
  std::array<uint32_t, 6> c{};

  bool operator==(const FqElem& o) const { return c == o.c; }
  bool operator!=(const FqElem& o) const { return !(*this == o); }
};

// Arithmetic context for F_{p^k}, p an odd prime, 1 <= k <= 6. The modulus
// is the first monic irreducible of degree k when coefficient vectors
// (c_{k-1}, ..., c_0) are enumerated lexicographically, i.e. by the counter
// n = sum_i c_i p^i. Construction is deterministic: the same (p, k) always
// yields bit-identical moduli.
class FqCtx {
 public:
  FqCtx(long p, int k);

  long p() const { return p_; }
  int k() const { return k_; }
  unsigned long long q() const { return q_; }
  // Length k+1, lowest degree first, leading coefficient 1.
  const std::vector<long>& modulus() const { return mod_; }

  FqElem zero() const { return FqElem{}; }
  FqElem one() const;
  FqElem from_int(long v) const;
  // The element with base-p digit expansion idx; idx < q enumerates F_q.
  FqElem from_index(unsigned long long idx) const;
  unsigned long long to_index(const FqElem& a) const;

  bool is_zero(const FqElem& a) const;
  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem scalar_mul(long s, const FqElem& a) const;
  FqElem inv(const FqElem& a) const;  // throws usage on zero
  FqElem pow(const FqElem& a, unsigned long long e) const;
  FqElem frobenius(const FqElem& a) const;  // a^p, via the precomputed basis map

  long inv_scalar(long s) const;  // inverse mod p, s != 0 mod p

 private:
  void build_reduction_rows();
  void build_frobenius_map();

  long p_;
  int k_;
  unsigned long long q_;
  std::vector<long> mod_;
  // red_[i - k][j]: coefficient of x^j in x^i mod modulus, for k <= i <= 2k-2.
  std::vector<std::array<uint64_t, 6>> red_;
  // frob_[j]: (x^j)^p reduced, for 0 <= j < k.
  std::vector<FqElem> frob_;
  std::vector<long> inv_table_;  // scalar inverses, populated for small p
};

}  // namespace preper
