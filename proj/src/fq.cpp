#include "preper/fq.hpp"

#include <algorithm>

namespace preper {

namespace {

unsigned long long mulmod128(unsigned long long a, unsigned long long b,
                             unsigned long long m) {
  return static_cast<unsigned long long>(
      static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

unsigned long long powmod_u64(unsigned long long base, unsigned long long exp,
                              unsigned long long m) {
  unsigned long long r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod128(r, base, m);
    base = mulmod128(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime_u64(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                               19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % d == 0) return n == d;
  }
  unsigned long long d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases decide primality for every 64-bit integer.
  for (unsigned long long a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                               19ull, 23ull, 29ull, 31ull, 37ull}) {
    unsigned long long x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod128(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

// Small dense polynomials over F_p, lowest degree first, coefficients in
// [0, p), no trailing zeros. Only used for modulus selection, so clarity
// beats speed here.
using Pol = std::vector<long>;

void trim(Pol& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Pol& a) { return static_cast<int>(a.size()) - 1; }

// Remainder of a modulo the monic polynomial f.
void reduce_by_monic(Pol& a, const Pol& f, long p) {
  const int df = degree(f);
  while (degree(a) >= df) {
    long lead = a.back();
    int shift = degree(a) - df;
    if (lead != 0) {
      for (int t = 0; t <= df; ++t) {
        long v = a[shift + t] - static_cast<long>(
            static_cast<unsigned long long>(lead) * f[t] % p);
        a[shift + t] = v < 0 ? v + p : v;
      }
    }
    a.pop_back();
    trim(a);
  }
}

Pol mulmod_pol(const Pol& a, const Pol& b, const Pol& f, long p) {
  if (a.empty() || b.empty()) return {};
  Pol out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<long>(
          (out[i + j] + static_cast<unsigned long long>(a[i]) * b[j]) % p);
    }
  }
  reduce_by_monic(out, f, p);
  return out;
}

Pol powmod_pol(Pol base, unsigned long long e, const Pol& f, long p) {
  Pol r{1};
  while (e) {
    if (e & 1) r = mulmod_pol(r, base, f, p);
    base = mulmod_pol(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Pol sub_pol(Pol a, const Pol& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) {
    long v = a[i] - b[i];
    a[i] = v < 0 ? v + p : v;
  }
  trim(a);
  return a;
}

Pol gcd_pol(Pol a, Pol b, long p) {
  while (!b.empty()) {
    // Make b monic, then reduce a by it.
    long linv = static_cast<long>(powmod_u64(
        static_cast<unsigned long long>(b.back()), p - 2, p));
    for (long& c : b)
      c = static_cast<long>(static_cast<unsigned long long>(c) * linv % p);
    reduce_by_monic(a, b, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin irreducibility test for a monic polynomial of degree k over F_p:
// x^(p^k) = x mod f, and gcd(x^(p^(k/l)) - x, f) = 1 for every prime l | k.
bool is_irreducible(const Pol& f, long p, int k) {
  const Pol x{0, 1};
  std::vector<Pol> frob(k + 1);  // frob[j] = x^(p^j) mod f
  frob[0] = x;
  for (int j = 1; j <= k; ++j) frob[j] = powmod_pol(frob[j - 1], p, f, p);
  if (frob[k] != x) return false;
  for (int l : {2, 3, 5}) {
    if (k % l != 0) continue;
    Pol g = gcd_pol(sub_pol(frob[k / l], x, p), f, p);
    if (degree(g) != 0) return false;
  }
  return true;
}

}  // namespace

FqCtx::FqCtx(long p, int k) : p_(p), k_(k) {
  if (k < 1 || k > 6) fail(errc::bad_degree, "extension degree must be 1..6");
  if (p < 3 || p % 2 == 0 || !is_prime_u64(static_cast<unsigned long long>(p)))
    fail(errc::not_prime, "p must be an odd prime");
  // Keep every delayed-reduction accumulator comfortably inside 64 bits.
  if ((k == 1 && p >= (1L << 31)) || (k > 1 && p >= (1L << 26)))
    fail(errc::usage, "p too large for this field context");

  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= static_cast<unsigned long long>(p);

  if (k == 1) {
    mod_ = {0, 1};  // x
  } else {
    for (unsigned long long n = 0;; ++n) {
      Pol f(k + 1, 0);
      unsigned long long rest = n;
      for (int i = 0; i < k; ++i) {
        f[i] = static_cast<long>(rest % static_cast<unsigned long long>(p));
        rest /= static_cast<unsigned long long>(p);
      }
      if (rest != 0)
        fail(errc::internal_inconsistency, "no irreducible modulus found");
      f[k] = 1;
      if (is_irreducible(f, p, k)) {
        mod_.assign(f.begin(), f.end());
        break;
      }
    }
  }

  build_reduction_rows();
  build_frobenius_map();

  if (p_ <= (1L << 16)) {
    inv_table_.assign(p_, 0);
    inv_table_[1] = 1;
    for (long i = 2; i < p_; ++i)
      inv_table_[i] = p_ - (p_ / i) * inv_table_[p_ % i] % p_;
  }
}

void FqCtx::build_reduction_rows() {
  if (k_ == 1) return;
  red_.assign(k_ - 1, {});
  // x^k = -(sum_{j<k} mod[j] x^j).
  for (int j = 0; j < k_; ++j)
    red_[0][j] = static_cast<uint64_t>((p_ - mod_[j]) % p_);
  for (int t = 1; t < k_ - 1; ++t) {
    // x^(k+t) = x * x^(k+t-1), then fold the overflowing x^k term back in.
    uint64_t carry = red_[t - 1][k_ - 1];
    for (int j = k_ - 1; j >= 1; --j) red_[t][j] = red_[t - 1][j - 1];
    red_[t][0] = 0;
    if (carry) {
      for (int j = 0; j < k_; ++j)
        red_[t][j] = (red_[t][j] + carry * red_[0][j]) % p_;
    }
  }
}

void FqCtx::build_frobenius_map() {
  frob_.assign(k_, FqElem{});
  frob_[0] = one();
  if (k_ == 1) return;
  Pol xp = powmod_pol(Pol{0, 1}, p_,
                      Pol(mod_.begin(), mod_.end()), p_);
  FqElem e{};
  for (size_t i = 0; i < xp.size(); ++i)
    e.c[i] = static_cast<uint32_t>(xp[i]);
  frob_[1] = e;
  for (int j = 2; j < k_; ++j) frob_[j] = mul(frob_[j - 1], frob_[1]);
}

FqElem FqCtx::one() const {
  FqElem e{};
  e.c[0] = 1;
  return e;
}

FqElem FqCtx::from_int(long v) const {
  long r = v % p_;
  if (r < 0) r += p_;
  FqElem e{};
  e.c[0] = static_cast<uint32_t>(r);
  return e;
}

FqElem FqCtx::from_index(unsigned long long idx) const {
  FqElem e{};
  for (int i = 0; i < k_; ++i) {
    e.c[i] = static_cast<uint32_t>(idx % static_cast<unsigned long long>(p_));
    idx /= static_cast<unsigned long long>(p_);
  }
  return e;
}

unsigned long long FqCtx::to_index(const FqElem& a) const {
  unsigned long long idx = 0;
  for (int i = k_ - 1; i >= 0; --i)
    idx = idx * static_cast<unsigned long long>(p_) + a.c[i];
  return idx;
}

bool FqCtx::is_zero(const FqElem& a) const {
  for (int i = 0; i < k_; ++i)
    if (a.c[i]) return false;
  return true;
}

FqElem FqCtx::add(const FqElem& a, const FqElem& b) const {
  FqElem r{};
  for (int i = 0; i < k_; ++i) {
    uint32_t v = a.c[i] + b.c[i];
    r.c[i] = v >= static_cast<uint32_t>(p_) ? v - static_cast<uint32_t>(p_) : v;
  }
  return r;
}

FqElem FqCtx::sub(const FqElem& a, const FqElem& b) const {
  FqElem r{};
  for (int i = 0; i < k_; ++i) {
    int64_t v = static_cast<int64_t>(a.c[i]) - b.c[i];
    r.c[i] = static_cast<uint32_t>(v < 0 ? v + p_ : v);
  }
  return r;
}

FqElem FqCtx::neg(const FqElem& a) const { return sub(FqElem{}, a); }

FqElem FqCtx::mul(const FqElem& a, const FqElem& b) const {
  if (k_ == 1) {
    FqElem r{};
    r.c[0] = static_cast<uint32_t>(
        static_cast<uint64_t>(a.c[0]) * b.c[0] % static_cast<uint64_t>(p_));
    return r;
  }
  // Schoolbook with a single deferred reduction: products and reduction-row
  // contributions are accumulated raw in 64 bits (p < 2^26 keeps every lane
  // below 2^63), then reduced once.
  uint64_t acc[11] = {0};
  for (int i = 0; i < k_; ++i) {
    if (!a.c[i]) continue;
    uint64_t ai = a.c[i];
    for (int j = 0; j < k_; ++j) acc[i + j] += ai * b.c[j];
  }
  for (int i = 2 * k_ - 2; i >= k_; --i) {
    uint64_t v = acc[i] % static_cast<uint64_t>(p_);
    if (!v) continue;
    const auto& row = red_[i - k_];
    for (int j = 0; j < k_; ++j) acc[j] += v * row[j];
  }
  FqElem r{};
  for (int j = 0; j < k_; ++j)
    r.c[j] = static_cast<uint32_t>(acc[j] % static_cast<uint64_t>(p_));
  return r;
}

FqElem FqCtx::scalar_mul(long s, const FqElem& a) const {
  long sr = s % p_;
  if (sr < 0) sr += p_;
  FqElem r{};
  for (int i = 0; i < k_; ++i)
    r.c[i] = static_cast<uint32_t>(
        static_cast<uint64_t>(sr) * a.c[i] % static_cast<uint64_t>(p_));
  return r;
}

long FqCtx::inv_scalar(long s) const {
  long sr = s % p_;
  if (sr < 0) sr += p_;
  if (sr == 0) fail(errc::usage, "division by zero in F_p");
  if (!inv_table_.empty()) return inv_table_[sr];
  return static_cast<long>(powmod_u64(static_cast<unsigned long long>(sr),
                                      p_ - 2, p_));
}

FqElem FqCtx::inv(const FqElem& a) const {
  if (is_zero(a)) fail(errc::usage, "division by zero in F_q");
  if (k_ == 1) {
    FqElem r{};
    r.c[0] = static_cast<uint32_t>(inv_scalar(static_cast<long>(a.c[0])));
    return r;
  }
  // Extended Euclid in F_p[x] against the (irreducible) modulus.
  Pol r0(mod_.begin(), mod_.end());
  Pol r1;
  for (int i = k_ - 1; i >= 0; --i)
    if (a.c[i] || !r1.empty()) r1.insert(r1.begin(), static_cast<long>(a.c[i]));
  trim(r1);
  Pol t0{}, t1{1};
  while (degree(r1) > 0) {
    long linv = inv_scalar(r1.back());
    Pol q(degree(r0) - degree(r1) + 1, 0);
    Pol rem = r0;
    while (degree(rem) >= degree(r1)) {
      int shift = degree(rem) - degree(r1);
      long f = static_cast<long>(
          static_cast<unsigned long long>(rem.back()) * linv % p_);
      q[shift] = f;
      for (int t = 0; t <= degree(r1); ++t) {
        long v = rem[shift + t] - static_cast<long>(
            static_cast<unsigned long long>(f) * r1[t] % p_);
        rem[shift + t] = v < 0 ? v + p_ : v;
      }
      trim(rem);
    }
    // t2 = t0 - q * t1 (mod p), without modular reduction by the modulus:
    // degrees stay below k throughout.
    Pol qt1(q.size() + t1.size(), 0);
    if (!t1.empty()) {
      for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (size_t j = 0; j < t1.size(); ++j)
          qt1[i + j] = static_cast<long>(
              (qt1[i + j] + static_cast<unsigned long long>(q[i]) * t1[j]) % p_);
      }
    }
    trim(qt1);
    Pol t2 = sub_pol(t0, qt1, p_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r1.empty()) {
    // gcd landed at r0; with an irreducible modulus this means a was a unit
    // multiple of the modulus, impossible for a nonzero reduced element.
    fail(errc::internal_inconsistency, "non-invertible element in a field");
  }
  // r1 is a nonzero constant: scale t1 by its inverse.
  long linv = inv_scalar(r1[0]);
  FqElem out{};
  for (size_t i = 0; i < t1.size(); ++i)
    out.c[i] = static_cast<uint32_t>(
        static_cast<unsigned long long>(t1[i]) * linv % p_);
  return out;
}

FqElem FqCtx::pow(const FqElem& a, unsigned long long e) const {
  FqElem r = one();
  FqElem base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FqElem FqCtx::frobenius(const FqElem& a) const {
  // a = sum a_j x^j with a_j in F_p, so a^p = sum a_j (x^j)^p.
  FqElem r{};
  for (int j = 0; j < k_; ++j) {
    if (!a.c[j]) continue;
    uint64_t aj = a.c[j];
    for (int i = 0; i < k_; ++i) {
      r.c[i] = static_cast<uint32_t>(
          (r.c[i] + aj * frob_[j].c[i]) % static_cast<uint64_t>(p_));
    }
  }
  return r;
}

}  // namespace preper
