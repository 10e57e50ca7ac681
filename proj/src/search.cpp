#include "preper/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>

#include "preper/curves.hpp"
#include "preper/error.hpp"
#include "preper/fq.hpp"

namespace preper {

std::vector<std::pair<long, long>> farey_sequence(long H) {
  if (H < 1) fail(errc::usage, "Farey order must be positive");
  std::vector<std::pair<long, long>> out;
  long h1 = 0, k1 = 1, h2 = 1, k2 = H;
  out.emplace_back(h1, k1);
  if (H == 1) {
    out.emplace_back(1, 1);
    return out;
  }
  out.emplace_back(h2, k2);
  while (h2 != 1 || k2 != 1) {
    long m = (H + k1) / k2;
    long h3 = m * h2 - h1;
    long k3 = m * k2 - k1;
    out.emplace_back(h3, k3);
    h1 = h2;
    k1 = k2;
    h2 = h3;
    k2 = k3;
  }
  return out;
}

std::vector<P1Point> p1_points_up_to_height(long H) {
  std::vector<P1Point> out;
  for (const auto& [h, k] : farey_sequence(H)) {
    if (h == 0) {
      out.push_back(P1Point(BigInt(0), BigInt(1)));
      out.push_back(P1Point::infinity());
      continue;
    }
    out.push_back(P1Point(BigInt(h), BigInt(k)));
    out.push_back(P1Point(BigInt(-h), BigInt(k)));
    if (h != k) {  // the reciprocals, new unless h/k = 1
      out.push_back(P1Point(BigInt(k), BigInt(h)));
      out.push_back(P1Point(BigInt(-k), BigInt(h)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Root finding for one fiber runs over F_P for a prime P > 2 H^2, so that a
// residue determines at most one fraction of height <= H and distinct
// rational roots stay distinct mod P. Candidate fractions are reconstructed
// from residues and then checked exactly, so nothing unverified is emitted.

unsigned long long next_prime_above(unsigned long long n) {
  unsigned long long m = n + 1;
  if (m < 3) m = 3;
  if (m % 2 == 0) ++m;
  while (!is_prime_u64(m)) m += 2;
  return m;
}

unsigned long long addm(unsigned long long a, unsigned long long b,
                        unsigned long long P) {
  a += b;
  return a >= P ? a - P : a;
}

unsigned long long subm(unsigned long long a, unsigned long long b,
                        unsigned long long P) {
  return a >= b ? a - b : a + P - b;
}

// Square root mod an odd prime, for n a quadratic residue (Tonelli-Shanks).
unsigned long long sqrt_mod(unsigned long long n, unsigned long long P) {
  if (n == 0) return 0;
  if (P % 4 == 3) return powmod_u64(n, (P + 1) / 4, P);
  unsigned long long Q = P - 1;
  unsigned s = 0;
  while (Q % 2 == 0) {
    Q /= 2;
    ++s;
  }
  unsigned long long z = 2;
  while (powmod_u64(z, (P - 1) / 2, P) != P - 1) ++z;
  unsigned long long M = s;
  unsigned long long c = powmod_u64(z, Q, P);
  unsigned long long t = powmod_u64(n, Q, P);
  unsigned long long R = powmod_u64(n, (Q + 1) / 2, P);
  while (t != 1) {
    unsigned long long t2 = t;
    unsigned long long i = 0;
    while (t2 != 1) {
      t2 = mulmod_u64(t2, t2, P);
      ++i;
    }
    unsigned long long b = c;
    for (unsigned long long j = 0; j + i + 1 < M; ++j) b = mulmod_u64(b, b, P);
    M = i;
    c = mulmod_u64(b, b, P);
    t = mulmod_u64(t, c, P);
    R = mulmod_u64(R, b, P);
  }
  return R;
}

// Dense polynomials over F_P, lowest degree first, degree <= 3 throughout.
using ModPoly = std::vector<unsigned long long>;

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

ModPoly monic(const ModPoly& f, unsigned long long P) {
  ModPoly g = f;
  unsigned long long lc = g.back();
  if (lc != 1) {
    unsigned long long inv = powmod_u64(lc, P - 2, P);
    for (auto& c : g) c = mulmod_u64(c, inv, P);
  }
  return g;
}

// Remainder of f by a monic divisor.
ModPoly poly_rem(ModPoly f, const ModPoly& m, unsigned long long P) {
  int dm = pdeg(m);
  while (pdeg(f) >= dm) {
    unsigned long long c = f.back();
    int shift = pdeg(f) - dm;
    if (c != 0)
      for (int i = 0; i <= dm; ++i)
        f[shift + i] = subm(f[shift + i], mulmod_u64(c, m[i], P), P);
    f.pop_back();
    trim(f);
  }
  return f;
}

// Exact quotient of f by a monic divisor known to divide it.
ModPoly poly_quot(ModPoly f, const ModPoly& m, unsigned long long P) {
  int dm = pdeg(m);
  int dq = pdeg(f) - dm;
  ModPoly q(dq + 1, 0);
  for (int k = dq; k >= 0; --k) {
    unsigned long long c = f[k + dm];
    q[k] = c;
    if (c != 0)
      for (int i = 0; i <= dm; ++i)
        f[k + i] = subm(f[k + i], mulmod_u64(c, m[i], P), P);
  }
  return q;
}

ModPoly poly_gcd(ModPoly a, ModPoly b, unsigned long long P) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = poly_rem(a, monic(b, P), P);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = monic(a, P);
  return a;
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m,
                    unsigned long long P) {
  ModPoly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = addm(prod[i + j], mulmod_u64(a[i], b[j], P), P);
  }
  trim(prod);
  return poly_rem(std::move(prod), m, P);
}

// base^e mod m (m monic, degree >= 1).
ModPoly poly_powmod(const ModPoly& base, unsigned long long e,
                    const ModPoly& m, unsigned long long P) {
  ModPoly result{1};
  ModPoly b = poly_rem(base, m, P);
  while (e > 0) {
    if (e & 1) {
      if (b.empty()) return {};
      result = result.empty() ? result : poly_mulmod(result, b, m, P);
    }
    e >>= 1;
    if (e && !b.empty()) b = poly_mulmod(b, b, m, P);
  }
  return result;
}

// All roots in F_P of a polynomial of degree <= 3 (not identically zero).
void roots_mod_p(const ModPoly& f0, unsigned long long P, std::mt19937_64& rng,
                 std::vector<unsigned long long>& out) {
  ModPoly f = f0;
  trim(f);
  int d = pdeg(f);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(mulmod_u64(subm(0, f[0], P), powmod_u64(f[1], P - 2, P), P));
    return;
  }
  if (d == 2) {
    unsigned long long disc = subm(mulmod_u64(f[1], f[1], P),
                                   mulmod_u64(4 % P, mulmod_u64(f[2], f[0], P), P), P);
    unsigned long long inv2a =
        powmod_u64(mulmod_u64(2, f[2], P), P - 2, P);
    if (disc == 0) {
      out.push_back(mulmod_u64(subm(0, f[1], P), inv2a, P));
      return;
    }
    if (powmod_u64(disc, (P - 1) / 2, P) != 1) return;
    unsigned long long r = sqrt_mod(disc, P);
    out.push_back(mulmod_u64(subm(r, f[1], P), inv2a, P));
    out.push_back(mulmod_u64(subm(subm(0, r, P), f[1], P), inv2a, P));
    return;
  }
  // Cubic: strip to the product of distinct linear factors, then split it.
  ModPoly m = monic(f, P);
  ModPoly frob = poly_powmod({0, 1}, P, m, P);  // u^P mod m
  if (frob.size() < 2) frob.resize(2, 0);
  frob[1] = subm(frob[1], 1, P);                // u^P - u
  ModPoly g = poly_gcd(m, frob, P);
  if (pdeg(g) <= 2) {
    roots_mod_p(g, P, rng, out);
    return;
  }
  // g = m splits completely; peel one factor off with a random quadratic
  // character probe.
  for (;;) {
    unsigned long long delta = rng() % P;
    ModPoly probe = poly_powmod({delta, 1}, (P - 1) / 2, g, P);
    if (probe.empty())
      probe = {P - 1};  // u = -delta is itself a root; probe - 1 = -1 works
    else
      probe[0] = subm(probe[0], 1, P);
    trim(probe);
    ModPoly h = poly_gcd(g, probe, P);
    int dh = pdeg(h);
    if (dh <= 0 || dh >= pdeg(g)) continue;
    roots_mod_p(h, P, rng, out);
    roots_mod_p(poly_quot(g, h, P), P, rng, out);
    return;
  }
}

// floor(sqrt(n)) for n >= 0.
__int128 isqrt128(__int128 n) {
  if (n < 0) fail(errc::internal_inconsistency, "isqrt of negative");
  __int128 x = static_cast<__int128>(
      sqrtl(static_cast<long double>(static_cast<unsigned __int128>(n))));
  while (x > 0 && x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

void push_if_short(std::vector<P1Point>& out, const BigRat& v, long H) {
  P1Point p(v);
  if (p.height() <= H) out.push_back(p);
}

// Exact value of sum_j c[j] n^j d^(deg - j); coefficients and |n|, d small
// enough that every term fits comfortably in 128 bits.
__int128 eval_binary(const std::vector<long long>& c, long long n,
                     long long d) {
  int deg = static_cast<int>(c.size()) - 1;
  __int128 acc = 0;
  __int128 npow = 1;
  std::vector<__int128> dpow(deg + 1, 1);
  for (int j = 1; j <= deg; ++j) dpow[j] = dpow[j - 1] * d;
  for (int j = 0; j <= deg; ++j) {
    acc += npow * dpow[deg - j] * c[j];
    npow *= n;
  }
  return acc;
}

// All rational roots of height <= H of a cubic with nonzero constant and
// leading terms, via roots mod P and rational reconstruction. Every
// candidate is verified exactly before being emitted.
void cubic_roots(const std::vector<long long>& core, long H,
                 unsigned long long P0, std::uint64_t seed,
                 std::vector<P1Point>& out) {
  unsigned long long P = P0;
  for (;;) {
    ModPoly f(4);
    bool all_zero = true;
    for (int j = 0; j < 4; ++j) {
      long long r = core[j] % static_cast<long long>(P);
      if (r < 0) r += P;
      f[j] = static_cast<unsigned long long>(r);
      if (f[j] != 0) all_zero = false;
    }
    if (all_zero) {  // the reduction degenerated; move to the next prime
      P = next_prime_above(P);
      continue;
    }
    std::mt19937_64 rng(seed ^ (P * 0x9e3779b97f4a7c15ULL));
    std::vector<unsigned long long> residues;
    roots_mod_p(f, P, rng, residues);
    for (unsigned long long r : residues) {
      // Half extended Euclid on (P, r): the first remainder <= H gives the
      // unique candidate fraction, since P > 2 H^2.
      long long r0 = static_cast<long long>(P), r1 = static_cast<long long>(r);
      long long t0 = 0, t1 = 1;
      while (r1 > H) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        long long t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
      }
      long long num = r1, den = t1;
      if (den == 0) continue;
      if (den < 0) {
        num = -num;
        den = -den;
      }
      if (den > H || std::abs(num) > H) continue;
      long long g = std::gcd(std::abs(num), den);
      num /= g;
      den /= g;
      if (eval_binary(core, num, den) == 0)
        out.push_back(P1Point(BigInt(static_cast<long>(num)),
                              BigInt(static_cast<long>(den))));
    }
    return;
  }
}

// All rational roots of height <= H, projectively, of the binary form
// sum_j c[j] y1^j y0^(d2 - j) cut out by one fiber.
void fiber_roots(const std::vector<long long>& c, long H,
                 unsigned long long P0, std::uint64_t seed,
                 std::vector<P1Point>& out) {
  int d = static_cast<int>(c.size()) - 1;
  int lo = 0, hi = d;
  while (lo <= d && c[lo] == 0) ++lo;
  if (lo > d)
    fail(errc::internal_inconsistency,
         "fiber vanishes identically; the curve contains a horizontal line");
  while (c[hi] == 0) --hi;
  if (lo > 0) out.push_back(P1Point(BigInt(0), BigInt(1)));
  if (hi < d) out.push_back(P1Point::infinity());

  int m = hi - lo;
  if (m == 0) return;
  std::vector<long long> core(c.begin() + lo, c.begin() + hi + 1);
  if (m == 1) {
    push_if_short(
        out, BigRat(static_cast<long>(-core[0]), static_cast<long>(core[1])),
        H);
    return;
  }
  if (m == 2) {
    __int128 disc = static_cast<__int128>(core[1]) * core[1] -
                    static_cast<__int128>(4) * core[2] * core[0];
    if (disc < 0) return;
    __int128 s = isqrt128(disc);
    if (s * s != disc) return;
    long sl = static_cast<long>(s);
    push_if_short(out,
                  BigRat(static_cast<long>(-core[1]) + sl,
                         2 * static_cast<long>(core[2])),
                  H);
    if (sl != 0)
      push_if_short(out,
                    BigRat(static_cast<long>(-core[1]) - sl,
                           2 * static_cast<long>(core[2])),
                    H);
    return;
  }
  cubic_roots(core, H, P0, seed, out);
}

}  // namespace

std::vector<P1xP1Point> search(const CurveRecord& c, long height_bound) {
  if (height_bound < 1) fail(errc::usage, "height bound must be positive");
  const long H = height_bound;
  const BiForm& f = c.form;
  const int d1 = f.d1(), d2 = f.d2();

  // Fiber coefficients stay within long long: |coeff| <= 4, |a|, b <= H,
  // so each g_j is at most ~(d1 + 1) * 4 * H^d1.
  if (H > 100000) fail(errc::budget_exceeded, "height bound too large");
  std::vector<long long> grid(static_cast<size_t>(d1 + 1) * (d2 + 1));
  for (int i = 0; i <= d1; ++i)
    for (int j = 0; j <= d2; ++j)
      grid[static_cast<size_t>(i) * (d2 + 1) + j] = f.coeff(i, j).get_si();

  const unsigned long long P0 =
      next_prime_above(2ULL * static_cast<unsigned long long>(H) * H);

  std::vector<P1xP1Point> out;
  std::vector<long long> fiber(d2 + 1);
  std::vector<long long> apow(d1 + 1), bpow(d1 + 1);
  std::vector<P1Point> ys;
  for (const P1Point& x : p1_points_up_to_height(H)) {
    long long a = x.a.get_si(), b = x.b.get_si();
    apow[0] = bpow[0] = 1;
    for (int i = 1; i <= d1; ++i) {
      apow[i] = apow[i - 1] * a;
      bpow[i] = bpow[i - 1] * b;
    }
    for (int j = 0; j <= d2; ++j) {
      long long acc = 0;
      for (int i = 0; i <= d1; ++i)
        acc += grid[static_cast<size_t>(i) * (d2 + 1) + j] * apow[i] *
               bpow[d1 - i];
      fiber[j] = acc;
    }
    std::uint64_t seed = (static_cast<std::uint64_t>(a) * 0x9e3779b97f4a7c15ULL) ^
                         (static_cast<std::uint64_t>(b) + 0xbf58476d1ce4e5b9ULL);
    ys.clear();
    fiber_roots(fiber, H, P0, seed, ys);
    for (const P1Point& y : ys) out.push_back(P1xP1Point{x, y});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace preper
