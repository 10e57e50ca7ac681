#include "preper/counting.hpp"

#include <chrono>

#include "preper/curves.hpp"
#include "preper/error.hpp"

namespace preper {

namespace {

// Dense univariate polynomial of degree <= 4 over F_q; deg = -1 for zero.
struct SmallPoly {
  std::array<FqElem, 5> c{};
  int deg = -1;
};

void fix_degree(SmallPoly& a, const FqCtx& ctx, int upper) {
  a.deg = -1;
  for (int i = upper; i >= 0; --i) {
    if (!ctx.is_zero(a.c[i])) {
      a.deg = i;
      break;
    }
  }
}

// r = a * b mod m, for a, b of degree < deg m and monic m of degree <= 3.
SmallPoly mulmod(const SmallPoly& a, const SmallPoly& b, const SmallPoly& m,
                 const FqCtx& ctx) {
  SmallPoly r;
  if (a.deg < 0 || b.deg < 0) return r;
  for (int i = 0; i <= a.deg; ++i) {
    if (ctx.is_zero(a.c[i])) continue;
    for (int j = 0; j <= b.deg; ++j)
      r.c[i + j] = ctx.add(r.c[i + j], ctx.mul(a.c[i], b.c[j]));
  }
  for (int t = a.deg + b.deg; t >= m.deg; --t) {
    if (ctx.is_zero(r.c[t])) continue;
    FqElem lead = r.c[t];
    r.c[t] = FqElem{};
    for (int s = 0; s < m.deg; ++s)
      r.c[t - m.deg + s] =
          ctx.sub(r.c[t - m.deg + s], ctx.mul(lead, m.c[s]));
  }
  fix_degree(r, ctx, m.deg - 1);
  return r;
}

// u * a mod m (monic m); a of degree < deg m.
SmallPoly shift_mod(const SmallPoly& a, const SmallPoly& m, const FqCtx& ctx) {
  SmallPoly r;
  if (a.deg < 0) return r;
  for (int i = a.deg; i >= 0; --i) r.c[i + 1] = a.c[i];
  r.c[0] = FqElem{};
  if (!ctx.is_zero(r.c[m.deg])) {
    FqElem lead = r.c[m.deg];
    r.c[m.deg] = FqElem{};
    for (int s = 0; s < m.deg; ++s)
      r.c[s] = ctx.sub(r.c[s], ctx.mul(lead, m.c[s]));
  }
  fix_degree(r, ctx, m.deg - 1);
  return r;
}

// u^e mod m by square-and-multiply; multiplications by the base u are plain
// shifts.
SmallPoly pow_x_mod(unsigned long long e, const SmallPoly& m, const FqCtx& ctx) {
  SmallPoly r;
  r.c[0] = ctx.one();
  r.deg = 0;
  if (m.deg == 1) {
    // Everything reduces to a constant: u = -m0.
    FqElem base = ctx.neg(m.c[0]);
    r.c[0] = ctx.pow(base, e);
    fix_degree(r, ctx, 0);
    return r;
  }
  int bits = 0;
  while ((e >> bits) > 1) ++bits;
  for (; bits >= 0; --bits) {
    r = mulmod(r, r, m, ctx);
    if ((e >> bits) & 1) r = shift_mod(r, m, ctx);
  }
  return r;
}

// u^(p^k) mod m via one plain exponentiation by p followed by Frobenius
// composition: if F_i = u^(p^i) then F_{i+1} = sum_j phi(F_i[j]) F_1^j,
// where phi is the coefficient Frobenius. This replaces k-1 full modular
// exponentiations with a handful of multiplications.
SmallPoly frobenius_power(const SmallPoly& m, const FqCtx& ctx) {
  SmallPoly f1 = pow_x_mod(static_cast<unsigned long long>(ctx.p()), m, ctx);
  if (ctx.k() == 1) return f1;
  SmallPoly f1sq = mulmod(f1, f1, m, ctx);
  SmallPoly cur = f1;
  for (int step = 2; step <= ctx.k(); ++step) {
    SmallPoly next;
    next.c[0] = ctx.frobenius(cur.c[0]);
    next.deg = 0;
    FqElem a1 = ctx.frobenius(cur.c[1]);
    FqElem a2 = ctx.frobenius(cur.c[2]);
    for (int s = 0; s < m.deg; ++s) {
      FqElem v = next.c[s];
      if (!ctx.is_zero(a1)) v = ctx.add(v, ctx.mul(a1, f1.c[s]));
      if (!ctx.is_zero(a2)) v = ctx.add(v, ctx.mul(a2, f1sq.c[s]));
      next.c[s] = v;
    }
    fix_degree(next, ctx, m.deg - 1);
    cur = next;
  }
  return cur;
}

// Degree of gcd(a, b) computed by pseudo-division (no inversions; only the
// degree is needed, so scalar factors are irrelevant).
int gcd_degree(SmallPoly a, SmallPoly b, const FqCtx& ctx) {
  while (b.deg >= 0) {
    while (a.deg >= b.deg) {
      FqElem la = a.c[a.deg];
      FqElem lb = b.c[b.deg];
      int shift = a.deg - b.deg;
      for (int i = 0; i <= a.deg; ++i) a.c[i] = ctx.mul(a.c[i], lb);
      for (int i = 0; i <= b.deg; ++i)
        a.c[i + shift] = ctx.sub(a.c[i + shift], ctx.mul(la, b.c[i]));
      fix_degree(a, ctx, a.deg - 1);
      if (a.deg < 0) break;
    }
    std::swap(a, b);
  }
  return a.deg;
}

unsigned long long default_budget(CountMethod method) {
  return method == CountMethod::chart_root_count ? kChartBudget : kNaiveBudget;
}

// Monomial vector (e^0, ..., e^d) scaled for the projective point (e : 1),
// or the infinity pattern (0, ..., 0, 1) for (1 : 0). idx ranges over
// 0..q (inclusive); idx == q encodes infinity.
void p1_monomials(const FqCtx& ctx, unsigned long long idx, int d,
                  FqElem* out) {
  if (idx == ctx.q()) {
    for (int i = 0; i < d; ++i) out[i] = FqElem{};
    out[d] = ctx.one();
    return;
  }
  FqElem e = ctx.from_index(idx);
  out[0] = ctx.one();
  for (int i = 1; i <= d; ++i) out[i] = ctx.mul(out[i - 1], e);
}

}  // namespace

std::string method_name(CountMethod m) {
  return m == CountMethod::chart_root_count ? "ChartRootCount"
                                            : "NaiveEnumeration";
}

std::string count_record_json(const CountRecord& r) {
  return "{\"p\": " + std::to_string(r.p) + ", \"k\": " + std::to_string(r.k) +
         ", \"N\": " + std::to_string(r.n) + ", \"method\": \"" +
         method_name(r.method) + "\", \"millis\": " + std::to_string(r.millis) +
         "}";
}

int count_roots_binary_form(const std::vector<FqElem>& f, const FqCtx& ctx,
                            unsigned long long brute_threshold) {
  if (f.empty() || f.size() > 4)
    fail(errc::usage, "binary form degree must be at most 3");
  const int d = static_cast<int>(f.size()) - 1;
  bool zero = true;
  for (const FqElem& c : f)
    if (!ctx.is_zero(c)) zero = false;
  if (zero) fail(errc::zero_form, "binary form is identically zero");

  const int n_inf = ctx.is_zero(f[d]) ? 1 : 0;
  int e = d;
  while (e >= 0 && ctx.is_zero(f[e])) --e;
  if (e <= 0) return n_inf;  // nonzero constant: no finite roots

  if (ctx.q() <= brute_threshold) {
    int count = 0;
    for (unsigned long long idx = 0; idx < ctx.q(); ++idx) {
      FqElem u = ctx.from_index(idx);
      FqElem acc = f[e];
      for (int i = e - 1; i >= 0; --i) acc = ctx.add(ctx.mul(acc, u), f[i]);
      if (ctx.is_zero(acc)) ++count;
    }
    return count + n_inf;
  }

  if (e == 1) return 1 + n_inf;

  if (e == 2) {
    // Distinct-root count of a quadratic from its discriminant.
    FqElem disc = ctx.sub(ctx.mul(f[1], f[1]),
                          ctx.scalar_mul(4, ctx.mul(f[2], f[0])));
    if (ctx.is_zero(disc)) return 1 + n_inf;
    FqElem chi = ctx.pow(disc, (ctx.q() - 1) / 2);
    return (chi == ctx.one() ? 2 : 0) + n_inf;
  }

  // Cubic: distinct roots in F_q = deg gcd(u^q - u, g) for the monic g.
  SmallPoly m;
  FqElem linv = ctx.inv(f[3]);
  for (int i = 0; i < 3; ++i) m.c[i] = ctx.mul(f[i], linv);
  m.c[3] = ctx.one();
  m.deg = 3;
  SmallPoly fr = frobenius_power(m, ctx);
  // r = u^q - u.
  fr.c[1] = ctx.sub(fr.c[1], ctx.one());
  fix_degree(fr, ctx, 2);
  if (fr.deg < 0) return 3 + n_inf;  // m divides u^q - u: fully split
  return gcd_degree(m, fr, ctx) + n_inf;
}

unsigned long long count_points_on_form(const BiForm& form, const FqCtx& ctx,
                                        CountMethod method) {
  const int d1 = form.d1();
  const int d2 = form.d2();
  if (d2 > 3) fail(errc::usage, "chart counting supports y-degree at most 3");

  // The coefficient grid reduced to scalars mod p.
  std::vector<long> grid(static_cast<size_t>(d1 + 1) * (d2 + 1));
  for (int i = 0; i <= d1; ++i)
    for (int j = 0; j <= d2; ++j) {
      BigInt r = form.coeff(i, j) % ctx.p();
      long v = r.get_si();
      grid[static_cast<size_t>(i) * (d2 + 1) + j] = v < 0 ? v + ctx.p() : v;
    }

  const unsigned long long q = ctx.q();

  if (method == CountMethod::chart_root_count) {
    unsigned long long n = 0;
    std::vector<FqElem> xmono(d1 + 1), fiber(d2 + 1);
    for (unsigned long long ix = 0; ix <= q; ++ix) {
      p1_monomials(ctx, ix, d1, xmono.data());
      bool all_zero = true;
      for (int j = 0; j <= d2; ++j) {
        FqElem acc{};
        for (int i = 0; i <= d1; ++i) {
          long s = grid[static_cast<size_t>(i) * (d2 + 1) + j];
          if (s) acc = ctx.add(acc, ctx.scalar_mul(s, xmono[i]));
        }
        fiber[j] = acc;
        if (!ctx.is_zero(acc)) all_zero = false;
      }
      if (all_zero)
        n += q + 1;  // the whole fiber lies on the locus
      else
        n += static_cast<unsigned long long>(
            count_roots_binary_form(fiber, ctx));
    }
    return n;
  }

  // Naive: evaluate the form at every coordinate pair. Per y-point the inner
  // sums W_i(y) = sum_j c_ij Y_j are fixed, so a pair evaluation is the dot
  // product sum_i X_i W_i; this is a genuine per-pair evaluation that shares
  // nothing with the chart path.
  std::vector<FqElem> w(static_cast<size_t>(q + 1) * (d1 + 1));
  std::vector<FqElem> ymono(d2 + 1);
  for (unsigned long long iy = 0; iy <= q; ++iy) {
    p1_monomials(ctx, iy, d2, ymono.data());
    for (int i = 0; i <= d1; ++i) {
      FqElem acc{};
      for (int j = 0; j <= d2; ++j) {
        long s = grid[static_cast<size_t>(i) * (d2 + 1) + j];
        if (s) acc = ctx.add(acc, ctx.scalar_mul(s, ymono[j]));
      }
      w[iy * (d1 + 1) + i] = acc;
    }
  }
  unsigned long long n = 0;
  std::vector<FqElem> xmono(d1 + 1);
  for (unsigned long long ix = 0; ix <= q; ++ix) {
    p1_monomials(ctx, ix, d1, xmono.data());
    for (unsigned long long iy = 0; iy <= q; ++iy) {
      const FqElem* wy = &w[iy * (d1 + 1)];
      FqElem acc{};
      for (int i = 0; i <= d1; ++i) acc = ctx.add(acc, ctx.mul(xmono[i], wy[i]));
      if (ctx.is_zero(acc)) ++n;
    }
  }
  return n;
}

CountRecord count_points(long p, int k, CountMethod method,
                         unsigned long long budget) {
  if (budget == 0) budget = default_budget(method);
  FqCtx ctx(p, k);
  if (ctx.q() > budget)
    fail(errc::budget_exceeded,
         "q = " + std::to_string(ctx.q()) + " exceeds the enumeration budget " +
             std::to_string(budget));
  auto t0 = std::chrono::steady_clock::now();
  unsigned long long n =
      count_points_on_form(curve(CurveId::C).form, ctx, method);
  auto t1 = std::chrono::steady_clock::now();
  CountRecord rec;
  rec.p = p;
  rec.k = k;
  rec.n = n;
  rec.method = method;
  rec.millis = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  if (rec.n > (ctx.q() + 1) * (ctx.q() + 1))
    fail(errc::internal_inconsistency, "count exceeds #P1 x P1");
  return rec;
}

EPointCount count_points_on_E(long p, const std::array<long long, 5>& model) {
  if (p < 2 || !is_prime_u64(static_cast<unsigned long long>(p)))
    fail(errc::not_prime, "p must be prime");
  const BigInt a1(static_cast<long>(model[0])), a2(static_cast<long>(model[1])),
      a3(static_cast<long>(model[2])), a4(static_cast<long>(model[3])),
      a6(static_cast<long>(model[4]));
  const BigInt b2 = a1 * a1 + 4 * a2;
  const BigInt b4 = 2 * a4 + a1 * a3;
  const BigInt b6 = a3 * a3 + 4 * a6;
  const BigInt b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 -
                    a4 * a4;
  const BigInt disc =
      -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (disc == 0) fail(errc::usage, "singular Weierstrass model");
  if (p == 2 || mpz_divisible_ui_p(disc.get_mpz_t(), p))
    fail(errc::bad_reduction, "p divides the discriminant");

  auto red = [&](const BigInt& v) -> unsigned long long {
    BigInt r = v % p;
    long w = r.get_si();
    return static_cast<unsigned long long>(w < 0 ? w + p : w);
  };
  // Completed square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, so
  // the fiber over x has 1 + chi(D(x)) points.
  const unsigned long long c3 = 4 % p, c2 = red(b2), c1 = red(2 * b4),
                           c0 = red(b6);
  std::vector<unsigned char> is_square(p, 0);
  for (long t = 0; t < p; ++t)
    is_square[mulmod_u64(t, t, p)] = 1;

  long long chi_sum = 0;
  const unsigned long long up = static_cast<unsigned long long>(p);
  for (unsigned long long x = 0; x < up; ++x) {
    unsigned long long d = mulmod_u64(c3, x, up);
    d = mulmod_u64(d + c2, x, up);
    d = mulmod_u64(d + c1, x, up);
    d = (d + c0) % up;
    if (d == 0) continue;
    chi_sum += is_square[d] ? 1 : -1;
  }
  EPointCount out;
  out.p = p;
  out.n = static_cast<unsigned long long>(1 + p + chi_sum);
  out.a_p = static_cast<long>(p + 1 - static_cast<long long>(out.n));
  if (static_cast<long long>(out.a_p) * out.a_p > 4 * static_cast<long long>(p))
    fail(errc::internal_inconsistency, "Hasse bound violated");
  return out;
}

}  // namespace preper
