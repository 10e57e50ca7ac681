#include "preper/lfunction.hpp"

#include <algorithm>
#include <sstream>

#include "preper/counting.hpp"
#include "preper/error.hpp"
#include "preper/fq.hpp"

namespace preper {

namespace {

BigInt pow_int(long base, int e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(e));
  return r;
}

// Exact quotient; anything else means the point counts cannot come from an
// integral characteristic polynomial.
BigInt exact_div(const BigInt& n, long d) {
  if (n % d != 0)
    fail(errc::non_integral_coefficient,
         "Newton identity division is not exact");
  return n / d;
}

void reject_unusable_prime(long p) {
  if (p == 2 || p == 23 || p == 29)
    fail(errc::bad_prime,
         "the curve has bad reduction at " + std::to_string(p));
  if (p < 2 || !is_prime_u64(static_cast<unsigned long long>(p)))
    fail(errc::not_prime, std::to_string(p) + " is not prime");
}

// c_1..c_d of the L-polynomial from power sums S_1..S_d (d <= 4), by
// Newton's identities; e_m = elementary symmetric, c_m = (-1)^m e_m.
std::vector<BigInt> newton_coeffs(const std::vector<BigInt>& S) {
  std::vector<BigInt> e{1};  // e[0] = 1
  for (size_t m = 1; m <= S.size(); ++m) {
    BigInt acc = 0;
    for (size_t i = 1; i <= m; ++i) {
      BigInt term = e[m - i] * S[i - 1];
      acc += (i % 2 == 1) ? term : BigInt(-term);
    }
    e.push_back(exact_div(acc, static_cast<long>(m)));
  }
  std::vector<BigInt> c;
  for (size_t m = 1; m < e.size(); ++m)
    c.push_back(m % 2 == 1 ? BigInt(-e[m]) : e[m]);
  return c;
}

std::vector<BigInt> power_sums(long p, int how_many,
                               unsigned long long budget) {
  std::vector<BigInt> S;
  for (int m = 1; m <= how_many; ++m) {
    CountRecord rec = count_points(p, m, CountMethod::chart_root_count,
                                   budget);
    S.push_back(pow_int(p, m) + 1 - BigInt(static_cast<unsigned long>(rec.n)));
  }
  return S;
}

// Reciprocal coefficients b_0..b_n of a power series with constant term 1:
// b_j = -sum_{i=1}^{min(j, deg)} c_i b_{j-i}.
std::vector<BigInt> reciprocal_coeffs(const std::vector<BigInt>& c, int n) {
  std::vector<BigInt> b{1};
  int deg = static_cast<int>(c.size()) - 1;
  for (int j = 1; j <= n; ++j) {
    BigInt acc = 0;
    for (int i = 1; i <= std::min(j, deg); ++i) acc += c[i] * b[j - i];
    b.push_back(-acc);
  }
  return b;
}

BigInt binom8(int i) {
  static const long table[9] = {1, 8, 28, 56, 70, 56, 28, 8, 1};
  return BigInt(table[i]);
}

}  // namespace

BigInt LPolynomial::eval_at_one() const {
  BigInt s = 0;
  for (const BigInt& ci : c) s += ci;
  return s;
}

std::string LPolynomial::str() const {
  std::ostringstream os;
  os << "1";
  for (int i = 1; i <= 8; ++i) {
    if (c[i] == 0) continue;
    os << (c[i] > 0 ? " + " : " - ");
    BigInt a = c[i] > 0 ? c[i] : BigInt(-c[i]);
    if (a != 1) os << a.get_str() << "*";
    os << "T";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

LPolynomial lpoly_good(long p, unsigned long long budget) {
  reject_unusable_prime(p);
  std::vector<BigInt> S = power_sums(p, 4, budget);
  std::vector<BigInt> c14 = newton_coeffs(S);

  LPolynomial L;
  L.p = p;
  L.c[0] = 1;
  for (int i = 1; i <= 4; ++i) L.c[i] = c14[i - 1];
  for (int i = 1; i <= 4; ++i) L.c[4 + i] = pow_int(p, i) * L.c[4 - i];
  if (L.eval_at_one() <= 0)
    fail(errc::internal_inconsistency, "P_p(1) must be positive");
  return L;
}

std::vector<unsigned long long> predict_counts(const LPolynomial& L, int k) {
  if (k < 1 || k > 6)
    fail(errc::usage, "prediction depth must be between 1 and 6");
  std::array<BigInt, 9> e;
  for (int i = 0; i <= 8; ++i) e[i] = (i % 2 == 0) ? L.c[i] : BigInt(-L.c[i]);

  std::vector<BigInt> ps;  // power sums, 1-based via ps[m-1]
  for (int m = 1; m <= k; ++m) {
    BigInt acc = 0;
    for (int i = 1; i < m; ++i) {
      BigInt term = e[i] * ps[m - i - 1];
      acc += (i % 2 == 1) ? term : BigInt(-term);
    }
    BigInt tail = m * e[m];
    acc += (m % 2 == 1) ? tail : BigInt(-tail);
    ps.push_back(acc);
  }

  std::vector<unsigned long long> out;
  for (int m = 1; m <= k; ++m) {
    BigInt N = pow_int(L.p, m) + 1 - ps[m - 1];
    if (N < 0 || !N.fits_ulong_p())
      fail(errc::internal_inconsistency, "predicted count out of range");
    out.push_back(N.get_ui());
  }
  return out;
}

BigInt jacobian_order(long p) { return lpoly_good(p).eval_at_one(); }

BigInt torsion_order_bound(const std::vector<long>& primes) {
  if (primes.empty())
    fail(errc::empty_set, "torsion bound needs at least one good prime");
  BigInt g = 0;
  for (long p : primes) {
    BigInt order = jacobian_order(p);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), order.get_mpz_t());
  }
  return g;
}

const std::vector<BadFactor>& bad_euler_factors() {
  static const std::vector<BadFactor> factors = [] {
    std::vector<BadFactor> out;
    out.push_back(BadFactor{2, "(1 + T)^2", {1, 2, 1}});
    out.push_back(
        BadFactor{23, "(1 + T)(1 - 6T + 23T^2)(1 + 23T^2)(1 + 8T + 23T^2)",
                  {1, 3, 23, 113, 575, 1541, 13225, 12167}});
    out.push_back(BadFactor{29, "(1 - T^2)(1 - 5T + 28T^2 - 145T^3 + 841T^4)",
                            {1, -5, 27, -140, 813, 145, -841}});
    return out;
  }();
  return factors;
}

ConductorInfo conductor_info() {
  ConductorInfo info;
  info.n_elliptic = 58;
  info.n_complement = 21344;
  info.n_jacobian = 1237952;
  info.elliptic_factored = "2 * 29";
  info.complement_factored = "2^5 * 23 * 29";
  info.jacobian_factored = "2^6 * 23 * 29^2";
  info.product_holds = info.n_jacobian == info.n_elliptic * info.n_complement;
  return info;
}

EllipticFactorReport elliptic_factor_check(long p) {
  reject_unusable_prime(p);  // 2, 23, 29 are bad for curve and quotient alike
  LPolynomial L = lpoly_good(p);
  EPointCount ec = count_points_on_E(p, kEllipticQuotientModel);

  // P_p = (1 - a_p T + p T^2) * Q with Q of degree 6: peel Q off by the
  // linear recurrence the product enforces, then check the two leftover
  // coefficient identities.
  EllipticFactorReport rep;
  rep.p = p;
  rep.a_p = ec.a_p;
  std::array<BigInt, 7>& q = rep.quotient;
  for (int i = 0; i <= 6; ++i) {
    BigInt acc = L.c[i];
    if (i >= 1) acc += ec.a_p * q[i - 1];
    if (i >= 2) acc -= p * q[i - 2];
    q[i] = acc;
  }
  if (L.c[7] != -ec.a_p * q[6] + p * q[5] || L.c[8] != p * q[6])
    fail(errc::not_divisible,
         "elliptic local factor does not divide P_" + std::to_string(p));
  return rep;
}

bool functional_equation_holds(const LPolynomial& L) {
  for (int i = 0; i <= 4; ++i)
    if (L.c[8 - i] != pow_int(L.p, 4 - i) * L.c[i]) return false;
  return true;
}

bool weil_bounds_hold(const LPolynomial& L) {
  for (int i = 0; i <= 8; ++i) {
    BigInt bound2 = binom8(i) * binom8(i) * pow_int(L.p, i);
    if (L.c[i] * L.c[i] > bound2) return false;
  }
  return true;
}

bool positive_below_inverse_sqrt(const LPolynomial& L) {
  // ceil(sqrt(p))
  BigInt root, rem;
  BigInt bp(L.p);
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), bp.get_mpz_t());
  if (rem != 0) root += 1;
  BigInt D = 64 * root;
  for (long j = 1; j <= 63; ++j) {
    // sign of P(j / D), cleared of the positive denominator D^8
    BigInt acc = 0;
    BigInt jp = 1;
    for (int i = 0; i <= 8; ++i) {
      BigInt dp;
      mpz_pow_ui(dp.get_mpz_t(), D.get_mpz_t(),
                 static_cast<unsigned long>(8 - i));
      acc += L.c[i] * jp * dp;
      jp *= j;
    }
    if (acc <= 0) return false;
  }
  return true;
}

std::vector<long long> dirichlet_coefficients(long n_max) {
  if (n_max < 1) fail(errc::usage, "coefficient bound must be positive");
  if (n_max > 2000000)
    fail(errc::budget_exceeded, "coefficient bound too large");

  // Smallest prime factor sieve; spf[n] == n marks n prime.
  std::vector<int> spf(n_max + 1, 0);
  for (long i = 2; i <= n_max; ++i) {
    if (spf[i] == 0)
      for (long j = i; j <= n_max; j += i)
        if (spf[j] == 0) spf[j] = static_cast<int>(i);
  }

  std::vector<long long> a(n_max + 1, 0);
  a[1] = 1;

  for (long p = 2; p <= n_max; ++p) {
    if (spf[p] != p) continue;
    int e = 0;  // largest e with p^e <= n_max
    for (long long pm = 1; pm <= n_max / p; ++e) pm *= p;

    std::vector<BigInt> local{1};
    bool bad = p == 2 || p == 23 || p == 29;
    if (bad) {
      for (const BadFactor& f : bad_euler_factors())
        if (f.p == p) {
          local.clear();
          for (long long ci : f.c) local.push_back(BigInt(static_cast<long>(ci)));
        }
    } else if (e >= 5) {
      LPolynomial L = lpoly_good(p);
      local.assign(L.c.begin(), L.c.end());
    } else {
      // Only the counts with p^m <= n_max are needed: c_1..c_e already
      // determine a_{p^j} for j <= e.
      std::vector<BigInt> S = power_sums(p, e, 0);
      std::vector<BigInt> c1e = newton_coeffs(S);
      for (const BigInt& ci : c1e) local.push_back(ci);
    }

    std::vector<BigInt> b = reciprocal_coeffs(local, e);
    long long pm = 1;
    for (int j = 1; j <= e; ++j) {
      pm *= p;
      if (!b[j].fits_slong_p())
        fail(errc::internal_inconsistency, "coefficient overflow");
      a[pm] = b[j].get_si();
    }
  }

  for (long n = 2; n <= n_max; ++n) {
    long p = spf[n];
    long m = n, pv = 1;
    while (m % p == 0) {
      m /= p;
      pv *= p;
    }
    if (m > 1) a[n] = a[pv] * a[m];
  }
  return a;
}

}  // namespace preper
