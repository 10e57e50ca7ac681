#pragma once

#include <array>
#include <string>
#include <vector>

#include "preper/rational.hpp"

namespace preper {

// Numerator of the local zeta function of the central curve at a good odd
// prime: P_p(T) = prod_i (1 - alpha_i T), degree 8, integer coefficients,
// c[0] = 1. The reciprocal roots alpha_i have |alpha_i| = sqrt(p) and pair
// off as alpha * alpha' = p.
struct LPolynomial {
  long p = 0;
  std::array<BigInt, 9> c{};

  BigInt eval_at_one() const;
  std::string str() const;
};

// Builds P_p from the point counts N_1..N_4 over F_p, ..., F_{p^4} via
// Newton's identities, completing c_5..c_8 by the functional equation.
// Rejects p in {2, 23, 29} (bad_prime) and composite p (not_prime); a
// Newton division that fails to be exact raises non_integral_coefficient.
// budget caps the field sizes handed to the point counter (0 = default).
LPolynomial lpoly_good(long p, unsigned long long budget = 0);

// N_1..N_k (1 <= k <= 6) implied by an L-polynomial, via the inverse Newton
// recurrence on its coefficients.
std::vector<unsigned long long> predict_counts(const LPolynomial& L, int k);

// #J(F_p) = P_p(1) for the Jacobian of the central curve.
BigInt jacobian_order(long p);

// gcd of #J(F_p) over a nonempty set of good odd primes; any rational
// torsion order divides it.
BigInt torsion_order_bound(const std::vector<long>& primes);

// Euler factor at a bad prime, stored both factored (for the record) and
// expanded. Coefficients are lowest degree first with constant term 1.
struct BadFactor {
  long p;
  std::string factored;
  std::vector<long long> c;
};

// The local factors at the three bad primes 2, 23, 29.
const std::vector<BadFactor>& bad_euler_factors();

struct ConductorInfo {
  long long n_jacobian;    // conductor of the full Jacobian
  long long n_elliptic;    // conductor of the elliptic quotient
  long long n_complement;  // conductor of the complementary abelian part
  std::string jacobian_factored;
  std::string elliptic_factored;
  std::string complement_factored;
  bool product_holds;  // n_jacobian == n_elliptic * n_complement
};

ConductorInfo conductor_info();

// Weierstrass coefficients [a1, a2, a3, a4, a6] of the elliptic quotient of
// the Jacobian (LMFDB curve 58.a1).
constexpr std::array<long long, 5> kEllipticQuotientModel = {1, -1, 0, -1, 1};

struct EllipticFactorReport {
  long p = 0;
  long long a_p = 0;               // trace of Frobenius on the quotient curve
  std::array<BigInt, 7> quotient;  // P_p / (1 - a_p T + p T^2), degree 6
};

// Divides P_p by the local factor of the elliptic quotient; inexact division
// raises not_divisible. Bad primes of the curve or the quotient are rejected.
EllipticFactorReport elliptic_factor_check(long p);

// Coefficient-level self-checks on an L-polynomial, all exact:
// c_{8-i} = p^{4-i} c_i for every i.
bool functional_equation_holds(const LPolynomial& L);
// |c_i| <= binom(8, i) p^{i/2}, squared to stay in integers.
bool weil_bounds_hold(const LPolynomial& L);
// P_p > 0 on the grid T_j = j / (64 ceil(sqrt(p))), j = 1..63, which pins
// down the absence of a real zero in (0, 1/sqrt(p)).
bool positive_below_inverse_sqrt(const LPolynomial& L);

// Dirichlet coefficients a_1..a_n_max of the L-series of the Jacobian:
// reciprocals of the local factors at prime powers (partial Newton data when
// p^5 > n_max suffices and is all that is computed), extended by
// multiplicativity. a[0] is unused and zero.
std::vector<long long> dirichlet_coefficients(long n_max);

}  // namespace preper
