#pragma once

#include <array>
#include <string>
#include <vector>

#include "preper/biform.hpp"
#include "preper/fq.hpp"

namespace preper {

enum class CountMethod { chart_root_count, naive_enumeration };

std::string method_name(CountMethod m);

struct CountRecord {
  long p = 0;
  int k = 0;
  unsigned long long n = 0;
  CountMethod method = CountMethod::chart_root_count;
  long millis = 0;
};

std::string count_record_json(const CountRecord& r);

// Default enumeration budgets, as bounds on q = p^k.
inline constexpr unsigned long long kChartBudget = 100000000ull;
inline constexpr unsigned long long kNaiveBudget = 100000ull;

// Number of projective roots in P^1(F_q) of the binary form
// sum_j f[j] y1^j y0^(d-j), d = f.size() - 1 <= 3. The form must not be
// identically zero. Fields with q <= brute_threshold are counted by direct
// evaluation; larger ones through the degree of gcd(u^q - u, f(u, 1)), with
// the root at infinity read off the leading coefficient. The threshold is a
// parameter so tests can pin either path; both give identical counts.
int count_roots_binary_form(const std::vector<FqElem>& f, const FqCtx& ctx,
                            unsigned long long brute_threshold = 512);

// Point count of the zero locus of a bihomogeneous form over F_q.
unsigned long long count_points_on_form(const BiForm& form, const FqCtx& ctx,
                                        CountMethod method);

// #C(F_{p^k}) for the central bidegree-(3,3) curve.
CountRecord count_points(long p, int k,
                         CountMethod method = CountMethod::chart_root_count,
                         unsigned long long budget = 0);

struct EPointCount {
  long p = 0;
  unsigned long long n = 0;  // #E(F_p), point at infinity included
  long a_p = 0;              // p + 1 - n
};

// Point count of a long Weierstrass cubic y^2 + a1 xy + a3 y =
// x^3 + a2 x^2 + a4 x + a6 over F_p, odd p of good reduction.
EPointCount count_points_on_E(long p, const std::array<long long, 5>& model);

}  // namespace preper
