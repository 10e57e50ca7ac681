#include "preper/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "preper/counting.hpp"
#include "preper/curves.hpp"
#include "preper/dynamics.hpp"
#include "preper/error.hpp"
#include "preper/lfunction.hpp"

namespace preper {

namespace {

const std::vector<long> kGoodOddPrimesTo50 = {3,  5,  7,  11, 13, 17,
                                              19, 31, 37, 41, 43, 47};

struct Check {
  std::ostringstream msg;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) msg << "; ";
      msg << what;
      ok = false;
    }
  }
};

std::vector<BigRat> parse_all(const std::vector<std::string>& ss) {
  std::vector<BigRat> out;
  for (const auto& s : ss) out.push_back(BigRat::parse(s));
  return out;
}

// --- criterion bodies ------------------------------------------------------

void crit_count_f3(Check& c) {
  CountRecord r = count_points(3, 1);
  c.expect(r.n == 9, "expected 9 points over F_3, got " + std::to_string(r.n));
}

void crit_jacobian_orders(Check& c) {
  BigInt j3 = jacobian_order(3);
  BigInt j5 = jacobian_order(5);
  c.expect(j3 == 504, "#J(F_3) = " + j3.get_str() + ", expected 504");
  c.expect(j5 == 1296, "#J(F_5) = " + j5.get_str() + ", expected 1296");
}

void crit_zeta_predicts(Check& c) {
  for (long p : {3L, 5L}) {
    LPolynomial L = lpoly_good(p);
    unsigned long long predicted = predict_counts(L, 5)[4];
    CountRecord direct =
        count_points(p, 5, CountMethod::naive_enumeration);
    c.expect(predicted == direct.n,
             "p = " + std::to_string(p) + ": predicted N_5 = " +
                 std::to_string(predicted) + " but direct enumeration gives " +
                 std::to_string(direct.n));
  }
}

void crit_torsion_bound(Check& c) {
  BigInt bound = torsion_order_bound({3, 5});
  c.expect(bound == 72,
           "gcd of #J(F_3), #J(F_5) = " + bound.get_str() + ", expected 72");
  for (long p : kGoodOddPrimesTo50) {
    BigInt order = jacobian_order(p);
    c.expect(order % 36 == 0, "36 does not divide #J(F_" + std::to_string(p) +
                                  ") = " + order.get_str());
  }
}

void crit_elliptic_factor(Check& c) {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    try {
      elliptic_factor_check(p);
    } catch (const error& e) {
      c.expect(false, "division failed at p = " + std::to_string(p) + ": " +
                          e.what());
    }
  }
}

void crit_dirichlet(Check& c) {
  std::vector<long long> a = dirichlet_coefficients(10000);
  c.expect(a[1] == 1, "a_1 = " + std::to_string(a[1]));
  c.expect(a[2] == -2, "a_2 = " + std::to_string(a[2]));
  c.expect(a[3] == -5, "a_3 = " + std::to_string(a[3]));
  c.expect(a[4] == 3, "a_4 = " + std::to_string(a[4]));
  std::mt19937_64 rng(20260819);
  int checked = 0;
  while (checked < 500) {
    long m = 2 + static_cast<long>(rng() % 98);
    long n = 2 + static_cast<long>(rng() % (10000 / m - 1));
    if (std::gcd(m, n) != 1) continue;
    ++checked;
    if (a[m * n] != a[m] * a[n]) {
      c.expect(false, "a_" + std::to_string(m * n) +
                          " != a_" + std::to_string(m) + " * a_" +
                          std::to_string(n));
      return;
    }
  }
}

void crit_sz_catalog(Check& c) {
  SzReport s0 = compute_Sz(BigRat(0));
  c.expect(s0.values == parse_all({"-2", "-1", "0"}),
           "S_0 is not {-2, -1, 0}");

  SzReport shalf = compute_Sz(BigRat(1, 2));
  c.expect(shalf.values.size() == 3,
           "S_{1/2} has " + std::to_string(shalf.values.size()) +
               " members, expected 3");

  SzReport s512 = compute_Sz(BigRat(5, 12));
  c.expect(s512.values.size() == 7,
           "S_{5/12} has " + std::to_string(s512.values.size()) +
               " members, expected 7");

  std::vector<BigRat> expect34 =
      parse_all({"-45/16", "-37/16", "-29/16", "-21/16", "-13/16", "-5/16",
                 "3/16"});
  std::vector<BigRat> expect54 =
      parse_all({"-61/16", "-45/16", "-37/16", "-29/16", "-21/16", "-13/16",
                 "-5/16"});
  SzReport s34 = compute_Sz(BigRat(3, 4));
  SzReport s54 = compute_Sz(BigRat(5, 4));
  c.expect(s34.values == expect34, "S_{3/4} differs from its seven values");
  c.expect(s54.values == expect54, "S_{5/4} differs from its seven values");

  std::vector<BigRat> inter = intersect_Sz(BigRat(3, 4), BigRat(5, 4));
  c.expect(inter.size() == 6, "S_{3/4} and S_{5/4} share " +
                                  std::to_string(inter.size()) +
                                  " values, expected 6");

  auto all_preperiodic = [&c](const SzReport& rep) {
    for (const BigRat& t : rep.values) {
      OrbitVerdict v = decide_orbit(rep.z, t);
      c.expect(v.kind == OrbitKind::preperiodic,
               rep.z.str() + " not preperiodic at t = " + t.str());
    }
  };
  all_preperiodic(s0);
  all_preperiodic(shalf);
  all_preperiodic(s512);
  all_preperiodic(s34);
  all_preperiodic(s54);
}

void crit_orbit_type(Check& c) {
  OrbitVerdict v = decide_orbit(BigRat(3, 4), BigRat(-29, 16));
  c.expect(v.kind == OrbitKind::preperiodic, "orbit did not close up");
  c.expect(v.period_m == 3 && v.tail_n == 2,
           "expected a 3-cycle entered after 2 steps, got (" +
               std::to_string(v.period_m) + ", " + std::to_string(v.tail_n) +
               ")");
}

void crit_search_1000(Check& c) {
  for (const CurveRecord& rec : registry()) {
    std::vector<P1xP1Point> found = search(rec, 1000);
    if (found != rec.expected_points) {
      std::string diff;
      for (const auto& P : found)
        if (std::find(rec.expected_points.begin(), rec.expected_points.end(),
                      P) == rec.expected_points.end())
          diff += " extra " + P.str();
      for (const auto& P : rec.expected_points)
        if (std::find(found.begin(), found.end(), P) == found.end())
          diff += " missing " + P.str();
      c.expect(false, curve_name(rec.id) + ": found " +
                          std::to_string(found.size()) + " points, expected " +
                          std::to_string(rec.expected_points.size()) + ";" +
                          diff);
    }
  }
}

void crit_chabauty(Check& c) {
  ChabautyReport rep = chabauty_residue_check(3);
  c.expect(rep.distinct, "the nine points collide mod 3");
  c.expect(rep.count == 9,
           "#C(F_3) = " + std::to_string(rep.count) + ", expected 9");
  c.expect(rep.saturated, "mod-3 image not saturated");
}

void crit_singular(Check& c) {
  auto count_sing = [](long p, int k) {
    return singular_points_mod_p(p, k).size();
  };
  c.expect(count_sing(23, 1) == 1, "expected 1 singular point mod 23");
  c.expect(count_sing(29, 1) == 0, "expected smooth reduction mod 29");
  c.expect(count_sing(29, 2) == 2,
           "expected 2 singular points over the quadratic extension of F_29");
  for (long p : kGoodOddPrimesTo50)
    c.expect(count_sing(p, 1) == 0,
             "unexpected singular point mod " + std::to_string(p));
}

// --- property suites (criterion 12) ---------------------------------------

BigRat random_rat(std::mt19937_64& rng, long num_range, long den_range) {
  long num = static_cast<long>(rng() % (2 * num_range + 1)) - num_range;
  long den = 1 + static_cast<long>(rng() % den_range);
  return BigRat(num, den);
}

bool excluded_for(Family f, const BigRat& a) {
  switch (f) {
    case Family::t30: return a == BigRat(-1) || a == BigRat(0);
    case Family::t12: return a == BigRat(1) || a == BigRat(-1);
    case Family::t22:
      return a == BigRat(0) || a == BigRat(1) || a == BigRat(-1);
    default: return true;
  }
}

void suite_parametrization_types(Check& c) {
  struct Expectation {
    Family family;
    int m;
    int n;
  };
  const Expectation plan[] = {{Family::t30, 3, 0},
                              {Family::t12, 1, 2},
                              {Family::t22, 2, 2}};
  std::mt19937_64 rng(101);
  for (const auto& [family, m, n] : plan) {
    int done = 0;
    while (done < 200) {
      BigRat a = random_rat(rng, 20, 20);
      if (excluded_for(family, a)) continue;
      ++done;
      FamilyPoint fp = eval_family(family, a);
      OrbitVerdict v = decide_orbit(fp.z, fp.t);
      if (v.kind != OrbitKind::preperiodic || v.period_m != m ||
          v.tail_n != n) {
        c.expect(false, "family point at a = " + a.str() +
                            " is not of type (" + std::to_string(m) + ", " +
                            std::to_string(n) + ")");
        return;
      }
    }
  }
}

void suite_h_symmetries(Check& c) {
  std::mt19937_64 rng(202);
  int done = 0;
  while (done < 200) {
    BigRat a = random_rat(rng, 20, 20);
    if (excluded_for(Family::t30, a) || excluded_for(Family::t12, a) ||
        excluded_for(Family::t22, a))
      continue;
    ++done;
    BigRat one(1);

    BigRat h30 = eval_family(Family::t30, a).t;
    BigRat s1 = -(one / (a + one));  // a -> -1/(a+1)
    BigRat s2 = -((a + one) / a);    // a -> -(a+1)/a
    if (eval_family(Family::t30, s1).t != h30 ||
        eval_family(Family::t30, s2).t != h30) {
      c.expect(false, "3-cycle family t-value not symmetric at a = " + a.str());
      return;
    }
    if (eval_family(Family::t12, -a).t != eval_family(Family::t12, a).t) {
      c.expect(false, "fixed-point family t-value not even at a = " + a.str());
      return;
    }
    if (eval_family(Family::t22, -(one / a)).t !=
        eval_family(Family::t22, a).t) {
      c.expect(false,
               "2-cycle family t-value not inversion-symmetric at a = " +
                   a.str());
      return;
    }
  }
}

void suite_sz_negation(Check& c) {
  std::mt19937_64 rng(303);
  for (int i = 0; i < 200; ++i) {
    BigRat z = random_rat(rng, 30, 30);
    SzReport plus = compute_Sz(z);
    SzReport minus = compute_Sz(-z);
    if (plus.values != minus.values) {
      c.expect(false, "S_z differs from S_{-z} at z = " + z.str());
      return;
    }
  }
}

void suite_dual_method(Check& c) {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    for (int k = 1; k <= 4; ++k) {
      unsigned long long q = 1;
      for (int i = 0; i < k; ++i) q *= static_cast<unsigned long long>(p);
      if (q > 10000) break;
      CountRecord chart = count_points(p, k, CountMethod::chart_root_count);
      CountRecord naive = count_points(p, k, CountMethod::naive_enumeration);
      if (chart.n != naive.n) {
        c.expect(false, "count mismatch over F_{" + std::to_string(p) + "^" +
                            std::to_string(k) + "}: " +
                            std::to_string(chart.n) + " vs " +
                            std::to_string(naive.n));
        return;
      }
    }
  }
}

void suite_functional_equation(Check& c) {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    LPolynomial L = lpoly_good(p);
    c.expect(functional_equation_holds(L),
             "functional equation fails at p = " + std::to_string(p));
    c.expect(weil_bounds_hold(L),
             "coefficient bound fails at p = " + std::to_string(p));
    c.expect(positive_below_inverse_sqrt(L),
             "numerator vanishes below 1/sqrt(p) at p = " + std::to_string(p));
  }
}

void crit_property_suites(Check& c) {
  suite_parametrization_types(c);
  suite_h_symmetries(c);
  suite_sz_negation(c);
  suite_dual_method(c);
  suite_functional_equation(c);
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out) {
  struct Spec {
    std::string name;
    long limit_millis;
    std::function<void(Check&)> body;
  };
  const std::vector<Spec> specs = {
      {"count_over_F3_is_9", 1000, crit_count_f3},
      {"jacobian_orders_504_1296", 30000, crit_jacobian_orders},
      {"zeta_predicts_N5_two_ways", 120000, crit_zeta_predicts},
      {"torsion_bound_72_and_36_divides_all", 600000, crit_torsion_bound},
      {"elliptic_factor_divides_to_13", 60000, crit_elliptic_factor},
      {"dirichlet_coefficients_multiplicative", 300000, crit_dirichlet},
      {"preperiodic_catalog_small_z", 5000, crit_sz_catalog},
      {"orbit_34_enters_3_cycle_after_2", 1000, crit_orbit_type},
      {"search_height_1000_exact", 600000, crit_search_1000},
      {"residue_reduction_p3_saturated", 1000, crit_chabauty},
      {"singular_fibers_23_29", 120000, crit_singular},
      {"property_suites", 600000, crit_property_suites},
  };

  std::vector<CriterionResult> results;
  for (size_t i = 0; i < specs.size(); ++i) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      specs[i].body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();

    CriterionResult r;
    r.index = static_cast<int>(i) + 1;
    r.name = specs[i].name;
    r.millis = ms;
    r.limit_millis = specs[i].limit_millis;
    bool in_time = ms <= specs[i].limit_millis;
    r.pass = check.ok && in_time;
    r.detail = check.msg.str();
    if (!in_time) {
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += "over time budget (" + std::to_string(ms) + " ms > " +
                  std::to_string(specs[i].limit_millis) + " ms)";
    }
    out << (r.pass ? "PASS" : "FAIL") << "  [" << r.index << "/12] "
        << r.name << "  (" << ms << " ms)";
    if (!r.pass) out << "  " << r.detail;
    out << "\n" << std::flush;
    results.push_back(std::move(r));
  }

  size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  out << passed << "/" << results.size() << " criteria passed\n";
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  if (results.empty()) return false;
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace preper
