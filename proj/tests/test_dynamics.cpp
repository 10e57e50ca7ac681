#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "preper/dynamics.hpp"
#include "preper/error.hpp"
#include "test_util.hpp"

using namespace preper;
using testutil::code_of;
using testutil::Q;
using testutil::random_rat;
using testutil::rats;

TEST_CASE("one orbit step") {
  CHECK(step(Q("0"), Q("0")) == Q("0"));
  CHECK(step(Q("3/4"), Q("-29/16")) == Q("-5/4"));
  CHECK(step(Q("1/2"), Q("1/4")) == Q("1/2"));
}

TEST_CASE("orbit decision: the catalogued verdicts") {
  SUBCASE("3/4 enters a 3-cycle after two steps at t = -29/16") {
    OrbitVerdict v = decide_orbit(Q("3/4"), Q("-29/16"));
    CHECK(v.kind == OrbitKind::preperiodic);
    CHECK(v.period_m == 3);
    CHECK(v.tail_n == 2);
    CHECK(v.orbit == rats({"3/4", "-5/4", "-1/4", "-7/4", "5/4"}));
  }
  SUBCASE("0 <-> -1 is a 2-cycle from the start") {
    OrbitVerdict v = decide_orbit(Q("0"), Q("-1"));
    CHECK(v.kind == OrbitKind::preperiodic);
    CHECK(v.period_m == 2);
    CHECK(v.tail_n == 0);
    CHECK(v.orbit == rats({"0", "-1"}));
  }
  SUBCASE("denominators outgrow sqrt(den(t))") {
    OrbitVerdict v = decide_orbit(Q("0"), Q("1/4"));
    CHECK(v.kind == OrbitKind::divergent);
    CHECK(v.reason == DivergenceReason::denominator_violation);
  }
  SUBCASE("absolute value escapes past |t| + 1") {
    OrbitVerdict v = decide_orbit(Q("1"), Q("1"));
    CHECK(v.kind == OrbitKind::divergent);
    CHECK(v.reason == DivergenceReason::archimedean_escape);
  }
  SUBCASE("non-square denominator of t rules out every rational cycle") {
    OrbitVerdict v = decide_orbit(Q("0"), Q("1/3"));
    CHECK(v.kind == OrbitKind::divergent);
    CHECK(v.reason == DivergenceReason::nonsquare_denominator_of_t);
    CHECK(v.steps == 0);
  }
}

TEST_CASE("orbit decision terminates inside its step bound") {
  std::mt19937_64 rng(90210);
  for (int i = 0; i < 300; ++i) {
    BigRat z = random_rat(rng, 10000);
    BigRat t = random_rat(rng, 10000);
    OrbitVerdict v = decide_orbit(z, t);
    if (v.reason == DivergenceReason::nonsquare_denominator_of_t) {
      CHECK(v.steps == 0);
      continue;
    }
    BigInt vden;
    mpz_sqrt(vden.get_mpz_t(), t.den().get_mpz_t());
    BigInt bound = 2 * vden * (t.ceil_abs() + 1) + 2;
    CHECK(BigInt(v.steps) <= bound);
  }
}

TEST_CASE("preperiodic verdicts carry a minimal (m, n) and the exact orbit") {
  std::mt19937_64 rng(515);
  int seen = 0;
  for (int i = 0; i < 400 || seen < 30; ++i) {
    if (i > 4000) break;  // plenty of preperiodic samples arrive well before this
    BigRat z = random_rat(rng, 6);
    BigRat t = random_rat(rng, 6);
    OrbitVerdict v = decide_orbit(z, t);
    if (v.kind != OrbitKind::preperiodic) continue;
    ++seen;
    int n = v.tail_n, m = v.period_m;
    REQUIRE(static_cast<int>(v.orbit.size()) == n + m);
    // all stored values distinct, so no earlier revisit was possible
    std::set<BigRat> distinct(v.orbit.begin(), v.orbit.end());
    CHECK(distinct.size() == v.orbit.size());
    // the orbit is consistent with iteration and closes onto index n
    for (int j = 0; j + 1 < n + m; ++j)
      CHECK(step(v.orbit[j], t) == v.orbit[j + 1]);
    CHECK(step(v.orbit[n + m - 1], t) == v.orbit[n]);
  }
  CHECK(seen >= 30);
}

TEST_CASE("the four instant-cycle parameters") {
  CHECK(compute_Tz(Q("0")) == rats({"-1", "0"}));
  CHECK(compute_Tz(Q("1/2")) == rats({"-7/4", "-3/4", "1/4"}));
  CHECK(compute_Tz(Q("3/4")) == rats({"-37/16", "-21/16", "-13/16", "3/16"}));
}

TEST_CASE("family parametrizations at catalogued parameters") {
  FamilyPoint p = eval_family(Family::t30, Q("2"));
  CHECK(p.z == Q("5/12"));
  CHECK(p.t == Q("-301/144"));

  p = eval_family(Family::t12, Q("3"));
  CHECK(p.z == Q("3/4"));
  CHECK(p.t == Q("-5/16"));

  p = eval_family(Family::t30, Q("-1/2"));
  CHECK(p.z == Q("5/4"));
  CHECK(p.t == Q("-29/16"));

  CHECK(code_of([] { eval_family(Family::t30, Q("0")); }) == errc::excluded_parameter);
  CHECK(code_of([] { eval_family(Family::t30, Q("-1")); }) == errc::excluded_parameter);
  CHECK(code_of([] { eval_family(Family::t12, Q("1")); }) == errc::excluded_parameter);
  CHECK(code_of([] { eval_family(Family::t12, Q("-1")); }) == errc::excluded_parameter);
  CHECK(code_of([] { eval_family(Family::t22, Q("0")); }) == errc::excluded_parameter);
  CHECK(code_of([] { eval_family(Family::t32, Q("2")); }) == errc::usage);
}

// Every witness must reproduce through its own parametrization: h(a) = t and
// g(a) = sign * z, and the t-value must actually make z preperiodic.
static void check_witnesses(const BigRat& z, const std::vector<FamilyWitness>& ws) {
  for (const FamilyWitness& w : ws) {
    if (w.family == Family::t32) {
      CHECK(!w.a.has_value());
      CHECK(w.t == testutil::Q("-29/16"));
      CHECK((z == testutil::Q("3/4") || z == testutil::Q("-3/4")));
    } else {
      REQUIRE(w.a.has_value());
      FamilyPoint p = eval_family(w.family, *w.a);
      CHECK(p.t == w.t);
      CHECK(p.z == (w.sign > 0 ? z : -z));
    }
    CHECK(decide_orbit(z, w.t).kind == OrbitKind::preperiodic);
  }
}

TEST_CASE("family witnesses beyond the instant-cycle set") {
  SUBCASE("5/12 is reached by the cubic family at 2 and the quadratic at 5, -1/5") {
    auto ws = family_witnesses(Q("5/12"));
    check_witnesses(Q("5/12"), ws);
    std::vector<BigRat> t30_a, t12_a;
    for (const auto& w : ws) {
      if (w.family == Family::t30) t30_a.push_back(*w.a);
      if (w.family == Family::t12) t12_a.push_back(*w.a);
    }
    REQUIRE(t30_a.size() == 1);
    CHECK(t30_a[0] == Q("2"));
    REQUIRE(t12_a.size() == 2);
    CHECK(std::count(t12_a.begin(), t12_a.end(), Q("5")) == 1);
    CHECK(std::count(t12_a.begin(), t12_a.end(), Q("-1/5")) == 1);
  }
  SUBCASE("1/2 has none") {
    CHECK(family_witnesses(Q("1/2")).empty());
  }
  SUBCASE("3/4 gets two quadratic witnesses and the isolated pair") {
    auto ws = family_witnesses(Q("3/4"));
    check_witnesses(Q("3/4"), ws);
    REQUIRE(ws.size() == 3);
    std::vector<BigRat> t12_a;
    bool saw_t32 = false;
    for (const auto& w : ws) {
      if (w.family == Family::t12) t12_a.push_back(*w.a);
      if (w.family == Family::t32) saw_t32 = true;
    }
    CHECK(saw_t32);
    REQUIRE(t12_a.size() == 2);
    CHECK(std::count(t12_a.begin(), t12_a.end(), Q("3")) == 1);
    CHECK(std::count(t12_a.begin(), t12_a.end(), Q("-1/3")) == 1);
  }
}

TEST_CASE("the full preperiodicity parameter sets") {
  SUBCASE("z = 0") {
    SzReport r = compute_Sz(Q("0"));
    CHECK(r.values == rats({"-2", "-1", "0"}));
    CHECK(r.theorem_case == 1);
  }
  SUBCASE("z = 1/2") {
    SzReport r = compute_Sz(Q("1/2"));
    CHECK(r.values == rats({"-7/4", "-3/4", "1/4"}));
    CHECK(r.theorem_case == 1);
  }
  SUBCASE("z = 3/4") {
    SzReport r = compute_Sz(Q("3/4"));
    CHECK(r.values == rats({"-45/16", "-37/16", "-29/16", "-21/16", "-13/16",
                            "-5/16", "3/16"}));
    CHECK(r.theorem_case == 4);
  }
  SUBCASE("z = 5/4") {
    SzReport r = compute_Sz(Q("5/4"));
    CHECK(r.values == rats({"-61/16", "-45/16", "-37/16", "-29/16", "-21/16",
                            "-13/16", "-5/16"}));
    CHECK(r.theorem_case == 4);
  }
  SUBCASE("z = 5/12") {
    SzReport r = compute_Sz(Q("5/12"));
    CHECK(r.values.size() == 7);
    CHECK(r.theorem_case == 4);
  }
  SUBCASE("z = 1 has only the instant set, padded by nothing") {
    SzReport r = compute_Sz(Q("1"));
    CHECK(r.values == rats({"-3", "-2", "-1", "0"}));
    CHECK(r.theorem_case == 5);
  }
}

TEST_CASE("parameter sets are symmetric in z -> -z and bounded in size") {
  std::mt19937_64 rng(2718);
  for (int i = 0; i < 200; ++i) {
    BigRat z = random_rat(rng, 40);
    SzReport a = compute_Sz(z);
    SzReport b = compute_Sz(-z);
    CHECK(a.values == b.values);
    CHECK(a.values.size() >= 3);
    CHECK(a.values.size() <= 7);
  }
}

TEST_CASE("parametrized points land in the advertised orbit types") {
  std::mt19937_64 rng(161803);
  auto excluded = [](Family f, const BigRat& a) {
    switch (f) {
      case Family::t30: return a == BigRat(0) || a == BigRat(-1);
      case Family::t12: return a == BigRat(1) || a == BigRat(-1);
      case Family::t22: return a.is_zero() || a == BigRat(1) || a == BigRat(-1);
      default: return true;
    }
  };
  struct Expect {
    Family f;
    int m, n;
  };
  for (Expect e : {Expect{Family::t30, 3, 0}, Expect{Family::t12, 1, 2},
                   Expect{Family::t22, 2, 2}}) {
    int done = 0;
    while (done < 200) {
      BigRat a = random_rat(rng, 25);
      if (excluded(e.f, a)) continue;
      FamilyPoint p = eval_family(e.f, a);
      OrbitVerdict v = decide_orbit(p.z, p.t);
      CHECK(v.kind == OrbitKind::preperiodic);
      CHECK(v.period_m == e.m);
      CHECK(v.tail_n == e.n);
      ++done;
    }
  }
}

TEST_CASE("the t-parametrizations have their exact symmetries") {
  std::mt19937_64 rng(31415);
  const BigRat one(1);
  int done = 0;
  while (done < 200) {
    BigRat a = random_rat(rng, 30);
    if (a.is_zero() || a == one || a == -one) continue;
    ++done;

    // h30(a) = h30(-1/(a+1)) = h30(-(a+1)/a); the images avoid the excluded set
    BigRat h = eval_family(Family::t30, a).t;
    CHECK(h == eval_family(Family::t30, -one / (a + one)).t);
    CHECK(h == eval_family(Family::t30, -(a + one) / a).t);

    CHECK(eval_family(Family::t12, a).t == eval_family(Family::t12, -a).t);
    CHECK(eval_family(Family::t22, a).t == eval_family(Family::t22, -one / a).t);
  }
}

TEST_CASE("intersections of parameter sets") {
  CHECK(intersect_Sz(Q("3/4"), Q("5/4")) ==
        rats({"-45/16", "-37/16", "-29/16", "-21/16", "-13/16", "-5/16"}));
  CHECK(intersect_Sz(Q("0"), Q("1")) == rats({"-2", "-1", "0"}));
  CHECK(intersect_Sz(Q("1/2"), Q("1")).empty());
  CHECK(code_of([] { intersect_Sz(Q("1/2"), Q("-1/2")); }) == errc::same_orbit_pair);
  CHECK(code_of([] { intersect_Sz(Q("1"), Q("1")); }) == errc::same_orbit_pair);
}
