#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "preper/curves.hpp"
#include "preper/error.hpp"
#include "preper/fq.hpp"
#include "preper/search.hpp"
#include "test_util.hpp"

using namespace preper;
using testutil::code_of;
using testutil::pt;
using testutil::Q;

namespace {

const long kGoodOddPrimesTo50[] = {3, 5, 7, 11, 13, 17, 19, 31, 37, 41, 43, 47};

}  // namespace

TEST_CASE("registry shape: six curves, bidegrees, genus") {
  const auto& regs = registry();
  REQUIRE(regs.size() == 6);

  const CurveId ids[] = {CurveId::C,  CurveId::C1, CurveId::C2,
                         CurveId::C3, CurveId::C4, CurveId::C5};
  const int d1s[] = {3, 2, 2, 3, 3, 3};
  const int d2s[] = {3, 2, 2, 2, 2, 3};
  const int genera[] = {4, 1, 1, 2, 2, 4};
  const size_t npoints[] = {9, 6, 4, 8, 8, 9};

  for (size_t i = 0; i < 6; ++i) {
    const CurveRecord& rec = regs[i];
    CHECK(rec.id == ids[i]);
    CHECK(rec.form.d1() == d1s[i]);
    CHECK(rec.form.d2() == d2s[i]);
    CHECK(rec.genus == genera[i]);
    CHECK(rec.genus == (rec.form.d1() - 1) * (rec.form.d2() - 1));
    CHECK(rec.expected_points.size() == npoints[i]);
    CHECK(std::is_sorted(rec.expected_points.begin(), rec.expected_points.end()));
    for (const P1xP1Point& P : rec.expected_points) CHECK(contains(rec, P));
  }

  CHECK(curve_name(CurveId::C3) == "C3");
  CHECK(parse_curve_id("C") == CurveId::C);
  CHECK(parse_curve_id("C5") == CurveId::C5);
  CHECK(code_of([] { parse_curve_id("C7"); }) == errc::unknown_curve);
  CHECK(code_of([] { parse_curve_id(""); }) == errc::unknown_curve);
}

TEST_CASE("the first auxiliary curve has exactly four points at infinity") {
  std::set<P1xP1Point> at_inf;
  for (const P1xP1Point& P : curve(CurveId::C1).expected_points)
    if (P.x.is_infinity() || P.y.is_infinity()) at_inf.insert(P);
  std::set<P1xP1Point> want = {pt("oo", "0"), pt("oo", "-1"), pt("0", "oo"),
                               pt("-1", "oo")};
  CHECK(at_inf == want);
}

TEST_CASE("membership of individual points") {
  CHECK(contains(curve(CurveId::C), pt("oo", "1")));
  CHECK(contains(curve(CurveId::C4), pt("-1/2", "3")));
  CHECK(!contains(curve(CurveId::C), pt("2", "2")));
  CHECK(!contains(curve(CurveId::C2), pt("0", "0")));
}

TEST_CASE("the central curve is symmetric under swapping the factors") {
  CHECK(curve(CurveId::C).form.transposed() == curve(CurveId::C).form);
}

TEST_CASE("negation twist: the last curve is the central one at (-a, -b)") {
  CHECK(c5_symmetry_check() == -1);
  CHECK(negation_twist_sign(curve(CurveId::C5).form, curve(CurveId::C).form) == -1);

  // corollary on the known points: (a, b) on C5 iff (-a, -b) on C
  for (const P1xP1Point& P : curve(CurveId::C5).expected_points) {
    P1xP1Point neg{P1Point(-P.x.a, P.x.b), P1Point(-P.y.a, P.y.b)};
    CHECK(contains(curve(CurveId::C), neg));
  }

  // negative control: one flipped coefficient must break the identity
  BiForm mutated = curve(CurveId::C5).form;
  mutated.set_coeff(0, 1, mutated.coeff(0, 1) + 1);
  CHECK(code_of([&] { negation_twist_sign(mutated, curve(CurveId::C).form); }) ==
        errc::identity_fails);

  // the central curve is not its own negation twist (mixed parities)
  CHECK(code_of([] {
          negation_twist_sign(curve(CurveId::C).form, curve(CurveId::C).form);
        }) == errc::identity_fails);
}

TEST_CASE("exhaustive search reproduces the catalogued points") {
  for (const CurveRecord& rec : registry()) {
    auto at10 = search(rec, 10);
    auto at100 = search(rec, 100);
    CHECK(at10 == rec.expected_points);
    CHECK(at100 == rec.expected_points);
    // monotone: everything found low stays found high
    for (const P1xP1Point& P : at10)
      CHECK(std::binary_search(at100.begin(), at100.end(), P));
  }
  CHECK(code_of([] { search(curve(CurveId::C), 0); }) == errc::usage);
  CHECK(code_of([] { search(curve(CurveId::C), 200000); }) == errc::budget_exceeded);
}

TEST_CASE("coincidence spotchecks on auxiliary curve points") {
  SUBCASE("(2, 5) on the cubic-quadratic curve certifies z = 5/12 twice") {
    SpotcheckReport r = coincidence_spotcheck(curve(CurveId::C3), pt("2", "5"));
    CHECK(!r.degenerate);
    CHECK(r.family_x == Family::t30);
    CHECK(r.family_y == Family::t12);
    CHECK(r.z == Q("5/12"));
    CHECK(r.t_x == Q("-301/144"));
  }
  SUBCASE("(-1/2, 3) certifies z = 5/4") {
    SpotcheckReport r = coincidence_spotcheck(curve(CurveId::C4), pt("-1/2", "3"));
    CHECK(!r.degenerate);
    CHECK(r.family_x == Family::t30);
    CHECK(r.family_y == Family::t22);
    CHECK(r.z == Q("5/4"));
  }
  SUBCASE("excluded parameters degenerate") {
    SpotcheckReport r = coincidence_spotcheck(curve(CurveId::C1), pt("-1", "0"));
    CHECK(r.degenerate);
  }
  SUBCASE("coordinates at infinity degenerate") {
    SpotcheckReport r = coincidence_spotcheck(curve(CurveId::C1), pt("oo", "0"));
    CHECK(r.degenerate);
  }
  SUBCASE("points off the curve are rejected") {
    CHECK(code_of([] {
            coincidence_spotcheck(curve(CurveId::C3), pt("2", "2"));
          }) == errc::not_on_curve);
  }
  SUBCASE("the central curve encodes no parametrization pair") {
    CHECK(code_of([] {
            coincidence_spotcheck(curve(CurveId::C), pt("0", "0"));
          }) == errc::usage);
  }
}

TEST_CASE("reduction of projective points mod p") {
  ResPoint r = reduce_mod_p(pt("oo", "1"), 3);
  CHECK(r.x == ResP1{1, 0});
  CHECK(r.y == ResP1{1, 1});

  r = reduce_mod_p(pt("2", "-1/5"), 3);
  CHECK(r.x == ResP1{2, 1});
  CHECK(r.y == ResP1{1, 1});  // -1/5 = 2/1 mod 3 ... -1 * inv(5) = 2 * 2 = 4 = 1

  r = reduce_mod_p(pt("1", "0"), 2);
  CHECK(r.x == ResP1{1, 1});
  CHECK(r.y == ResP1{0, 1});
}

TEST_CASE("reduction lands on the curve mod every good odd prime up to 50") {
  const CurveRecord& c = curve(CurveId::C);
  for (long p : kGoodOddPrimesTo50) {
    for (const P1xP1Point& P : c.expected_points) {
      ResPoint r = reduce_mod_p(P, p);
      P1xP1Point lift{P1Point(BigInt(r.x.u), BigInt(r.x.v)),
                      P1Point(BigInt(r.y.u), BigInt(r.y.v))};
      BigInt val = c.form.eval(lift);
      CHECK(mpz_fdiv_ui(val.get_mpz_t(), static_cast<unsigned long>(p)) == 0);
    }
  }
}

TEST_CASE("residue saturation at 3, honest reporting elsewhere") {
  ChabautyReport r3 = chabauty_residue_check(3);
  CHECK(r3.distinct);
  CHECK(r3.count == 9);
  CHECK(r3.saturated);

  ChabautyReport r5 = chabauty_residue_check(5);
  CHECK(r5.p == 5);
  CHECK(r5.saturated == (r5.distinct && r5.count == 9));

  CHECK(code_of([] { chabauty_residue_check(29); }) == errc::bad_prime);
  CHECK(code_of([] { chabauty_residue_check(23); }) == errc::bad_prime);
  CHECK(code_of([] { chabauty_residue_check(2); }) == errc::bad_prime);
  CHECK(code_of([] { chabauty_residue_check(9); }) == errc::not_prime);
}

TEST_CASE("singular fibers: one node at 23, a conjugate pair at 29") {
  CHECK(singular_points_mod_p(23, 1).size() == 1);
  CHECK(singular_points_mod_p(29, 1).empty());
  CHECK(singular_points_mod_p(3, 1).empty());
  CHECK(singular_points_mod_p(7, 1).empty());

  auto nodes = singular_points_mod_p(29, 2);
  REQUIRE(nodes.size() == 2);

  // the two nodes are genuinely quadratic: Frobenius swaps them
  FqCtx ctx(29, 2);
  auto frob = [&](const FqP1& c) {
    FqP1 out = c;
    if (!c.infinite) out.a = ctx.frobenius(c.a);
    return out;
  };
  FqPoint img0{frob(nodes[0].x), frob(nodes[0].y)};
  CHECK(img0 == nodes[1]);
  FqPoint img1{frob(nodes[1].x), frob(nodes[1].y)};
  CHECK(img1 == nodes[0]);

  CHECK(code_of([] { singular_points_mod_p(23, 3); }) == errc::bad_degree);
}

TEST_CASE("coordinate enumeration helpers") {
  // Farey order 5: the classical eleven fractions
  auto f5 = farey_sequence(5);
  REQUIRE(f5.size() == 11);
  CHECK(f5.front() == std::pair<long, long>(0, 1));
  CHECK(f5[1] == std::pair<long, long>(1, 5));
  CHECK(f5[5] == std::pair<long, long>(1, 2));
  CHECK(f5.back() == std::pair<long, long>(1, 1));

  auto pts1 = p1_points_up_to_height(1);
  CHECK(pts1.size() == 4);  // 0, 1, -1, oo

  auto pts2 = p1_points_up_to_height(2);
  CHECK(pts2.size() == 8);  // adds 2, -2, 1/2, -1/2
  CHECK(std::is_sorted(pts2.begin(), pts2.end()));
  for (const P1Point& P : pts2) CHECK(P.height() <= 2);
  CHECK(std::count(pts2.begin(), pts2.end(), P1Point::infinity()) == 1);
}

TEST_CASE("registry export parses and matches the in-memory registry") {
  auto doc = nlohmann::json::parse(registry_json());
  REQUIRE(doc.contains("curves"));
  REQUIRE(doc["curves"].size() == 6);
  CHECK(doc["curves"][0]["id"] == "C");
  CHECK(doc["curves"][0]["bidegree"] == nlohmann::json::array({3, 3}));
  CHECK(doc["curves"][0]["expected_points"].size() == 9);
  CHECK(doc["curves"][3]["id"] == "C3");
  CHECK(doc["curves"][3]["genus"] == 2);
}
