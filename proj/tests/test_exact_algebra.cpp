#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "preper/error.hpp"
#include "preper/intpoly.hpp"
#include "preper/rational.hpp"
#include "test_util.hpp"

using namespace preper;
using testutil::code_of;
using testutil::Q;

TEST_CASE("rationals normalize at construction") {
  CHECK(BigRat(2, 4) == BigRat(1, 2));
  CHECK(BigRat(1, -2) == BigRat(-1, 2));
  CHECK(BigRat(-3, -6) == BigRat(1, 2));
  CHECK(BigRat(0, 7) == BigRat(0));
  CHECK(BigRat(7, 1).is_integer());
  CHECK(BigRat(1, 2).den() == 2);
  CHECK(BigRat(-1, 2).num() == -1);
}

TEST_CASE("rational parsing and printing round-trip") {
  CHECK(Q("-29/16") == BigRat(-29, 16));
  CHECK(Q("5") == BigRat(5));
  CHECK(Q("-29/16").str() == "-29/16");
  CHECK(Q("4/8").str() == "1/2");
  CHECK(Q("-3").str() == "-3");
  CHECK(code_of([] { BigRat::parse("3/4/5"); }) == errc::usage);
  CHECK(code_of([] { BigRat::parse(""); }) == errc::usage);
  CHECK(code_of([] { BigRat::parse("a/2"); }) == errc::usage);
  CHECK(code_of([] { BigRat::parse("1/0"); }) == errc::usage);
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(Q("3/4") * Q("3/4") + Q("-29/16") == Q("-5/4"));
  CHECK(Q("1/3") + Q("1/6") == Q("1/2"));
  CHECK(Q("1/3") / Q("1/6") == Q("2"));
  CHECK(-Q("2/5") == Q("-2/5"));
  CHECK(Q("-7/2").abs() == Q("7/2"));
  CHECK(Q("-29/16").ceil_abs() == 2);
  CHECK(Q("3").ceil_abs() == 3);
  CHECK(Q("0").ceil_abs() == 0);
}

TEST_CASE("rational roots of integer cubics") {
  // 6a^3 - 5a^2 - 11a - 6 has the single rational root 2.
  auto r1 = rational_roots(IntPolyUni::from_longs({-6, -11, -5, 6}));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == BigRat(2));

  // 2a^3 - 3a^2 - 5a - 2 has none.
  CHECK(rational_roots(IntPolyUni::from_longs({-2, -5, -3, 2})).empty());

  // a^2 - 1 = (a - 1)(a + 1).
  auto r3 = rational_roots(IntPolyUni::from_longs({-1, 0, 1}));
  REQUIRE(r3.size() == 2);
  CHECK(r3[0] == BigRat(-1));
  CHECK(r3[1] == BigRat(1));

  CHECK(code_of([] { rational_roots(IntPolyUni{}); }) == errc::zero_polynomial);
}

TEST_CASE("root sets come back ordered by denominator then numerator") {
  // (a - 2)(2a - 1)(3a - 1) = 6a^3 - 17a^2 + 9a - 2... expand carefully:
  // (2a - 1)(3a - 1) = 6a^2 - 5a + 1; times (a - 2) = 6a^3 - 17a^2 + 11a - 2.
  auto r = rational_roots(IntPolyUni::from_longs({-2, 11, -17, 6}));
  REQUIRE(r.size() == 3);
  CHECK(r[0] == BigRat(2));      // den 1
  CHECK(r[1] == BigRat(1, 2));   // den 2
  CHECK(r[2] == BigRat(1, 3));   // den 3
}

TEST_CASE("planted roots are recovered exactly") {
  std::mt19937_64 rng(7071);
  std::uniform_int_distribution<long> small(-9, 9);
  std::uniform_int_distribution<long> dend(1, 9);
  std::uniform_int_distribution<int> nroots(1, 3);
  std::uniform_int_distribution<long> scale(1, 5);

  for (int iter = 0; iter < 60; ++iter) {
    int n = nroots(rng);
    std::vector<BigRat> roots;
    // product of (q a - p) over the planted roots p/q, times a constant
    std::vector<BigInt> poly = {BigInt(scale(rng))};
    for (int i = 0; i < n; ++i) {
      BigRat r(small(rng), dend(rng));
      roots.push_back(r);
      std::vector<BigInt> next(poly.size() + 1, BigInt(0));
      for (size_t j = 0; j < poly.size(); ++j) {
        next[j] += poly[j] * -r.num();
        next[j + 1] += poly[j] * r.den();
      }
      poly = std::move(next);
    }
    std::sort(roots.begin(), roots.end(), DenNumLess{});
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    auto found = rational_roots(IntPolyUni(poly));
    CHECK(found == roots);
  }
}

TEST_CASE("square roots in Q exist exactly for coordinatewise squares") {
  auto s = sqrt_rat(Q("25/16"));
  REQUIRE(s.has_value());
  CHECK(*s == Q("5/4"));

  CHECK(!sqrt_rat(Q("-7")).has_value());
  CHECK(!sqrt_rat(Q("6")).has_value());
  CHECK(!sqrt_rat(Q("2/9")).has_value());
  CHECK(!sqrt_rat(Q("4/3")).has_value());
  CHECK(sqrt_rat(Q("0")).value() == Q("0"));
  CHECK(sqrt_rat(Q("1")).value() == Q("1"));

  std::mt19937_64 rng(4242);
  for (int i = 0; i < 100; ++i) {
    BigRat r = testutil::random_rat(rng, 50);
    auto root = sqrt_rat(r * r);
    REQUIRE(root.has_value());
    CHECK(*root == r.abs());
  }
}
