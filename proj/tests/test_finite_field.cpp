#include <random>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "preper/counting.hpp"
#include "preper/error.hpp"
#include "preper/fq.hpp"
#include "preper/lfunction.hpp"
#include "test_util.hpp"

using namespace preper;
using testutil::code_of;

TEST_CASE("primality of 64-bit integers") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(104729));
  CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
  CHECK(!is_prime_u64(0));
  CHECK(!is_prime_u64(1));
  CHECK(!is_prime_u64(561));      // Carmichael
  CHECK(!is_prime_u64(341550071728321ull));  // strong pseudoprime to small bases
  CHECK(!is_prime_u64(18446744073709551615ull));
}

TEST_CASE("field contexts pick the first irreducible modulus, deterministically") {
  FqCtx f3(3, 1);
  CHECK(f3.modulus() == std::vector<long>{0, 1});  // x itself
  CHECK(f3.q() == 3);

  FqCtx f9(3, 2);
  CHECK(f9.modulus() == std::vector<long>{1, 0, 1});  // x^2 + 1, -1 not a square mod 3
  FqCtx f25(5, 2);
  CHECK(f25.modulus() == std::vector<long>{2, 0, 1});  // x^2 + 1 splits, x^2 + 2 not
  FqCtx f49(7, 2);
  CHECK(f49.modulus() == std::vector<long>{1, 0, 1});

  FqCtx again(5, 2);
  CHECK(again.modulus() == f25.modulus());

  CHECK(code_of([] { FqCtx(4, 1); }) == errc::not_prime);
  CHECK(code_of([] { FqCtx(2, 2); }) == errc::not_prime);
  CHECK(code_of([] { FqCtx(3, 0); }) == errc::bad_degree);
  CHECK(code_of([] { FqCtx(3, 7); }) == errc::bad_degree);
  CHECK(code_of([] { FqCtx(2147483647L, 2); }) == errc::usage);
}

TEST_CASE("field arithmetic satisfies the axioms") {
  for (auto [p, k] : {std::pair<long, int>{3, 3}, {7, 2}, {5, 1}}) {
    FqCtx ctx(p, k);
    const unsigned long long q = ctx.q();

    // index enumeration is a bijection
    for (unsigned long long i = 0; i < q; ++i)
      CHECK(ctx.to_index(ctx.from_index(i)) == i);

    std::mt19937_64 rng(1000 * p + k);
    std::uniform_int_distribution<unsigned long long> pick(0, q - 1);
    for (int iter = 0; iter < 200; ++iter) {
      FqElem a = ctx.from_index(pick(rng));
      FqElem b = ctx.from_index(pick(rng));
      FqElem c = ctx.from_index(pick(rng));

      CHECK(ctx.add(a, b) == ctx.add(b, a));
      CHECK(ctx.mul(a, b) == ctx.mul(b, a));
      CHECK(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
      CHECK(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
      CHECK(ctx.add(a, ctx.neg(a)) == ctx.zero());
      CHECK(ctx.sub(a, b) == ctx.add(a, ctx.neg(b)));
      CHECK(ctx.mul(a, ctx.one()) == a);

      if (!ctx.is_zero(a)) {
        CHECK(ctx.mul(a, ctx.inv(a)) == ctx.one());
        CHECK(ctx.pow(a, q - 1) == ctx.one());
      }

      // Frobenius is the p-power map and a field automorphism
      CHECK(ctx.frobenius(a) == ctx.pow(a, static_cast<unsigned long long>(p)));
      CHECK(ctx.frobenius(ctx.add(a, b)) ==
            ctx.add(ctx.frobenius(a), ctx.frobenius(b)));
      CHECK(ctx.frobenius(ctx.mul(a, b)) ==
            ctx.mul(ctx.frobenius(a), ctx.frobenius(b)));
    }

    CHECK(code_of([&] { ctx.inv(ctx.zero()); }) == errc::usage);
  }
}

TEST_CASE("projective root counts of binary forms") {
  FqCtx f3(3, 1);
  // y1 y0 (y1 - y0): roots (0:1), (1:1), and (1:0) since the y1^3 term is absent
  std::vector<FqElem> f = {f3.zero(), f3.from_int(-1), f3.one(), f3.zero()};
  CHECK(count_roots_binary_form(f, f3) == 3);

  // y1^2 + y0^2 has no roots over F_3
  std::vector<FqElem> g = {f3.one(), f3.zero(), f3.one()};
  CHECK(count_roots_binary_form(g, f3) == 0);

  FqCtx f5(5, 1);
  // y1^3 - y1 y0^2 = y1 (y1 - y0)(y1 + y0)
  std::vector<FqElem> h = {f5.zero(), f5.from_int(-1), f5.zero(), f5.one()};
  CHECK(count_roots_binary_form(h, f5) == 3);

  std::vector<FqElem> zero3 = {f3.zero(), f3.zero()};
  CHECK(code_of([&] { count_roots_binary_form(zero3, f3); }) == errc::zero_form);
  std::vector<FqElem> too_big(5, f3.one());
  CHECK(code_of([&] { count_roots_binary_form(too_big, f3); }) == errc::usage);
}

TEST_CASE("both root-counting routes agree on random forms") {
  std::mt19937_64 rng(60601);
  for (auto [p, k] : {std::pair<long, int>{7, 1}, {7, 2}, {3, 3}}) {
    FqCtx ctx(p, k);
    std::uniform_int_distribution<unsigned long long> pick(0, ctx.q() - 1);
    for (int iter = 0; iter < 60; ++iter) {
      std::vector<FqElem> f(4);
      bool nonzero = false;
      for (auto& coef : f) {
        coef = ctx.from_index(pick(rng));
        nonzero = nonzero || !ctx.is_zero(coef);
      }
      if (!nonzero) f[1] = ctx.one();
      int brute = count_roots_binary_form(f, ctx, ~0ull);
      int gcd_route = count_roots_binary_form(f, ctx, 0);
      CHECK(brute == gcd_route);
    }
  }
}

TEST_CASE("point counts over small fields, both methods") {
  CountRecord chart = count_points(3, 1, CountMethod::chart_root_count);
  CountRecord naive = count_points(3, 1, CountMethod::naive_enumeration);
  CHECK(chart.n == 9);
  CHECK(naive.n == 9);
  CHECK(chart.method == CountMethod::chart_root_count);
  CHECK(naive.method == CountMethod::naive_enumeration);

  for (auto [p, k] : {std::pair<long, int>{5, 1}, {7, 1}, {3, 2}, {3, 3}}) {
    CHECK(count_points(p, k, CountMethod::chart_root_count).n ==
          count_points(p, k, CountMethod::naive_enumeration).n);
  }
}

TEST_CASE("counts respect the Weil window at good primes") {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    long long n = static_cast<long long>(count_points(p, 1).n);
    long long dev = n - (p + 1);
    CHECK(dev * dev <= 64 * p);  // |N - (p+1)| <= 2g sqrt(p), g = 4
  }
}

TEST_CASE("enumeration budgets bound the field size") {
  CHECK(code_of([] { count_points(101, 4); }) == errc::budget_exceeded);
  CHECK(code_of([] {
          count_points(7, 6, CountMethod::naive_enumeration);
        }) == errc::budget_exceeded);
  CHECK(code_of([] { count_points(2, 1); }) == errc::not_prime);
  // counting itself is agnostic to good/bad reduction; 23 and 29 still count
  CHECK(count_points(23, 1).n > 0);
}

TEST_CASE("count records serialize as JSON lines") {
  CountRecord r = count_points(3, 1);
  auto doc = nlohmann::json::parse(count_record_json(r));
  CHECK(doc["p"] == 3);
  CHECK(doc["k"] == 1);
  CHECK(doc["N"] == 9);
  CHECK(doc["method"] == "ChartRootCount");
  CHECK(doc["millis"].is_number());
}

TEST_CASE("Weierstrass point counts: Hasse bound and bad reduction") {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    EPointCount e = count_points_on_E(p, kEllipticQuotientModel);
    CHECK(e.p == p);
    CHECK(static_cast<long long>(e.n) == p + 1 - e.a_p);
    CHECK(e.a_p * e.a_p <= 4 * p);
  }
  CHECK(code_of([] {
          count_points_on_E(29, kEllipticQuotientModel);
        }) == errc::bad_reduction);
  CHECK(code_of([] {
          count_points_on_E(9, kEllipticQuotientModel);
        }) == errc::not_prime);
}
