#pragma once

#include <string>

#include "preper/error.hpp"
#include "preper/rational.hpp"

namespace preper {

// A point of P^1(Q) stored as a coprime pair (a : b) with value a/b.
// Normalized so that b > 0, or (a, b) = (1, 0) for the point at infinity.
struct P1Point {
  BigInt a{0};
  BigInt b{1};

  P1Point() = default;

  P1Point(BigInt num, BigInt den) : a(std::move(num)), b(std::move(den)) {
    if (a == 0 && b == 0) fail(errc::usage, "(0 : 0) is not a point of P^1");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g > 1) {
      a /= g;
      b /= g;
    }
    if (b < 0) {
      a = -a;
      b = -b;
    } else if (b == 0 && a < 0) {
      a = -a;
    }
  }

  explicit P1Point(const BigRat& v) : P1Point(v.num(), v.den()) {}

  static P1Point infinity() { return P1Point(BigInt(1), BigInt(0)); }

  // Accepts "n", "n/d", or "oo" for the point at infinity.
  static P1Point parse(const std::string& s) {
    if (s == "oo") return infinity();
    return P1Point(BigRat::parse(s));
  }

  bool is_infinity() const { return b == 0; }

  BigRat value() const {
    if (is_infinity()) fail(errc::usage, "point at infinity has no affine value");
    return BigRat(a, b);
  }

  BigInt height() const {
    BigInt ha = a < 0 ? BigInt(-a) : a;
    return ha > b ? ha : b;  // infinity is (1 : 0), height 1
  }

  std::string str() const {
    if (is_infinity()) return "oo";
    if (b == 1) return a.get_str();
    return a.get_str() + "/" + b.get_str();
  }

  bool operator==(const P1Point& o) const { return a == o.a && b == o.b; }
  bool operator!=(const P1Point& o) const { return !(*this == o); }

  // Finite points by value, the point at infinity last.
  bool operator<(const P1Point& o) const {
    if (is_infinity()) return false;
    if (o.is_infinity()) return true;
    return a * o.b < o.a * b;
  }
};

struct P1xP1Point {
  P1Point x;
  P1Point y;

  bool operator==(const P1xP1Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const P1xP1Point& o) const { return !(*this == o); }
  bool operator<(const P1xP1Point& o) const {
    if (x != o.x) return x < o.x;
    return y < o.y;
  }

  std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

// A point of P^1(F_p), normalized to (u : 1) or (1 : 0). Primes here are
// small (the residue fits a machine word).
struct ResP1 {
  long u = 0;
  long v = 1;

  bool operator==(const ResP1& o) const { return u == o.u && v == o.v; }
  bool operator!=(const ResP1& o) const { return !(*this == o); }
  bool operator<(const ResP1& o) const {
    if (v != o.v) return v > o.v;  // finite first, (1 : 0) last
    return u < o.u;
  }

  std::string str() const {
    return "(" + std::to_string(u) + ":" + std::to_string(v) + ")";
  }
};

struct ResPoint {
  ResP1 x;
  ResP1 y;

  bool operator==(const ResPoint& o) const { return x == o.x && y == o.y; }
  bool operator!=(const ResPoint& o) const { return !(*this == o); }
  bool operator<(const ResPoint& o) const {
    if (x != o.x) return x < o.x;
    return y < o.y;
  }

  std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

}  // namespace preper
