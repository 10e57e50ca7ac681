#pragma once

#include <string>
#include <vector>

#include "preper/biform.hpp"
#include "preper/dynamics.hpp"
#include "preper/fq.hpp"
#include "preper/p1.hpp"

namespace preper {

enum class CurveId { C, C1, C2, C3, C4, C5 };

std::string curve_name(CurveId id);
CurveId parse_curve_id(const std::string& s);  // throws unknown_curve

struct CurveRecord {
  CurveId id;
  BiForm form;
  std::vector<P1xP1Point> expected_points;  // canonically ordered
  int genus;                                // of the smooth closure
  std::string provenance;
};

// The six curves, in id order. Built once; every expected point is checked
// against its form at first use.
const std::vector<CurveRecord>& registry();
const CurveRecord& curve(CurveId id);

// True iff the bihomogenized form vanishes at P.
bool contains(const CurveRecord& c, const P1xP1Point& P);

// All points of c with both coordinates of height <= H, by exhaustive
// fiberwise enumeration over Farey-ordered x-coordinates. Implemented in
// search.cpp.
std::vector<P1xP1Point> search(const CurveRecord& c, long height_bound);

// The sign s with f(a, b) = s * g(-a, -b) as an exact identity, i.e.
// f_ij = s * (-1)^(i+j) g_ij on the whole grid; identity_fails if neither
// sign works. Exposed separately so tests can feed a mutated grid.
int negation_twist_sign(const BiForm& f, const BiForm& g);

// Verifies the registry identity C5(a, b) = s * C(-a, -b) and returns s.
int c5_symmetry_check();

struct SpotcheckReport {
  bool degenerate = true;
  Family family_x = Family::t30;  // parametrization encoded by the x side
  Family family_y = Family::t30;  // parametrization encoded by the y side
  BigRat z;                       // common value g_x(a) = g_y(b)
  BigRat t_x;                     // h_x(a)
  BigRat t_y;                     // h_y(b)
};

// Evaluates the two parametrizations an auxiliary curve encodes at the
// coordinates of one of its catalogued points. Degenerate when a coordinate
// is at infinity or at an excluded parameter value.
SpotcheckReport coincidence_spotcheck(const CurveRecord& c, const P1xP1Point& P);

// Componentwise reduction of the coprime coordinate pairs mod p; always well
// defined, for any prime (including 2).
ResPoint reduce_mod_p(const P1xP1Point& P, long p);

struct ChabautyReport {
  long p = 0;
  bool distinct = false;        // the nine known points reduce injectively
  unsigned long long count = 0; // #C(F_p)
  bool saturated = false;       // distinct and count == 9
};

// Reduces the central curve's nine known points mod an odd prime of good
// reduction and counts #C(F_p); p in {2, 23, 29} is rejected.
ChabautyReport chabauty_residue_check(long p);

// A point of P^1(F_q) x P^1(F_q), each factor normalized to (a : 1) or
// (1 : 0).
struct FqP1 {
  FqElem a{};
  bool infinite = false;

  bool operator==(const FqP1& o) const {
    return infinite == o.infinite && (infinite || a == o.a);
  }
};

struct FqPoint {
  FqP1 x;
  FqP1 y;

  bool operator==(const FqPoint& o) const { return x == o.x && y == o.y; }
};

// All points of the central curve over F_{p^k} (k = 1 or 2, p odd) where the
// form and all four partial derivatives of its bihomogenization vanish, by
// exhaustive enumeration.
std::vector<FqPoint> singular_points_mod_p(long p, int k);

// The registry as a documented JSON document (bidegrees, coefficient grids,
// expected points, provenance).
std::string registry_json();

}  // namespace preper
