#pragma once

#include <optional>
#include <vector>

#include "preper/rational.hpp"

namespace preper {

// Orbits of z under z -> z^2 + t over Q, decided exactly.

enum class OrbitKind { preperiodic, divergent };

enum class DivergenceReason {
  none,
  archimedean_escape,          // |z_k| > |t| + 1, so |z_k| grows forever
  denominator_violation,       // den(z_k) does not divide sqrt(den(t))
  nonsquare_denominator_of_t,  // den(t) is not a perfect square: no rational cycles at all
};

struct OrbitVerdict {
  OrbitKind kind = OrbitKind::divergent;
  DivergenceReason reason = DivergenceReason::none;
  // Set for preperiodic verdicts: the orbit enters an m-cycle after exactly n steps.
  int period_m = 0;
  int tail_n = 0;
  std::vector<BigRat> orbit;  // distinct orbit values, in visit order
  long steps = 0;             // iterations executed before the verdict fired
};

inline BigRat step(const BigRat& z, const BigRat& t) { return z * z + t; }

// Exact trichotomy: terminates within 2*v*(ceil(|t|)+1) + 2 steps, where
// v = sqrt(den(t)) when den(t) is a perfect square.
OrbitVerdict decide_orbit(const BigRat& z, const BigRat& t);

// clang-format off
// The four t-values making z enter a cycle within one step:
// {-z^2+z, -z^2-z, -z^2+z-1, -z^2-z-1}, deduplicated, ascending.
// clang-format on
std::vector<BigRat> compute_Tz(const BigRat& z);

// One-parameter families covering every other way a rational z can be
// preperiodic: enter a 3-cycle directly (t30), hit a fixed point after two
// steps (t12), hit a 2-cycle after two steps (t22), plus the isolated pair
// t32 (z = +-3/4 entering a 3-cycle after two steps, t = -29/16).
enum class Family { t30, t12, t22, t32 };

constexpr const char* family_name(Family f) {
  switch (f) {
    case Family::t30: return "t30";
    case Family::t12: return "t12";
    case Family::t22: return "t22";
    case Family::t32: return "t32";
  }
  return "?";
}

struct FamilyPoint {
  BigRat z;
  BigRat t;
};

// g/h of the family at parameter a; throws errc::excluded_parameter on the
// family's excluded set (t30: {-1,0}; t12: {1,-1}; t22: {0,1,-1}).
// t32 has no parametrization and is rejected with errc::usage.
FamilyPoint eval_family(Family family, const BigRat& a);

struct FamilyWitness {
  Family family;
  std::optional<BigRat> a;  // absent for t32
  int sign = 1;             // the witness certifies sign*z on the family curve
  BigRat t;
};

// Every t beyond compute_Tz(z) for which z is preperiodic, each justified by
// a family witness. Distinct parameters with equal t collapse (dedup key is
// the t-value). Deterministic order: families as declared, sign +1 before -1,
// parameters by (den, num).
std::vector<FamilyWitness> family_witnesses(const BigRat& z);

struct SzReport {
  BigRat z;
  std::vector<BigRat> tz;
  std::vector<FamilyWitness> extras;
  std::vector<BigRat> values;  // full S_z, ascending
  int theorem_case = 0;        // 1..5, the case arithmetic behind #S_z
};

// S_z = { t in Q : z is preperiodic for z^2 + t }, with provenance for every
// member and a consistency re-check of each one through decide_orbit.
SzReport compute_Sz(const BigRat& z);

// Sorted intersection of S_z1 and S_z2; z1 = +-z2 is rejected with
// errc::same_orbit_pair since those share all orbits.
std::vector<BigRat> intersect_Sz(const BigRat& z1, const BigRat& z2);

}  // namespace preper
