#include "preper/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "preper/error.hpp"
#include "preper/intpoly.hpp"

namespace preper {

OrbitVerdict decide_orbit(const BigRat& z, const BigRat& t) {
  OrbitVerdict out;

  // A rational cycle forces den(t) to be a perfect square, so a non-square
  // denominator rules out preperiodicity of every rational starting point.
  BigInt dt = t.den();
  if (!mpz_perfect_square_p(dt.get_mpz_t())) {
    out.kind = OrbitKind::divergent;
    out.reason = DivergenceReason::nonsquare_denominator_of_t;
    out.orbit = {z};
    out.steps = 0;
    return out;
  }
  BigInt v;
  mpz_sqrt(v.get_mpz_t(), dt.get_mpz_t());

  // Candidates that can still be preperiodic have denominator dividing v and
  // absolute value at most |t| + 1; there are at most 2*v*(ceil(|t|)+1) + 1
  // of them, so a verdict fires within the bound below.
  const BigRat escape = t.abs() + BigRat(1);
  BigInt bound = 2 * v * (t.ceil_abs() + 1) + 2;

  std::map<BigRat, int> first_seen;
  BigRat cur = z;
  for (BigInt k = 0; k <= bound; ++k) {
    int ki = static_cast<int>(k.get_si());
    if (auto it = first_seen.find(cur); it != first_seen.end()) {
      out.kind = OrbitKind::preperiodic;
      out.tail_n = it->second;
      out.period_m = ki - it->second;
      out.steps = ki;
      return out;
    }
    if (!mpz_divisible_p(v.get_mpz_t(), cur.den().get_mpz_t())) {
      out.kind = OrbitKind::divergent;
      out.reason = DivergenceReason::denominator_violation;
      out.orbit.push_back(cur);
      out.steps = ki;
      return out;
    }
    if (cur.abs() > escape) {
      out.kind = OrbitKind::divergent;
      out.reason = DivergenceReason::archimedean_escape;
      out.orbit.push_back(cur);
      out.steps = ki;
      return out;
    }
    first_seen.emplace(cur, ki);
    out.orbit.push_back(cur);
    cur = step(cur, t);
  }
  fail(errc::internal_inconsistency, "orbit of " + z.str() + " under t=" + t.str() +
                                         " exceeded its termination bound");
}

std::vector<BigRat> compute_Tz(const BigRat& z) {
  BigRat mz2 = -(z * z);
  std::vector<BigRat> out = {mz2 + z, mz2 - z, mz2 + z - BigRat(1), mz2 - z - BigRat(1)};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

const BigRat kOne(1);
const BigRat kTwo(2);

bool excluded(Family f, const BigRat& a) {
  switch (f) {
    case Family::t30:
      return a == BigRat(-1) || a.is_zero();
    case Family::t12:
      return a == kOne || a == BigRat(-1);
    case Family::t22:
      return a.is_zero() || a == kOne || a == BigRat(-1);
    default:
      return true;
  }
}

}  // namespace

FamilyPoint eval_family(Family family, const BigRat& a) {
  if (family == Family::t32) fail(errc::usage, "the isolated pair has no parametrization");
  if (excluded(family, a))
    fail(errc::excluded_parameter, "parameter " + a.str() + " is excluded for this family");
  BigRat a2 = a * a;
  switch (family) {
    case Family::t30: {
      BigRat a3 = a2 * a;
      BigRat z = (a3 - a - kOne) / (kTwo * a * (a + kOne));
      BigRat num = a3 * a3 + kTwo * a3 * a2 + BigRat(4) * a2 * a2 + BigRat(8) * a3 +
                   BigRat(9) * a2 + BigRat(4) * a + kOne;
      BigRat den = BigRat(4) * a2 * (a + kOne) * (a + kOne);
      return {z, -(num / den)};
    }
    case Family::t12: {
      BigRat d = a2 - kOne;
      return {kTwo * a / d, -(kTwo * (a2 + kOne)) / (d * d)};
    }
    case Family::t22: {
      BigRat d = a2 - kOne;
      BigRat num = a2 * a2 + kTwo * a2 * a + kTwo * a2 - kTwo * a + kOne;
      return {(a2 + kOne) / d, -(num / (d * d))};
    }
    default:
      fail(errc::usage, "unreachable");
  }
}

std::vector<FamilyWitness> family_witnesses(const BigRat& z) {
  std::vector<FamilyWitness> out;
  std::set<BigRat> seen;
  auto push = [&](Family f, std::optional<BigRat> a, int sign, const BigRat& t) {
    if (seen.insert(t).second) out.push_back({f, std::move(a), sign, t});
  };

  // Entering a 3-cycle directly, for z itself (sign +1) and for -z (sign -1;
  // that certifies z entering a 3-cycle after one step, and S_z = S_{-z}).
  for (int sign : {1, -1}) {
    BigRat w = sign == 1 ? z : -z;
    // g30(a) = w cleared of denominators: q a^3 - 2p a^2 - (q + 2p) a - q.
    BigInt p = w.num(), q = w.den();
    IntPolyUni cubic({-q, -(q + 2 * p), -2 * p, q});
    for (const BigRat& a : rational_roots(cubic)) {
      if (excluded(Family::t30, a)) continue;
      push(Family::t30, a, sign, eval_family(Family::t30, a).t);
    }
  }

  // Hitting a fixed point after two steps. g12 is odd and h12 even, so the
  // sign of z never adds witnesses; z = 0 degenerates to the single pair
  // a = 0, t = -2.
  if (z.is_zero()) {
    push(Family::t12, BigRat(0), 1, BigRat(-2));
  } else {
    // g12(a) = z cleared: p a^2 - 2q a - p.
    BigInt p = z.num(), q = z.den();
    IntPolyUni quad({-p, -2 * q, p});
    for (const BigRat& a : rational_roots(quad)) {
      if (excluded(Family::t12, a)) continue;
      push(Family::t12, a, 1, eval_family(Family::t12, a).t);
    }
  }

  // Hitting a 2-cycle after two steps: g22(a) = w iff a^2 = (p+q)/(p-q).
  for (int sign : {1, -1}) {
    BigRat w = sign == 1 ? z : -z;
    BigInt p = w.num(), q = w.den();
    if (p == q) continue;  // g22 never takes the value 1
    if (auto s = sqrt_rat(BigRat(p + q, p - q))) {
      for (const BigRat& a : {*s, -*s}) {
        if (excluded(Family::t22, a)) continue;
        push(Family::t22, a, sign, eval_family(Family::t22, a).t);
      }
    }
  }

  // The isolated pair: z = +-3/4 enters a 3-cycle after two steps.
  if (z == BigRat(3, 4) || z == BigRat(-3, 4)) push(Family::t32, std::nullopt, 1, BigRat(-29, 16));

  return out;
}

SzReport compute_Sz(const BigRat& z) {
  SzReport rep;
  rep.z = z;
  rep.tz = compute_Tz(z);
  rep.extras = family_witnesses(z);

  std::set<BigRat> values(rep.tz.begin(), rep.tz.end());
  for (const auto& w : rep.extras) {
    if (values.count(w.t))
      fail(errc::internal_inconsistency, "family witness t duplicates a one-step value");
    values.insert(w.t);
  }
  rep.values.assign(values.begin(), values.end());

  for (const BigRat& t : rep.values)
    if (decide_orbit(z, t).kind != OrbitKind::preperiodic)
      fail(errc::internal_inconsistency,
           "claimed member t=" + t.str() + " of S_z failed the orbit check for z=" + z.str());

  // Case analysis for #S_z; the handful of z with extra coincidences are
  // pinned explicitly, everything else is classified by its witness profile.
  auto is_one_of = [&](std::initializer_list<BigRat> zs) {
    for (const auto& w : zs)
      if (z == w || z == -w) return true;
    return false;
  };
  auto all_from = [&](std::initializer_list<Family> fams) {
    for (const auto& w : rep.extras)
      if (std::find(fams.begin(), fams.end(), w.family) == fams.end()) return false;
    return true;
  };
  if (is_one_of({BigRat(0), BigRat(1, 2)}))
    rep.theorem_case = 1;
  else if (is_one_of({BigRat(5, 12), BigRat(3, 4), BigRat(5, 4)}))
    rep.theorem_case = 4;
  else if (rep.extras.size() == 1 && all_from({Family::t30}))
    rep.theorem_case = 2;
  else if (rep.extras.size() == 2 && all_from({Family::t12, Family::t22}))
    rep.theorem_case = 3;
  else
    rep.theorem_case = 5;

  static const size_t case_size[6] = {0, 3, 5, 6, 7, 4};
  if (rep.values.size() != case_size[rep.theorem_case])
    fail(errc::internal_inconsistency, "S_z size does not match its case arithmetic for z=" +
                                           z.str());
  return rep;
}

std::vector<BigRat> intersect_Sz(const BigRat& z1, const BigRat& z2) {
  if (z1 == z2 || z1 == -z2)
    fail(errc::same_orbit_pair, "z and -z share every orbit; the intersection is all of S_z");
  auto a = compute_Sz(z1).values;
  auto b = compute_Sz(z2).values;
  std::vector<BigRat> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace preper
