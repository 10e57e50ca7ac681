#include "preper/curves.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "preper/counting.hpp"
#include "preper/error.hpp"

namespace preper {

namespace {

P1xP1Point pt(const char* x, const char* y) {
  return P1xP1Point{P1Point::parse(x), P1Point::parse(y)};
}

std::vector<P1xP1Point> sorted_points(std::vector<P1xP1Point> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<CurveRecord> build_registry() {
  std::vector<CurveRecord> out;

  // Central curve: x^3 y^2 + x^2 y^3 - x^3 y - x y^3 - x^2 y - x y^2
  //                + x^2 + 2xy + y^2 - x - y.
  out.push_back(CurveRecord{
      CurveId::C,
      BiForm(3, 3,
             {{3, 2, 1},
              {2, 3, 1},
              {3, 1, -1},
              {1, 3, -1},
              {2, 1, -1},
              {1, 2, -1},
              {2, 0, 1},
              {1, 1, 2},
              {0, 2, 1},
              {1, 0, -1},
              {0, 1, -1}}),
      sorted_points({pt("0", "0"), pt("0", "1"), pt("0", "oo"), pt("1", "0"),
                     pt("1", "1"), pt("1", "oo"), pt("oo", "0"), pt("oo", "1"),
                     pt("oo", "oo")}),
      4,
      "Genus-4 central curve. Substituting (a, b) = (-x, -y) and negating "
      "gives the C5 form, whose affine locus is g30(a) = -g30(b); so the "
      "rational points of this curve control when some z and -z both enter a "
      "3-cycle immediately. All nine points lie over {0, 1, oo}; confirmed by "
      "exhaustive search to height 1000."});

  // C1: a^2 b^2 + a^2 b + a b^2 + ab + a + b + 1, the nontrivial factor of
  // g30(a) = g30(b).
  out.push_back(CurveRecord{
      CurveId::C1,
      BiForm(2, 2,
             {{2, 2, 1},
              {2, 1, 1},
              {1, 2, 1},
              {1, 1, 1},
              {1, 0, 1},
              {0, 1, 1},
              {0, 0, 1}}),
      sorted_points({pt("-1", "0"), pt("-1", "oo"), pt("0", "-1"),
                     pt("0", "oo"), pt("oo", "-1"), pt("oo", "0")}),
      1,
      "Pairs of distinct parameters with g30(a) = g30(b): two genuinely "
      "different immediate-3-cycle structures on the same z (the diagonal "
      "a = b is factored out). Each of the six rational points has a "
      "coordinate at infinity or at an excluded parameter value, so none "
      "produces a coincidence."});

  // C2: a^2 b^2 - 2 a b^2 + a^2 - b^2 + 2a - 1, clearing g12(a) = g22(b).
  out.push_back(CurveRecord{
      CurveId::C2,
      BiForm(2, 2,
             {{2, 2, 1}, {1, 2, -2}, {2, 0, 1}, {0, 2, -1}, {1, 0, 2},
              {0, 0, -1}}),
      sorted_points({pt("-1", "-1"), pt("-1", "1"), pt("1", "-1"),
                     pt("1", "1")}),
      1,
      "Coincidence locus g12(a) = g22(b): the same z reaching a fixed point "
      "after two steps and a 2-cycle after two steps. All four rational "
      "points sit at excluded parameter values."});

  // C3: a^3 b^2 - a^3 - 4 a^2 b - a b^2 - 4ab - b^2 + a + 1, clearing
  // g30(a) = g12(b).
  out.push_back(CurveRecord{
      CurveId::C3,
      BiForm(3, 2,
             {{3, 2, 1},
              {3, 0, -1},
              {2, 1, -4},
              {1, 2, -1},
              {1, 1, -4},
              {0, 2, -1},
              {1, 0, 1},
              {0, 0, 1}}),
      sorted_points({pt("-1", "-1"), pt("-1", "1"), pt("0", "-1"),
                     pt("0", "1"), pt("2", "-1/5"), pt("2", "5"),
                     pt("oo", "-1"), pt("oo", "1")}),
      2,
      "Coincidence locus g30(a) = g12(b): z enters a 3-cycle immediately and "
      "hits a fixed point after two steps. The points (2, 5) and (2, -1/5) "
      "both give z = 5/12."});

  // C4: a^3 b^2 - 2 a^2 b^2 - a^3 - 3 a b^2 - 2 a^2 - b^2 - a + 1, clearing
  // g30(a) = g22(b).
  out.push_back(CurveRecord{
      CurveId::C4,
      BiForm(3, 2,
             {{3, 2, 1},
              {2, 2, -2},
              {3, 0, -1},
              {1, 2, -3},
              {2, 0, -2},
              {0, 2, -1},
              {1, 0, -1},
              {0, 0, 1}}),
      sorted_points({pt("-1", "-1"), pt("-1", "1"), pt("-1/2", "-3"),
                     pt("-1/2", "3"), pt("0", "-1"), pt("0", "1"),
                     pt("oo", "-1"), pt("oo", "1")}),
      2,
      "Coincidence locus g30(a) = g22(b): z enters a 3-cycle immediately and "
      "a 2-cycle after two steps. The points (-1/2, 3) and (-1/2, -3) give "
      "z = 5/4."});

  // C5: the sign twist of the central curve, C5(a, b) = -C(-a, -b); its
  // affine locus is g30(a) + g30(b) = 0.
  out.push_back(CurveRecord{
      CurveId::C5,
      BiForm(3, 3,
             {{3, 2, 1},
              {2, 3, 1},
              {3, 1, 1},
              {1, 3, 1},
              {2, 1, -1},
              {1, 2, -1},
              {2, 0, -1},
              {1, 1, -2},
              {0, 2, -1},
              {1, 0, -1},
              {0, 1, -1}}),
      sorted_points({pt("-1", "-1"), pt("-1", "0"), pt("-1", "oo"),
                     pt("0", "-1"), pt("0", "0"), pt("0", "oo"),
                     pt("oo", "-1"), pt("oo", "0"), pt("oo", "oo")}),
      4,
      "Sign twist of the central curve (C5(a, b) = -C(-a, -b)), cutting out "
      "g30(a) = -g30(b): z and -z both of immediate-3-cycle type. Its nine "
      "rational points are the images of the central curve's nine under "
      "negation of both coordinates."});

  for (const CurveRecord& rec : out) {
    for (const P1xP1Point& P : rec.expected_points) {
      if (rec.form.eval(P) != 0)
        fail(errc::internal_inconsistency,
             curve_name(rec.id) + ": catalogued point " + P.str() +
                 " is not on the curve");
    }
  }
  return out;
}

// Monomial vector (y^0, ..., y^d) for the projective point with index idx
// (idx == q encodes (1 : 0), which contributes (0, ..., 0, 1)).
void p1_monomials(const FqCtx& ctx, unsigned long long idx, int d,
                  FqElem* out) {
  if (idx == ctx.q()) {
    for (int i = 0; i < d; ++i) out[i] = FqElem{};
    out[d] = ctx.one();
    return;
  }
  FqElem e = ctx.from_index(idx);
  out[0] = ctx.one();
  for (int i = 1; i <= d; ++i) out[i] = ctx.mul(out[i - 1], e);
}

struct ScalarGrid {
  int d1;
  int d2;
  std::vector<long> g;

  long at(int i, int j) const {
    return g[static_cast<size_t>(i) * (d2 + 1) + j];
  }
};

ScalarGrid reduce_grid(const BiForm& f, long p) {
  ScalarGrid out{f.d1(), f.d2(), {}};
  out.g.resize(static_cast<size_t>(f.d1() + 1) * (f.d2() + 1));
  for (int i = 0; i <= f.d1(); ++i)
    for (int j = 0; j <= f.d2(); ++j) {
      BigInt r = f.coeff(i, j) % p;
      long v = r.get_si();
      out.g[static_cast<size_t>(i) * (f.d2() + 1) + j] = v < 0 ? v + p : v;
    }
  return out;
}

}  // namespace

std::string curve_name(CurveId id) {
  switch (id) {
    case CurveId::C: return "C";
    case CurveId::C1: return "C1";
    case CurveId::C2: return "C2";
    case CurveId::C3: return "C3";
    case CurveId::C4: return "C4";
    case CurveId::C5: return "C5";
  }
  fail(errc::unknown_curve, "invalid curve id");
}

CurveId parse_curve_id(const std::string& s) {
  if (s == "C") return CurveId::C;
  if (s == "C1") return CurveId::C1;
  if (s == "C2") return CurveId::C2;
  if (s == "C3") return CurveId::C3;
  if (s == "C4") return CurveId::C4;
  if (s == "C5") return CurveId::C5;
  fail(errc::unknown_curve, "unknown curve '" + s + "'");
}

const std::vector<CurveRecord>& registry() {
  static const std::vector<CurveRecord> reg = build_registry();
  return reg;
}

const CurveRecord& curve(CurveId id) {
  return registry()[static_cast<size_t>(id)];
}

bool contains(const CurveRecord& c, const P1xP1Point& P) {
  return c.form.eval(P) == 0;
}

int negation_twist_sign(const BiForm& f, const BiForm& g) {
  if (f.d1() != g.d1() || f.d2() != g.d2())
    fail(errc::identity_fails, "bidegrees differ");
  for (int s : {1, -1}) {
    bool ok = true;
    for (int i = 0; i <= f.d1() && ok; ++i)
      for (int j = 0; j <= f.d2() && ok; ++j) {
        int sign = ((i + j) % 2 == 0) ? s : -s;
        if (f.coeff(i, j) != sign * g.coeff(i, j)) ok = false;
      }
    if (ok) return s;
  }
  fail(errc::identity_fails,
       "no sign makes f(a, b) = s * g(-a, -b) an identity");
}

int c5_symmetry_check() {
  return negation_twist_sign(curve(CurveId::C5).form, curve(CurveId::C).form);
}

SpotcheckReport coincidence_spotcheck(const CurveRecord& c,
                                      const P1xP1Point& P) {
  Family fx, fy;
  switch (c.id) {
    case CurveId::C1: fx = Family::t30; fy = Family::t30; break;
    case CurveId::C2: fx = Family::t12; fy = Family::t22; break;
    case CurveId::C3: fx = Family::t30; fy = Family::t12; break;
    case CurveId::C4: fx = Family::t30; fy = Family::t22; break;
    default:
      fail(errc::usage, "spotcheck applies to the four auxiliary curves only");
  }
  if (std::find(c.expected_points.begin(), c.expected_points.end(), P) ==
      c.expected_points.end())
    fail(errc::not_on_curve,
         P.str() + " is not a catalogued point of " + curve_name(c.id));

  SpotcheckReport rep;
  rep.family_x = fx;
  rep.family_y = fy;
  if (P.x.is_infinity() || P.y.is_infinity()) return rep;
  try {
    FamilyPoint left = eval_family(fx, P.x.value());
    FamilyPoint right = eval_family(fy, P.y.value());
    if (left.z != right.z)
      fail(errc::internal_inconsistency,
           "curve point does not produce a common z");
    rep.degenerate = false;
    rep.z = left.z;
    rep.t_x = left.t;
    rep.t_y = right.t;
  } catch (const error& e) {
    if (e.code() != errc::excluded_parameter) throw;
    // A coordinate lies in the family's excluded set.
  }
  return rep;
}

ResPoint reduce_mod_p(const P1xP1Point& P, long p) {
  if (p < 2 || !is_prime_u64(static_cast<unsigned long long>(p)))
    fail(errc::not_prime, "p must be prime");
  auto reduce1 = [p](const P1Point& pt) -> ResP1 {
    unsigned long long up = static_cast<unsigned long long>(p);
    unsigned long long am = mpz_fdiv_ui(pt.a.get_mpz_t(), up);
    unsigned long long bm = mpz_fdiv_ui(pt.b.get_mpz_t(), up);
    if (bm == 0) return ResP1{1, 0};  // gcd(a, b) = 1 forces a != 0 mod p
    unsigned long long binv = powmod_u64(bm, up - 2, up);
    return ResP1{static_cast<long>(mulmod_u64(am, binv, up)), 1};
  };
  return ResPoint{reduce1(P.x), reduce1(P.y)};
}

ChabautyReport chabauty_residue_check(long p) {
  if (p < 2 || !is_prime_u64(static_cast<unsigned long long>(p)))
    fail(errc::not_prime, "p must be prime");
  if (p == 2 || p == 23 || p == 29)
    fail(errc::bad_prime, "the central curve has bad reduction at " +
                              std::to_string(p));
  const CurveRecord& c = curve(CurveId::C);
  std::set<ResPoint> reductions;
  for (const P1xP1Point& P : c.expected_points)
    reductions.insert(reduce_mod_p(P, p));
  ChabautyReport rep;
  rep.p = p;
  rep.distinct = reductions.size() == c.expected_points.size();
  rep.count = count_points(p, 1).n;
  rep.saturated = rep.distinct && rep.count == c.expected_points.size();
  return rep;
}

std::vector<FqPoint> singular_points_mod_p(long p, int k) {
  if (k != 1 && k != 2)
    fail(errc::bad_degree, "singular-point enumeration supports k = 1 or 2");
  FqCtx ctx(p, k);
  const BiForm& form = curve(CurveId::C).form;

  // The form plus the four partials of its bihomogenization; a point is
  // singular exactly when all five vanish.
  const std::array<BiForm, 5> forms = {form, form.d_xnum(), form.d_xden(),
                                       form.d_ynum(), form.d_yden()};
  std::array<ScalarGrid, 5> grids = {
      reduce_grid(forms[0], p), reduce_grid(forms[1], p),
      reduce_grid(forms[2], p), reduce_grid(forms[3], p),
      reduce_grid(forms[4], p)};

  const unsigned long long q = ctx.q();
  std::vector<FqPoint> out;
  std::vector<FqElem> xm3(4), xm2(3), ym3(4), ym2(3);
  std::array<std::array<FqElem, 4>, 5> fiber{};
  for (unsigned long long ix = 0; ix <= q; ++ix) {
    p1_monomials(ctx, ix, 3, xm3.data());
    p1_monomials(ctx, ix, 2, xm2.data());
    for (int f = 0; f < 5; ++f) {
      const ScalarGrid& g = grids[f];
      const FqElem* xm = g.d1 == 3 ? xm3.data() : xm2.data();
      for (int j = 0; j <= g.d2; ++j) {
        FqElem acc{};
        for (int i = 0; i <= g.d1; ++i) {
          long s = g.at(i, j);
          if (s) acc = ctx.add(acc, ctx.scalar_mul(s, xm[i]));
        }
        fiber[f][j] = acc;
      }
    }
    for (unsigned long long iy = 0; iy <= q; ++iy) {
      p1_monomials(ctx, iy, 3, ym3.data());
      p1_monomials(ctx, iy, 2, ym2.data());
      bool all_vanish = true;
      for (int f = 0; f < 5 && all_vanish; ++f) {
        const ScalarGrid& g = grids[f];
        const FqElem* ym = g.d2 == 3 ? ym3.data() : ym2.data();
        FqElem acc{};
        for (int j = 0; j <= g.d2; ++j)
          acc = ctx.add(acc, ctx.mul(fiber[f][j], ym[j]));
        if (!ctx.is_zero(acc)) all_vanish = false;
      }
      if (all_vanish) {
        FqPoint pt;
        pt.x.infinite = ix == q;
        if (!pt.x.infinite) pt.x.a = ctx.from_index(ix);
        pt.y.infinite = iy == q;
        if (!pt.y.infinite) pt.y.a = ctx.from_index(iy);
        out.push_back(pt);
      }
    }
  }
  return out;
}

std::string registry_json() {
  nlohmann::ordered_json doc;
  doc["description"] =
      "Bihomogeneous curve registry: coefficient grids of the affine "
      "equations (entry [i, j, c] means c * x^i y^j), bidegrees, and the "
      "catalogued rational points (coordinates as strings, 'oo' for the "
      "point at infinity).";
  doc["curves"] = nlohmann::ordered_json::array();
  for (const CurveRecord& rec : registry()) {
    nlohmann::ordered_json c;
    c["id"] = curve_name(rec.id);
    c["bidegree"] = {rec.form.d1(), rec.form.d2()};
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (int i = 0; i <= rec.form.d1(); ++i)
      for (int j = 0; j <= rec.form.d2(); ++j)
        if (rec.form.coeff(i, j) != 0)
          coeffs.push_back({i, j, rec.form.coeff(i, j).get_si()});
    c["coeffs"] = coeffs;
    c["genus"] = rec.genus;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const P1xP1Point& P : rec.expected_points)
      pts.push_back({P.x.str(), P.y.str()});
    c["expected_points"] = pts;
    c["provenance"] = rec.provenance;
    doc["curves"].push_back(c);
  }
  return doc.dump(2);
}

}  // namespace preper
