// Command line front end. Every subcommand prints either plain text or, with
// --json, a single result document {command, status, payload, millis}.
// Exit codes: 0 success, 1 a mathematical claim failed verification,
// 2 usage or precondition errors.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "preper/acceptance.hpp"
#include "preper/counting.hpp"
#include "preper/curves.hpp"
#include "preper/dynamics.hpp"
#include "preper/error.hpp"
#include "preper/lfunction.hpp"
#include "preper/lmfdb.hpp"
#include "preper/search.hpp"

namespace {

using nlohmann::ordered_json;
using namespace preper;

struct Emitter {
  std::string command;
  bool json = false;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }

  int finish(const std::string& status, const ordered_json& payload,
             const std::string& text, int exit_code) const {
    if (json) {
      ordered_json doc;
      doc["command"] = command;
      doc["status"] = status;
      doc["payload"] = payload;
      doc["millis"] = elapsed_ms();
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << text;
    }
    return exit_code;
  }

  int ok(const ordered_json& payload, const std::string& text) const {
    return finish("ok", payload, text, 0);
  }

  int fail(const ordered_json& payload, const std::string& text) const {
    return finish("fail", payload, text, 1);
  }

  int error(const preper::error& e) const {
    if (json) {
      ordered_json payload;
      payload["error"] = errc_name(e.code());
      payload["message"] = e.what();
      return finish("error", payload, "", 2);
    }
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what()
              << "\n";
    return 2;
  }
};

ordered_json rats_json(const std::vector<BigRat>& vs) {
  ordered_json arr = ordered_json::array();
  for (const BigRat& v : vs) arr.push_back(v.str());
  return arr;
}

ordered_json points_json(const std::vector<P1xP1Point>& pts) {
  ordered_json arr = ordered_json::array();
  for (const P1xP1Point& P : pts) arr.push_back({P.x.str(), P.y.str()});
  return arr;
}

std::string join_rats(const std::vector<BigRat>& vs) {
  std::string s;
  for (const BigRat& v : vs) {
    if (!s.empty()) s += ", ";
    s += v.str();
  }
  return s;
}

ordered_json witness_json(const FamilyWitness& w) {
  ordered_json j;
  j["family"] = family_name(w.family);
  if (w.a) j["a"] = w.a->str();
  j["sign"] = w.sign;
  j["t"] = w.t.str();
  return j;
}

int run_orbit(Emitter& em, const std::string& zs, const std::string& ts) {
  OrbitVerdict v = decide_orbit(BigRat::parse(zs), BigRat::parse(ts));
  ordered_json payload;
  std::ostringstream text;
  if (v.kind == OrbitKind::preperiodic) {
    payload["kind"] = "preperiodic";
    payload["period_m"] = v.period_m;
    payload["tail_n"] = v.tail_n;
    text << "preperiodic: enters a " << v.period_m << "-cycle after "
         << v.tail_n << " step" << (v.tail_n == 1 ? "" : "s") << "\n";
  } else {
    payload["kind"] = "divergent";
    const char* reason =
        v.reason == DivergenceReason::archimedean_escape ? "archimedean_escape"
        : v.reason == DivergenceReason::denominator_violation
            ? "denominator_violation"
            : "nonsquare_denominator_of_t";
    payload["reason"] = reason;
    text << "divergent (" << reason << ")\n";
  }
  payload["orbit"] = rats_json(v.orbit);
  payload["steps"] = v.steps;
  text << "orbit: " << join_rats(v.orbit) << "\n";
  return em.ok(payload, text.str());
}

int run_tz(Emitter& em, const std::string& zs) {
  BigRat z = BigRat::parse(zs);
  std::vector<BigRat> tz = compute_Tz(z);
  ordered_json payload;
  payload["z"] = z.str();
  payload["values"] = rats_json(tz);
  return em.ok(payload, "T_z for z = " + z.str() + ": " + join_rats(tz) + "\n");
}

int run_sz(Emitter& em, const std::string& zs) {
  BigRat z = BigRat::parse(zs);
  SzReport rep = compute_Sz(z);
  ordered_json payload;
  payload["z"] = z.str();
  payload["tz"] = rats_json(rep.tz);
  ordered_json extras = ordered_json::array();
  for (const FamilyWitness& w : rep.extras) extras.push_back(witness_json(w));
  payload["extras"] = extras;
  payload["values"] = rats_json(rep.values);
  payload["size"] = rep.values.size();
  payload["case"] = rep.theorem_case;
  std::ostringstream text;
  text << "S_z for z = " << z.str() << " (" << rep.values.size()
       << " values, case " << rep.theorem_case << "):\n  "
       << join_rats(rep.values) << "\n";
  return em.ok(payload, text.str());
}

int run_intersect(Emitter& em, const std::string& z1s,
                  const std::string& z2s) {
  BigRat z1 = BigRat::parse(z1s), z2 = BigRat::parse(z2s);
  std::vector<BigRat> common = intersect_Sz(z1, z2);
  ordered_json payload;
  payload["z1"] = z1.str();
  payload["z2"] = z2.str();
  payload["values"] = rats_json(common);
  payload["size"] = common.size();
  return em.ok(payload, "S_{" + z1.str() + "} and S_{" + z2.str() +
                            "} share " + std::to_string(common.size()) +
                            " values: " + join_rats(common) + "\n");
}

int run_search(Emitter& em, const std::string& curve_s, long height) {
  const CurveRecord& rec = curve(parse_curve_id(curve_s));
  std::vector<P1xP1Point> found = search(rec, height);
  bool matches = found == rec.expected_points;
  ordered_json payload;
  payload["curve"] = curve_name(rec.id);
  payload["height"] = height;
  payload["points"] = points_json(found);
  payload["count"] = found.size();
  payload["matches_expected"] = matches;
  payload["registry"] = ordered_json::parse(registry_json())["curves"]
                                            [static_cast<size_t>(rec.id)];
  std::ostringstream text;
  text << curve_name(rec.id) << ", height <= " << height << ": "
       << found.size() << " points\n";
  for (const P1xP1Point& P : found) text << "  " << P.str() << "\n";
  text << (matches ? "matches the catalogued points\n"
                   : "differs from the catalogued points\n");
  return em.ok(payload, text.str());
}

int run_count(Emitter& em, long p, int k, unsigned long long budget) {
  CountRecord r = count_points(p, k, CountMethod::chart_root_count, budget);
  ordered_json payload = ordered_json::parse(count_record_json(r));
  return em.ok(payload, "#C(F_{" + std::to_string(p) + "^" +
                            std::to_string(k) + "}) = " + std::to_string(r.n) +
                            "  [" + method_name(r.method) + ", " +
                            std::to_string(r.millis) + " ms]\n");
}

int run_lpoly(Emitter& em, long p, unsigned long long budget) {
  LPolynomial L = lpoly_good(p, budget);
  ordered_json payload;
  payload["p"] = p;
  ordered_json cs = ordered_json::array();
  for (const BigInt& ci : L.c) cs.push_back(ci.get_str());
  payload["coefficients"] = cs;
  payload["value_at_1"] = L.eval_at_one().get_str();
  return em.ok(payload, "P_" + std::to_string(p) + "(T) = " + L.str() +
                            "\nP_" + std::to_string(p) + "(1) = " +
                            L.eval_at_one().get_str() + "\n");
}

int run_coeffs(Emitter& em, long max_n) {
  std::vector<long long> a = dirichlet_coefficients(max_n);
  ordered_json payload;
  payload["max_n"] = max_n;
  ordered_json arr = ordered_json::array();
  for (long n = 1; n <= max_n; ++n) arr.push_back(a[n]);
  payload["coefficients"] = arr;  // a_1 first
  std::ostringstream text;
  for (long n = 1; n <= max_n; ++n) text << n << " " << a[n] << "\n";
  return em.ok(payload, text.str());
}

int run_chabauty(Emitter& em, long p) {
  ChabautyReport rep = chabauty_residue_check(p);
  ordered_json payload;
  payload["p"] = rep.p;
  payload["distinct"] = rep.distinct;
  payload["count"] = rep.count;
  payload["saturated"] = rep.saturated;
  std::ostringstream text;
  text << "mod " << rep.p << ": the nine rational points reduce to "
       << (rep.distinct ? "nine distinct" : "colliding") << " residue points; #C(F_"
       << rep.p << ") = " << rep.count << "; "
       << (rep.saturated ? "every residue point is accounted for\n"
                         : "no saturation claim\n");
  return em.ok(payload, text.str());
}

int run_singular(Emitter& em, long p, int k) {
  FqCtx ctx(p, k);
  std::vector<FqPoint> pts = singular_points_mod_p(p, k);
  auto coord = [&](const FqP1& c) -> std::string {
    if (c.infinite) return "oo";
    return std::to_string(ctx.to_index(c.a));
  };
  ordered_json payload;
  payload["p"] = p;
  payload["k"] = k;
  payload["count"] = pts.size();
  ordered_json arr = ordered_json::array();
  for (const FqPoint& P : pts) arr.push_back({coord(P.x), coord(P.y)});
  payload["points"] = arr;  // field elements by index in the power basis
  std::ostringstream text;
  text << pts.size() << " singular point" << (pts.size() == 1 ? "" : "s")
       << " over F_{" << p << "^" << k << "}";
  if (!pts.empty()) {
    text << ":";
    for (const FqPoint& P : pts)
      text << " (" << coord(P.x) << ", " << coord(P.y) << ")";
  }
  text << "\n";
  return em.ok(payload, text.str());
}

int run_conductor(Emitter& em) {
  ConductorInfo info = conductor_info();
  ordered_json payload;
  payload["jacobian"] = info.n_jacobian;
  payload["jacobian_factored"] = info.jacobian_factored;
  payload["elliptic"] = info.n_elliptic;
  payload["elliptic_factored"] = info.elliptic_factored;
  payload["complement"] = info.n_complement;
  payload["complement_factored"] = info.complement_factored;
  payload["product_holds"] = info.product_holds;
  std::ostringstream text;
  text << "conductor of the Jacobian: " << info.n_jacobian << " = "
       << info.jacobian_factored << "\n"
       << "elliptic quotient: " << info.n_elliptic << " = "
       << info.elliptic_factored << "\n"
       << "complementary part: " << info.n_complement << " = "
       << info.complement_factored << "\n"
       << "product check: " << (info.product_holds ? "holds" : "FAILS")
       << "\n";
  return em.ok(payload, text.str());
}

int run_verify_all(Emitter& em, bool offline) {
  (void)offline;  // nothing here touches the network; the flag documents intent
  std::ostringstream lines;
  std::vector<CriterionResult> results =
      em.json ? run_acceptance(lines) : run_acceptance(std::cout);
  ordered_json payload = ordered_json::array();
  for (const CriterionResult& r : results) {
    ordered_json j;
    j["index"] = r.index;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["millis"] = r.millis;
    if (!r.detail.empty()) j["detail"] = r.detail;
    payload.push_back(j);
  }
  ordered_json wrapped;
  wrapped["criteria"] = payload;
  wrapped["all_passed"] = all_passed(results);
  if (all_passed(results)) return em.ok(wrapped, "");
  return em.fail(wrapped, "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact arithmetic of the quadratic family z -> z^2 + t: preperiodicity "
      "certificates, shared-parameter curves, point counts, and L-series "
      "data."};
  app.require_subcommand(1);

  int rc = 0;
  auto guard = [&rc](Emitter& em, auto body) {
    try {
      rc = body();
    } catch (const preper::error& e) {
      rc = em.error(e);
    }
  };

  // orbit
  {
    auto* sub = app.add_subcommand("orbit", "Decide the orbit of z under z^2 + t");
    auto z = std::make_shared<std::string>();
    auto t = std::make_shared<std::string>();
    auto em = std::make_shared<Emitter>();
    sub->add_option("z", *z, "starting value")->required();
    sub->add_option("t", *t, "parameter")->required();
    sub->add_flag("--json", em->json, "machine readable output");
    sub->callback([=, &rc, &guard] {
      em->command = "orbit";
      guard(*em, [&] { return run_orbit(*em, *z, *t); });
    });
  }

  // tz
  {
    auto* sub = app.add_subcommand("tz", "Parameters where z cycles within one step");
    auto z = std::make_shared<std::string>();
    auto em = std::make_shared<Emitter>();
    sub->add_option("z", *z)->required();
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "tz";
      guard(*em, [&] { return run_tz(*em, *z); });
    });
  }

  // sz
  {
    auto* sub = app.add_subcommand("sz", "All parameters making z preperiodic");
    auto z = std::make_shared<std::string>();
    auto em = std::make_shared<Emitter>();
    sub->add_option("z", *z)->required();
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "sz";
      guard(*em, [&] { return run_sz(*em, *z); });
    });
  }

  // intersect
  {
    auto* sub = app.add_subcommand("intersect", "Shared preperiodicity parameters of two starting values");
    auto z1 = std::make_shared<std::string>();
    auto z2 = std::make_shared<std::string>();
    auto em = std::make_shared<Emitter>();
    sub->add_option("z1", *z1)->required();
    sub->add_option("z2", *z2)->required();
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "intersect";
      guard(*em, [&] { return run_intersect(*em, *z1, *z2); });
    });
  }

  // search
  {
    auto* sub = app.add_subcommand("search", "Enumerate rational points of a registry curve up to a height");
    auto curve_s = std::make_shared<std::string>();
    auto height = std::make_shared<long>(100);
    auto em = std::make_shared<Emitter>();
    sub->add_option("curve", *curve_s, "one of C, C1, ..., C5")->required();
    sub->add_option("--height", *height, "height bound (default 100)");
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "search";
      guard(*em, [&] { return run_search(*em, *curve_s, *height); });
    });
  }

  // count
  {
    auto* sub = app.add_subcommand("count", "Count points of the central curve over F_{p^k}");
    auto p = std::make_shared<long>(0);
    auto k = std::make_shared<int>(1);
    auto budget = std::make_shared<unsigned long long>(0);
    auto em = std::make_shared<Emitter>();
    sub->add_option("--prime", *p, "characteristic")->required();
    sub->add_option("--ext", *k, "extension degree (default 1)");
    sub->add_option("--budget", *budget, "max field size (default 1e8)");
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "count";
      guard(*em, [&] { return run_count(*em, *p, *k, *budget); });
    });
  }

  // lpoly
  {
    auto* sub = app.add_subcommand("lpoly", "Local zeta numerator at a good odd prime");
    auto p = std::make_shared<long>(0);
    auto budget = std::make_shared<unsigned long long>(0);
    auto em = std::make_shared<Emitter>();
    sub->add_option("--prime", *p)->required();
    sub->add_option("--budget", *budget, "max field size for the counts");
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "lpoly";
      guard(*em, [&] { return run_lpoly(*em, *p, *budget); });
    });
  }

  // coeffs
  {
    auto* sub = app.add_subcommand("coeffs", "Dirichlet coefficients of the L-series");
    auto max_n = std::make_shared<long>(0);
    auto em = std::make_shared<Emitter>();
    sub->add_option("--max-n", *max_n, "largest index")->required();
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "coeffs";
      guard(*em, [&] { return run_coeffs(*em, *max_n); });
    });
  }

  // chabauty
  {
    auto* sub = app.add_subcommand("chabauty", "Reduce the known points mod p and compare with #C(F_p)");
    auto p = std::make_shared<long>(0);
    auto em = std::make_shared<Emitter>();
    sub->add_option("--prime", *p)->required();
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "chabauty";
      guard(*em, [&] { return run_chabauty(*em, *p); });
    });
  }

  // singular
  {
    auto* sub = app.add_subcommand("singular", "Singular points of the central curve over F_{p^k}");
    auto p = std::make_shared<long>(0);
    auto k = std::make_shared<int>(1);
    auto em = std::make_shared<Emitter>();
    sub->add_option("--prime", *p)->required();
    sub->add_option("--ext", *k, "extension degree, 1 or 2 (default 1)");
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "singular";
      guard(*em, [&] { return run_singular(*em, *p, *k); });
    });
  }

  // conductor
  {
    auto* sub = app.add_subcommand("conductor", "Conductor data of the Jacobian and its factors");
    auto em = std::make_shared<Emitter>();
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "conductor";
      guard(*em, [&] { return run_conductor(*em); });
    });
  }

  // verify-all
  {
    auto* sub = app.add_subcommand("verify-all", "Run the end-to-end verification battery");
    auto offline = std::make_shared<bool>(false);
    auto em = std::make_shared<Emitter>();
    sub->add_flag("--offline", *offline, "assert that no network is needed");
    sub->add_flag("--json", em->json);
    sub->callback([=, &rc, &guard] {
      em->command = "verify-all";
      guard(*em, [&] { return run_verify_all(*em, *offline); });
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}
