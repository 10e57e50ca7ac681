#pragma once

#include <array>
#include <string>

namespace preper {

// One elliptic curve as served by the LMFDB: its label and the Weierstrass
// coefficients [a1, a2, a3, a4, a6]. Other metadata in a response (rank,
// torsion, ...) is ignored.
struct EllipticCurveModel {
  std::string label;
  std::array<long long, 5> a_invariants{};
  std::string retrieved_at;  // ISO date the data was obtained
  std::string source;        // "cache", "fixture", or "network"
};

struct LmfdbOptions {
  bool offline = false;
  // The hosted instance sits behind TLS; this client speaks plain HTTP, so
  // point base_url at a local mirror or proxy when actually going online.
  std::string base_url = "http://www.lmfdb.org";
  std::string cache_dir;    // empty: $PREPER_CACHE_DIR if set, else no cache
  std::string fixture_dir;  // empty: the bundled data directory
};

// True iff the label is syntactically a curve label (conductor, dot,
// isogeny-class letters, curve number), e.g. 58.a1.
bool valid_curve_label(const std::string& label);

// Resolves a label to a curve model. Lookup order: cache, then network
// (unless offline), then the bundled fixtures. A syntactically bad label or
// a server 404 without fixture backup is unknown_label; unreachable network
// without cache or fixture is network_unavailable; a response or cache file
// that does not parse is malformed_response. Network hits are written back
// to the cache atomically when a cache directory is configured.
EllipticCurveModel fetch_curve(const std::string& label,
                               const LmfdbOptions& options = {});

}  // namespace preper
