#include "preper/lmfdb.hpp"

#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "preper/error.hpp"

namespace preper {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string default_cache_dir() {
  const char* env = std::getenv("PREPER_CACHE_DIR");
  return env ? env : "";
}

std::string default_fixture_dir() {
#ifdef PREPER_DATA_DIR
  return std::string(PREPER_DATA_DIR) + "/fixtures";
#else
  return "data/fixtures";
#endif
}

std::string today_iso() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[16];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
  return buf;
}

// Parses the stored document shape: {"label", "a_invariants", "retrieved_at"}.
EllipticCurveModel parse_stored(const json& doc, const std::string& where) {
  try {
    EllipticCurveModel m;
    m.label = doc.at("label").get<std::string>();
    const json& ai = doc.at("a_invariants");
    if (!ai.is_array() || ai.size() != 5)
      fail(errc::malformed_response, where + ": a_invariants must have 5 entries");
    for (size_t i = 0; i < 5; ++i) m.a_invariants[i] = ai[i].get<long long>();
    m.retrieved_at = doc.value("retrieved_at", "");
    return m;
  } catch (const json::exception& e) {
    fail(errc::malformed_response, where + ": " + e.what());
  }
}

std::optional<EllipticCurveModel> load_file(const fs::path& path,
                                            const std::string& source) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(errc::malformed_response, path.string() + ": " + e.what());
  }
  EllipticCurveModel m = parse_stored(doc, path.string());
  m.source = source;
  return m;
}

void write_cache(const fs::path& dir, const EllipticCurveModel& m) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  json doc;
  doc["label"] = m.label;
  doc["a_invariants"] = m.a_invariants;
  doc["retrieved_at"] = m.retrieved_at;
  fs::path final_path = dir / (m.label + ".json");
  fs::path tmp_path = dir / (m.label + ".json.tmp" + std::to_string(getpid()));
  {
    std::ofstream out(tmp_path);
    if (!out) return;  // an unwritable cache is not an error, just no cache
    out << doc.dump(2) << "\n";
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) fs::remove(tmp_path, ec);
}

// The LMFDB API endpoint for one curve by label. The response wraps rows in
// a "data" array; each row carries "label" and "ainvs".
EllipticCurveModel parse_api_response(const std::string& body,
                                      const std::string& label) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    fail(errc::malformed_response, std::string("api response: ") + e.what());
  }
  if (!doc.contains("data") || !doc["data"].is_array())
    fail(errc::malformed_response, "api response lacks a data array");
  if (doc["data"].empty())
    fail(errc::unknown_label, label + " not in the database");
  try {
    const json& row = doc["data"][0];
    EllipticCurveModel m;
    m.label = row.at("label").get<std::string>();
    const json& ai = row.at("ainvs");
    if (!ai.is_array() || ai.size() != 5)
      fail(errc::malformed_response, "ainvs must have 5 entries");
    for (size_t i = 0; i < 5; ++i) m.a_invariants[i] = ai[i].get<long long>();
    m.retrieved_at = today_iso();
    m.source = "network";
    return m;
  } catch (const json::exception& e) {
    fail(errc::malformed_response, std::string("api response: ") + e.what());
  }
}

}  // namespace

bool valid_curve_label(const std::string& label) {
  size_t dot = label.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= label.size())
    return false;
  std::string cond = label.substr(0, dot);
  if (cond[0] == '0') return false;  // conductors are positive, no leading 0
  for (char ch : cond)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  std::string rest = label.substr(dot + 1);
  size_t i = 0;
  while (i < rest.size() && std::islower(static_cast<unsigned char>(rest[i])))
    ++i;
  if (i == 0 || i == rest.size()) return false;  // need letters then a number
  if (rest[i] == '0') return false;
  for (size_t j = i; j < rest.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(rest[j]))) return false;
  return true;
}

EllipticCurveModel fetch_curve(const std::string& label,
                               const LmfdbOptions& options) {
  if (!valid_curve_label(label))
    fail(errc::unknown_label, "'" + label + "' is not a curve label");

  std::string cache_dir =
      options.cache_dir.empty() ? default_cache_dir() : options.cache_dir;
  std::string fixture_dir =
      options.fixture_dir.empty() ? default_fixture_dir() : options.fixture_dir;

  if (!cache_dir.empty()) {
    auto cached = load_file(fs::path(cache_dir) / (label + ".json"), "cache");
    if (cached) return *cached;
  }

  auto fixture = [&]() -> std::optional<EllipticCurveModel> {
    return load_file(fs::path(fixture_dir) / (label + ".json"), "fixture");
  };

  if (options.offline) {
    if (auto m = fixture()) return *m;
    fail(errc::network_unavailable,
         label + ": offline and neither cached nor bundled");
  }

  httplib::Client client(options.base_url);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(10, 0);
  std::string path = "/api/ec_curvedata/?label=" + label + "&_format=json";
  httplib::Result res = client.Get(path);

  if (!res) {  // no route to the server; fall back like the offline path
    if (auto m = fixture()) return *m;
    fail(errc::network_unavailable,
         label + ": server unreachable and no local copy");
  }
  if (res->status == 404) {
    if (auto m = fixture()) return *m;
    fail(errc::unknown_label, label + ": server has no such curve");
  }
  if (res->status != 200)
    fail(errc::malformed_response,
         label + ": unexpected status " + std::to_string(res->status));

  EllipticCurveModel m;
  try {
    m = parse_api_response(res->body, label);
  } catch (const error& e) {
    if (e.code() == errc::unknown_label && fixture()) return *fixture();
    throw;
  }
  if (!cache_dir.empty()) write_cache(cache_dir, m);
  return m;
}

}  // namespace preper
