#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "preper/error.hpp"
#include "preper/p1.hpp"
#include "preper/rational.hpp"

namespace testutil {

inline preper::BigRat Q(const std::string& s) { return preper::BigRat::parse(s); }

inline preper::P1Point P1(const std::string& s) { return preper::P1Point::parse(s); }

inline preper::P1xP1Point pt(const std::string& x, const std::string& y) {
  return preper::P1xP1Point{P1(x), P1(y)};
}

// Runs fn and reports which library error code it threw, if any. Tests match
// on the code, never on message text.
template <typename Fn>
std::optional<preper::errc> code_of(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const preper::error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Uniform rational with |num| <= h and 1 <= den <= h, not necessarily reduced
// before construction (BigRat normalizes).
inline preper::BigRat random_rat(std::mt19937_64& rng, long h) {
  std::uniform_int_distribution<long> num(-h, h);
  std::uniform_int_distribution<long> den(1, h);
  return preper::BigRat(num(rng), den(rng));
}

inline std::vector<preper::BigRat> rats(const std::vector<std::string>& ss) {
  std::vector<preper::BigRat> out;
  out.reserve(ss.size());
  for (const auto& s : ss) out.push_back(Q(s));
  return out;
}

}  // namespace testutil
