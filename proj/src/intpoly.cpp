#include "preper/intpoly.hpp"

#include <algorithm>

#include "preper/error.hpp"

namespace preper {

IntPolyUni::IntPolyUni(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolyUni IntPolyUni::from_longs(std::initializer_list<long> coeffs) {
  std::vector<BigInt> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return IntPolyUni(std::move(v));
}

BigRat IntPolyUni::eval(const BigRat& x) const {
  BigRat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + BigRat(*it);
  return acc;
}

namespace {

std::vector<BigInt> positive_divisors(BigInt n) {
  n = abs(n);
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

std::vector<BigRat> rational_roots(const IntPolyUni& p) {
  if (p.is_zero()) fail(errc::zero_polynomial, "rational_roots of the zero polynomial");

  // Strip x^m so the constant term is nonzero; x = 0 is a root iff m > 0.
  std::vector<BigInt> c = p.coeffs();
  bool zero_root = false;
  while (c.front() == 0) {
    zero_root = true;
    c.erase(c.begin());
  }

  std::vector<BigRat> roots;
  if (zero_root) roots.emplace_back(0);

  IntPolyUni q(c);
  if (q.degree() >= 1) {
    // Candidates u/w with u | c0 and w | leading coefficient.
    auto us = positive_divisors(q.coeff(0));
    auto ws = positive_divisors(q.coeff(q.degree()));
    for (const BigInt& u : us) {
      for (const BigInt& w : ws) {
        if (gcd(u, w) != 1) continue;
        for (int s : {1, -1}) {
          BigRat cand(s * u, w);
          if (q.eval(cand).is_zero()) roots.push_back(cand);
        }
      }
    }
  }

  std::sort(roots.begin(), roots.end(), DenNumLess{});
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace preper
