#pragma once

#include <vector>

#include "preper/rational.hpp"

namespace preper {

// Univariate polynomial with integer coefficients, stored lowest-degree first.
// The zero polynomial is the empty coefficient vector.
class IntPolyUni {
 public:
  IntPolyUni() = default;
  explicit IntPolyUni(std::vector<BigInt> coeffs);

  static IntPolyUni from_longs(std::initializer_list<long> coeffs);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const BigInt& coeff(size_t i) const { return c_[i]; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  BigRat eval(const BigRat& x) const;

  bool operator==(const IntPolyUni& o) const { return c_ == o.c_; }

 private:
  std::vector<BigInt> c_;  // c_[i] multiplies x^i; back() != 0 when nonempty
};

// All rational roots, each exactly once, sorted by (den, num).
// Throws errc::zero_polynomial on the zero polynomial.
std::vector<BigRat> rational_roots(const IntPolyUni& p);

}  // namespace preper
