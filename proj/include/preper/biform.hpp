#pragma once

#include <initializer_list>
#include <vector>

#include "preper/p1.hpp"
#include "preper/rational.hpp"

namespace preper {

// A bihomogeneous form on P^1 x P^1 of bidegree (d1, d2), stored as the
// coefficient grid of the affine equation: entry (i, j) is the coefficient
// of x^i y^j. Bihomogenization is implicit: substituting x = a/b, y = c/d
// and clearing denominators gives
//     G(a, b, c, d) = sum_{i,j} coeff(i, j) a^i b^(d1-i) c^j d^(d2-j).
class BiForm {
 public:
  struct Entry {
    int i;
    int j;
    long c;
  };

  BiForm(int d1, int d2);
  BiForm(int d1, int d2, std::initializer_list<Entry> entries);

  int d1() const { return d1_; }
  int d2() const { return d2_; }

  const BigInt& coeff(int i, int j) const { return c_[idx(i, j)]; }
  void set_coeff(int i, int j, BigInt v) { c_[idx(i, j)] = std::move(v); }

  bool is_zero() const;
  bool operator==(const BiForm& o) const;
  bool operator!=(const BiForm& o) const { return !(*this == o); }

  // Exact value of the bihomogenized form at a point of P^1(Q) x P^1(Q).
  BigInt eval(const P1xP1Point& P) const;

  // Coefficients of the binary form in (y0 : y1) cut out by fixing the first
  // coordinate to (a : b): result[j] = sum_i coeff(i, j) a^i b^(d1-i).
  std::vector<BigInt> specialize_x(const BigInt& a, const BigInt& b) const;

  // Partial derivatives of the bihomogenized form with respect to the four
  // homogeneous coordinates; bidegree drops by one on the side derived.
  BiForm d_xnum() const;  // d/da, bidegree (d1-1, d2)
  BiForm d_xden() const;  // d/db, bidegree (d1-1, d2)
  BiForm d_ynum() const;  // d/dc, bidegree (d1, d2-1)
  BiForm d_yden() const;  // d/dd, bidegree (d1, d2-1)

  // The form with the two P^1 factors swapped: entry (i, j) becomes (j, i).
  BiForm transposed() const;

 private:
  int idx(int i, int j) const;

  int d1_;
  int d2_;
  std::vector<BigInt> c_;
};

}  // namespace preper
